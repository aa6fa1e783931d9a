//! Synchronous n-tape automata over the padded alphabet.

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::words::{
    pad, padded_alphabet, unpad, Alphabet, PaddedString, PaddedSymbol, Symbol, TapeSet, Word,
    WordTuple,
};

/// An automaton reading all tapes in lockstep, one padded column at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncAutomaton {
    tapes: usize,
    alphabet: Alphabet,
    nfa: Nfa<PaddedSymbol>,
}

impl SyncAutomaton {
    pub fn new(tapes: usize, alphabet: Alphabet, nfa: Nfa<PaddedSymbol>) -> Result<Self> {
        if tapes == 0 {
            return Err(Error::InvalidMachine("a machine needs at least one tape".into()));
        }
        for (_, label, _) in nfa.arrows() {
            let Some(sym) = label else { continue };
            if sym.arity() != tapes {
                return Err(Error::Arity {
                    expected: tapes,
                    found: sym.arity(),
                });
            }
            for s in sym.entries() {
                if let Symbol::Letter(l) = s {
                    if !alphabet.contains(*l) {
                        return Err(Error::ForeignLetter(l.0));
                    }
                }
            }
        }
        Ok(SyncAutomaton {
            tapes,
            alphabet,
            nfa,
        })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nfa(&self) -> &Nfa<PaddedSymbol> {
        &self.nfa
    }

    pub fn num_states(&self) -> usize {
        self.nfa.num_states()
    }

    pub fn is_deterministic(&self) -> bool {
        self.nfa.is_deterministic() && self.nfa.starts().len() == 1
    }

    fn with_nfa(&self, nfa: Nfa<PaddedSymbol>) -> SyncAutomaton {
        SyncAutomaton {
            tapes: self.tapes,
            alphabet: self.alphabet.clone(),
            nfa,
        }
    }

    fn check_compatible(&self, other: &SyncAutomaton) -> Result<()> {
        if self.tapes != other.tapes {
            return Err(Error::Arity {
                expected: self.tapes,
                found: other.tapes,
            });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// The machine accepting every `tapes`-tuple of words.
    pub fn universal(tapes: usize, alphabet: &Alphabet) -> SyncAutomaton {
        validity(tapes, alphabet)
    }

    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        tuple.check(self.tapes, &self.alphabet)?;
        Ok(self.nfa.accepts(pad(tuple).columns()))
    }

    pub fn accepts_padded(&self, padded: &PaddedString) -> bool {
        self.nfa.accepts(padded.columns())
    }

    pub fn determinize(&self) -> SyncAutomaton {
        let symbols: Vec<PaddedSymbol> = self.nfa.labels().into_iter().collect();
        self.with_nfa(self.nfa.determinize(&symbols, false))
    }

    pub fn complement(&self) -> SyncAutomaton {
        let symbols = padded_alphabet(self.tapes, &self.alphabet);
        let mut det = self.nfa.determinize(&symbols, true);
        for s in 0..det.num_states() {
            let flipped = !det.is_accept(s);
            det.set_accept(s, flipped);
        }
        let swapped = self.with_nfa(det);
        if self.tapes == 1 {
            swapped
        } else {
            swapped.intersect_unchecked(&validity(self.tapes, &self.alphabet))
        }
    }

    pub fn union(&self, other: &SyncAutomaton) -> Result<SyncAutomaton> {
        self.check_compatible(other)?;
        Ok(self.with_nfa(self.nfa.disjoint_union(&other.nfa)))
    }

    pub fn intersect(&self, other: &SyncAutomaton) -> Result<SyncAutomaton> {
        self.check_compatible(other)?;
        Ok(self.intersect_unchecked(other))
    }

    fn intersect_unchecked(&self, other: &SyncAutomaton) -> SyncAutomaton {
        self.with_nfa(self.nfa.product(&other.nfa))
    }

    /// Restricts the machine to genuine padded strings.
    pub fn clean(&self) -> SyncAutomaton {
        if self.tapes == 1 {
            return self.clone();
        }
        self.intersect_unchecked(&validity(self.tapes, &self.alphabet))
    }

    /// Existential projection erasing tape `tape` (0-based).
    pub fn project_exists(&self, tape: usize) -> Result<SyncAutomaton> {
        if self.tapes < 2 {
            return Err(Error::Precondition("projection needs at least two tapes".into()));
        }
        if tape >= self.tapes {
            return Err(Error::Precondition(format!("no tape {}", tape + 1)));
        }
        // Erasing a coordinate of a valid padded string leaves a valid padded
        // string followed by columns that are all padding; those become
        // empty moves.
        let clean = self.clean();
        let nfa = clean.nfa.map_labels(|sym| sym.without(tape));
        Ok(SyncAutomaton {
            tapes: self.tapes - 1,
            alphabet: self.alphabet.clone(),
            nfa,
        })
    }

    /// True when no tuple is accepted.
    pub fn is_empty(&self) -> bool {
        self.clean().nfa.is_empty()
    }

    pub fn equivalent(&self, other: &SyncAutomaton) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.intersect_unchecked(&other.complement()).is_empty()
            && other.intersect_unchecked(&self.complement()).is_empty())
    }

    pub fn trim(&self) -> SyncAutomaton {
        self.with_nfa(self.nfa.trim())
    }

    /// The least accepted tuple, ordered by its padded string (for one
    /// tape this is the length-lexicographically least word).
    pub fn least_accepted(&self) -> Option<WordTuple> {
        let columns = self.clean().nfa.least_accepted()?;
        let padded = PaddedString::new(self.tapes, columns).ok()?;
        unpad(&padded).ok()
    }

    /// For a one-tape machine: the least accepted word.
    pub fn least_word(&self) -> Option<Word> {
        self.least_accepted().map(|t| t.component(0).clone())
    }

    /// For a one-tape machine: the least word `z` with `prefix · z`
    /// accepted, if any.
    pub fn least_completion(&self, prefix: &Word) -> Option<Word> {
        let mut set = self.nfa.initial_set();
        for &l in prefix.letters() {
            set = self.nfa.step(&set, &PaddedSymbol::letter(l));
        }
        let columns = self.nfa.least_accepted_from(set)?;
        Some(columns.iter().filter_map(|c| match c.entry(0) {
            Symbol::Letter(l) => Some(l),
            Symbol::Pad => None,
        }).collect())
    }

    /// Decomposes an accepted tuple along a repeated state of its run.
    pub fn pump(&self, tuple: &WordTuple) -> Result<PumpDecomposition> {
        tuple.check(self.tapes, &self.alphabet)?;
        let padded = pad(tuple);
        let n = self.num_states();
        if padded.len() < n {
            return Err(Error::Precondition(format!(
                "longest component has length {} but the machine has {} states",
                padded.len(),
                n
            )));
        }
        let nfa = self.nfa.remove_epsilons();
        let run = canonical_run(&nfa, padded.columns()).ok_or_else(|| {
            Error::Precondition("the tuple is not accepted".into())
        })?;
        let cols = padded.columns();
        // run[p] is the state before column p; a loop over columns i..j is
        // usable when no tape switches from letters to padding inside it.
        for j in 1..run.len() {
            for i in (0..j).rev() {
                if run[i] == run[j] && cols[i].pad_set() == cols[j - 1].pad_set() {
                    return Ok(PumpDecomposition::new(tuple, &padded, i, j, nfa.name(run[i])));
                }
            }
        }
        Err(Error::Precondition(
            "the run has no loop that keeps padding as a suffix".into(),
        ))
    }
}

/// The run over `input` that, at every step, moves to the smallest-index
/// state from which acceptance is still possible.
fn canonical_run(nfa: &Nfa<PaddedSymbol>, input: &[PaddedSymbol]) -> Option<Vec<usize>> {
    let n = nfa.num_states();
    let mut live = vec![vec![false; n]; input.len() + 1];
    for s in 0..n {
        live[input.len()][s] = nfa.is_accept(s);
    }
    for p in (0..input.len()).rev() {
        for s in 0..n {
            live[p][s] = nfa.targets(s, &input[p]).any(|t| live[p + 1][t]);
        }
    }
    let mut state = *nfa.starts().iter().find(|&&s| live[0][s])?;
    let mut run = vec![state];
    for (p, sym) in input.iter().enumerate() {
        state = nfa.targets(state, sym).filter(|&t| live[p + 1][t]).min()?;
        run.push(state);
    }
    Some(run)
}

/// A pumpable block of a tape: letters, or a run of padding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Letters(Word),
    Pad(usize),
}

/// A decomposition `u_i m_i v_i` of every tape of an accepted tuple such
/// that repeating the columns of the middle blocks stays accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpDecomposition {
    /// First pumped column, 1-based.
    pub k: usize,
    /// The pumped columns are `k..=k+l`.
    pub l: usize,
    pub prefixes: Vec<Word>,
    pub blocks: Vec<Block>,
    pub suffixes: Vec<Word>,
    pub loop_state: String,
}

impl PumpDecomposition {
    fn new(tuple: &WordTuple, padded: &PaddedString, i: usize, j: usize, state: &str) -> Self {
        let cols = padded.columns();
        let mut prefixes = Vec::new();
        let mut blocks = Vec::new();
        let mut suffixes = Vec::new();
        for (tape, word) in tuple.components().iter().enumerate() {
            let take = |range: std::ops::Range<usize>| -> Word {
                cols[range]
                    .iter()
                    .filter_map(|c| match c.entry(tape) {
                        Symbol::Letter(l) => Some(l),
                        Symbol::Pad => None,
                    })
                    .collect()
            };
            prefixes.push(take(0..i));
            blocks.push(if cols[i].entry(tape).is_pad() {
                Block::Pad(j - i)
            } else {
                Block::Letters(take(i..j))
            });
            suffixes.push(take(j..cols.len()));
            debug_assert_eq!(
                prefixes[tape].len() + suffixes[tape].len() + blocks[tape].letters(),
                word.len()
            );
        }
        PumpDecomposition {
            k: i + 1,
            l: j - i - 1,
            prefixes,
            blocks,
            suffixes,
            loop_state: state.to_string(),
        }
    }

    /// The tuple with the middle blocks repeated `r` times.
    pub fn pumped(&self, r: usize) -> WordTuple {
        let words = (0..self.blocks.len())
            .map(|t| {
                let mut w = self.prefixes[t].clone();
                if let Block::Letters(m) = &self.blocks[t] {
                    for _ in 0..r {
                        w = w.concat(m);
                    }
                }
                w.concat(&self.suffixes[t])
            })
            .collect();
        WordTuple::new(words)
    }

    /// Tapes whose middle block is padding.
    pub fn padded_tapes(&self) -> TapeSet {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, Block::Pad(_)))
            .map(|(i, _)| i)
            .collect()
    }
}

impl Block {
    fn letters(&self) -> usize {
        match self {
            Block::Letters(w) => w.len(),
            Block::Pad(_) => 0,
        }
    }
}

/// The machine accepting exactly the valid padded strings over `tapes`
/// tapes. Its states record which tapes are already padding.
pub fn validity(tapes: usize, alphabet: &Alphabet) -> SyncAutomaton {
    let mut nfa = Nfa::new();
    let masks: Vec<TapeSet> = TapeSet::all_subsets(tapes)
        .filter(|m| *m != TapeSet::full(tapes))
        .collect();
    let mut index = std::collections::HashMap::new();
    for &m in &masks {
        let s = nfa.add_state(format!("pad{m}"));
        nfa.set_accept(s, true);
        index.insert(m, s);
    }
    nfa.set_start(index[&TapeSet::EMPTY]);
    for sym in padded_alphabet(tapes, alphabet) {
        let to = sym.pad_set();
        for &from in &masks {
            if from.bits() & !to.bits() == 0 {
                nfa.add_arrow(index[&from], Some(sym.clone()), index[&to]);
            }
        }
    }
    SyncAutomaton {
        tapes,
        alphabet: alphabet.clone(),
        nfa,
    }
}

/// The identity relation `{(w, w)}` over `alphabet`.
pub fn equality(alphabet: &Alphabet) -> SyncAutomaton {
    let mut nfa = Nfa::new();
    let s = nfa.add_state("eq");
    nfa.set_start(s);
    nfa.set_accept(s, true);
    for l in alphabet.letters() {
        let sym = PaddedSymbol::new(vec![Symbol::Letter(l), Symbol::Letter(l)]).unwrap();
        nfa.add_arrow(s, Some(sym), s);
    }
    SyncAutomaton {
        tapes: 2,
        alphabet: alphabet.clone(),
        nfa,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn t(a: &Alphabet, s: &str) -> WordTuple {
        a.parse_tuple(s).unwrap()
    }

    #[test]
    fn equality_relation_membership() {
        let a = ab();
        let eq = equality(&a);
        assert!(eq.accepts(&t(&a, "ab,ab")).unwrap());
        assert!(!eq.accepts(&t(&a, "ab,a")).unwrap());
        assert!(eq.accepts(&t(&a, ",")).unwrap());
        assert!(matches!(eq.accepts(&t(&a, "a")), Err(Error::Arity { .. })));
    }

    #[test]
    fn complement_of_equality() {
        let a = ab();
        let c = equality(&a).complement();
        assert!(!c.accepts(&t(&a, "ab,ab")).unwrap());
        assert!(c.accepts(&t(&a, "ab,ba")).unwrap());
        assert!(c.accepts(&t(&a, "ab,")).unwrap());
        let cc = c.complement();
        assert!(cc.equivalent(&equality(&a)).unwrap());
    }

    #[test]
    fn project_equality_gives_everything() {
        let a = ab();
        let p = equality(&a).project_exists(1).unwrap();
        assert_eq!(p.tapes(), 1);
        assert!(p.equivalent(&validity(1, &a)).unwrap());
        assert!(equality(&a).project_exists(5).is_err());
        assert!(validity(1, &a).project_exists(0).is_err());
    }

    #[test]
    fn validity_rejects_letters_after_padding() {
        let a = ab();
        let v = validity(2, &a);
        assert_eq!(v.num_states(), 3);
        let x = Symbol::Letter(a.letter("a").unwrap());
        let bad = [
            PaddedSymbol::new(vec![x, Symbol::Pad]).unwrap(),
            PaddedSymbol::new(vec![x, x]).unwrap(),
        ];
        assert!(!v.nfa().accepts(&bad));
    }

    #[test]
    fn unreachable_accept_is_empty() {
        let a = ab();
        let mut nfa = Nfa::new();
        let s = nfa.add_state("s");
        let f = nfa.add_state("f");
        nfa.set_start(s);
        nfa.set_accept(f, true);
        let m = SyncAutomaton::new(1, a, nfa).unwrap();
        assert!(m.is_empty());
        assert!(m.least_accepted().is_none());
    }

    #[test]
    fn pump_equality() {
        let a = ab();
        let eq = equality(&a);
        let d = eq.pump(&t(&a, "ab,ab")).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.l, 0);
        assert_eq!(d.pumped(1), t(&a, "ab,ab"));
        assert_eq!(d.pumped(3), t(&a, "aaab,aaab"));
        assert!(eq.pump(&t(&a, "ab,ba")).is_err());
    }

    #[test]
    fn least_accepted_tuple() {
        let a = ab();
        let c = equality(&a).complement();
        // (a,$) sorts before (a,b) in the padded alphabet? letters come
        // first, so (a,a) < (a,b) < (a,$); (a,a) is rejected.
        assert_eq!(c.least_accepted(), Some(t(&a, "a,b")));
    }
}
