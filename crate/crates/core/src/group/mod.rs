//! Recognising asynchronous automatic structures.
//!
//! A [`StructureCandidate`] bundles a one-tape word acceptor `W` with
//! two-tape multipliers `M_x` (one per letter) and `M_ε`. The thirteen
//! axioms characterise when such a bundle is an automatic structure for some
//! group. Axioms 1, 2, 6 and 9 are decided exactly; the others are refuted by
//! a budgeted search in length-lexicographic order, so a clean run is
//! evidence, not proof.

mod decidable;
mod phi;
mod search;

pub use decidable::{check_axiom1, check_axiom2, check_axiom6, check_axiom9};
pub use phi::{class_of_prefix, eval_phi_chain, phi_step, ChainOutcome, ClassHandle};
pub use search::{semidecide_axiom12, semidecide_axiom13, semidecide_simple_axiom};

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quasi::{exists_two_tape, Boundedness, SemiSortedAsync};
use crate::sync::SyncAutomaton;
use crate::words::{Alphabet, Letter, Word, WordTuple};

/// Names one of the multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplier {
    Letter(Letter),
    Eps,
}

impl Multiplier {
    pub fn render(self, alphabet: &Alphabet) -> String {
        match self {
            Multiplier::Letter(l) => alphabet.token(l).to_string(),
            Multiplier::Eps => "eps".to_string(),
        }
    }
}

/// A generator or its formal inverse. `φ` of an inverse letter undoes `φ`
/// of the letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter {
    pub inverse: bool,
    pub letter: Letter,
}

impl SignedLetter {
    pub fn pos(letter: Letter) -> Self {
        SignedLetter {
            inverse: false,
            letter,
        }
    }

    pub fn neg(letter: Letter) -> Self {
        SignedLetter {
            inverse: true,
            letter,
        }
    }

    pub fn flip(self) -> Self {
        SignedLetter {
            inverse: !self.inverse,
            letter: self.letter,
        }
    }
}

pub fn render_signed(alphabet: &Alphabet, word: &[SignedLetter]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let parts: Vec<String> = word
        .iter()
        .map(|s| {
            let t = alphabet.token(s.letter);
            if s.inverse {
                format!("{t}^-1")
            } else {
                t.to_string()
            }
        })
        .collect();
    parts.join(".")
}

/// A word acceptor with its multipliers, ready for checking.
#[derive(Debug)]
pub struct StructureCandidate {
    alphabet: Alphabet,
    acceptor: SyncAutomaton,
    multipliers: Vec<SemiSortedAsync>,
    bounds: Vec<usize>,
    domains: Vec<SyncAutomaton>,
    ranges: Vec<SyncAutomaton>,
    prefixes: SyncAutomaton,
    partners: RefCell<HashMap<(Word, SignedLetter), Option<Word>>>,
}

impl StructureCandidate {
    /// `multipliers[i]` belongs to the `i`-th letter of the alphabet.
    pub fn new(
        acceptor: SyncAutomaton,
        multipliers: Vec<SemiSortedAsync>,
        eps: SemiSortedAsync,
    ) -> Result<Self> {
        let alphabet = acceptor.alphabet().clone();
        if !alphabet.has_inverses() {
            return Err(Error::BadInverse(
                "a group alphabet needs an inverse for every letter".into(),
            ));
        }
        if acceptor.tapes() != 1 {
            return Err(Error::Arity {
                expected: 1,
                found: acceptor.tapes(),
            });
        }
        if multipliers.len() != alphabet.len() {
            return Err(Error::InvalidMachine(format!(
                "{} letters but {} multipliers",
                alphabet.len(),
                multipliers.len()
            )));
        }
        let mut all = multipliers;
        all.push(eps);
        let mut bounds = Vec::new();
        for (i, m) in all.iter().enumerate() {
            let key = if i < alphabet.len() {
                Multiplier::Letter(Letter(i as u32))
            } else {
                Multiplier::Eps
            };
            let name = key.render(&alphabet);
            if m.tapes() != 2 {
                return Err(Error::InvalidMachine(format!(
                    "multiplier {name} has {} tapes, not 2",
                    m.tapes()
                )));
            }
            if *m.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            match m.boundedness() {
                Boundedness::Bounded(k) => bounds.push(k),
                Boundedness::Unbounded => {
                    return Err(Error::Precondition(format!(
                        "multiplier {name} is unbounded: a cycle of letter arrows stays within one tape class"
                    )))
                }
            }
        }
        let domains = all
            .iter()
            .map(|m| exists_two_tape(m, 1))
            .collect::<Result<Vec<_>>>()?;
        let ranges = all
            .iter()
            .map(|m| exists_two_tape(m, 0))
            .collect::<Result<Vec<_>>>()?;
        let prefixes = prefix_closure(&acceptor);
        Ok(StructureCandidate {
            alphabet,
            acceptor,
            multipliers: all,
            bounds,
            domains,
            ranges,
            prefixes,
            partners: RefCell::new(HashMap::new()),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn acceptor(&self) -> &SyncAutomaton {
        &self.acceptor
    }

    pub fn multiplier(&self, key: Multiplier) -> &SemiSortedAsync {
        &self.multipliers[self.slot(key)]
    }

    /// Letters in alphabet order, then `ε`.
    pub fn keys(&self) -> impl Iterator<Item = Multiplier> + '_ {
        self.alphabet
            .letters()
            .map(Multiplier::Letter)
            .chain([Multiplier::Eps])
    }

    /// Boundedness factor of a multiplier.
    pub fn bound(&self, key: Multiplier) -> usize {
        self.bounds[self.slot(key)]
    }

    /// `{ u : (u, v) ∈ L_key for some v }`.
    pub fn domain(&self, key: Multiplier) -> &SyncAutomaton {
        &self.domains[self.slot(key)]
    }

    /// `{ v : (u, v) ∈ L_key for some u }`.
    pub fn range(&self, key: Multiplier) -> &SyncAutomaton {
        &self.ranges[self.slot(key)]
    }

    pub fn in_language(&self, w: &Word) -> bool {
        self.acceptor
            .accepts(&WordTuple::new(vec![w.clone()]))
            .expect("words come from the candidate's alphabet")
    }

    pub fn in_prefix_closure(&self, w: &Word) -> bool {
        self.prefixes
            .accepts(&WordTuple::new(vec![w.clone()]))
            .expect("words come from the candidate's alphabet")
    }

    pub fn related(&self, key: Multiplier, u: &Word, v: &Word) -> bool {
        self.multiplier(key)
            .accepts(&WordTuple::new(vec![u.clone(), v.clone()]))
            .expect("words come from the candidate's alphabet")
    }

    pub(crate) fn in_domain(&self, key: Multiplier, u: &Word) -> bool {
        self.domain(key)
            .accepts(&WordTuple::new(vec![u.clone()]))
            .expect("words come from the candidate's alphabet")
    }

    pub(crate) fn in_range(&self, key: Multiplier, v: &Word) -> bool {
        self.range(key)
            .accepts(&WordTuple::new(vec![v.clone()]))
            .expect("words come from the candidate's alphabet")
    }

    fn slot(&self, key: Multiplier) -> usize {
        match key {
            Multiplier::Letter(l) => l.index(),
            Multiplier::Eps => self.alphabet.len(),
        }
    }
}

fn prefix_closure(acceptor: &SyncAutomaton) -> SyncAutomaton {
    let mut nfa = acceptor.nfa().trim();
    for s in 0..nfa.num_states() {
        nfa.set_accept(s, true);
    }
    SyncAutomaton::new(1, acceptor.alphabet().clone(), nfa).expect("same shape as the acceptor")
}

/// The constants fixing which loop words Axiom 13 must examine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundParams {
    /// Largest state count among `W`, `M_ε` and the `M_x`.
    pub c: usize,
    /// Largest boundedness factor among the multipliers.
    pub k: usize,
    pub axiom13_len: usize,
}

impl BoundParams {
    pub fn new(c: usize, k: usize) -> Self {
        BoundParams {
            c,
            k,
            axiom13_len: 2 * c + 2 * k,
        }
    }

    pub fn of(candidate: &StructureCandidate) -> Self {
        let c = candidate
            .multipliers
            .iter()
            .map(SemiSortedAsync::num_states)
            .chain([candidate.acceptor.num_states()])
            .max()
            .unwrap_or(1)
            .max(1);
        let k = candidate.bounds.iter().copied().max().unwrap_or(0);
        BoundParams::new(c, k)
    }
}

/// Limits on the refutation searches. A zero `max_candidates` or
/// `step_limit` examines nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest word placed in any quantified position.
    pub max_word_len: usize,
    /// Complete tuples examined per axiom.
    pub max_candidates: usize,
    /// Membership tests and partner lookups per axiom.
    pub step_limit: usize,
}

impl Budget {
    pub fn new(max_word_len: usize, max_candidates: usize) -> Self {
        Budget {
            max_word_len,
            max_candidates,
            step_limit: usize::MAX,
        }
    }
}

/// Evidence refuting an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The axiom refuted. A search for one axiom can stumble on a violation
    /// of another (a missing multiplier partner refutes 2, 6 or 9).
    pub axiom: u8,
    pub multiplier: Option<Multiplier>,
    pub words: Vec<Word>,
    /// The loop word of an Axiom 13 violation.
    pub loop_word: Vec<SignedLetter>,
}

impl Witness {
    pub fn new(axiom: u8, multiplier: Option<Multiplier>, words: Vec<Word>) -> Self {
        Witness {
            axiom,
            multiplier,
            words,
            loop_word: Vec::new(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("axiom {}", self.axiom);
        if let Some(m) = self.multiplier {
            out.push_str(&format!(" [{}]", m.render(alphabet)));
        }
        if !self.loop_word.is_empty() {
            out.push_str(&format!(" w={}", render_signed(alphabet, &self.loop_word)));
        }
        if !self.words.is_empty() {
            let words: Vec<String> = self.words.iter().map(|w| alphabet.render_word(w)).collect();
            out.push_str(&format!(" ({})", words.join(", ")));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Witness),
    NoViolationWithinBudget,
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overall {
    /// The lowest-numbered violated axiom with its witness.
    NotAStructure { axiom: u8, witness: Witness },
    PassedWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// Verdicts for axioms 1 to 13, in order.
    pub verdicts: Vec<(u8, Verdict)>,
    pub overall: Overall,
}

impl AxiomReport {
    pub fn verdict(&self, axiom: u8) -> &Verdict {
        &self.verdicts[axiom as usize - 1].1
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::PassedWithinBudget
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (axiom, verdict) in &self.verdicts {
            let text = match verdict {
                Verdict::Holds => "holds".to_string(),
                Verdict::NoViolationWithinBudget => "no violation within budget".to_string(),
                Verdict::Violated(w) => format!("violated: {}", w.render(alphabet)),
            };
            out.push_str(&format!("axiom {axiom:>2}: {text}\n"));
        }
        match &self.overall {
            Overall::PassedWithinBudget => out.push_str("overall: passed within budget\n"),
            Overall::NotAStructure { axiom, .. } => {
                out.push_str(&format!("overall: not a structure (axiom {axiom})\n"))
            }
        }
        out
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Overall::PassedWithinBudget => write!(f, "passed within budget"),
            Overall::NotAStructure { axiom, .. } => write!(f, "not a structure (axiom {axiom})"),
        }
    }
}

/// Decides Axioms 1, 2, 6 and 9, then searches for violations of the rest.
pub fn run_all(c: &StructureCandidate, budget: Budget) -> AxiomReport {
    let mut verdicts: Vec<(u8, Verdict)> = vec![
        (1, check_axiom1(c)),
        (2, check_axiom2(c)),
        (6, check_axiom6(c)),
        (9, check_axiom9(c)),
    ];
    for axiom in [3, 4, 5, 7, 8, 10, 11] {
        let v = semidecide_simple_axiom(c, axiom, budget).expect("axiom number is valid");
        verdicts.push((axiom, v));
    }
    verdicts.push((12, semidecide_axiom12(c, budget)));
    verdicts.push((13, semidecide_axiom13(c, budget)));
    verdicts.sort_by_key(|(a, _)| *a);
    let overall = verdicts
        .iter()
        .find_map(|(a, v)| {
            v.witness().map(|w| Overall::NotAStructure {
                axiom: *a,
                witness: w.clone(),
            })
        })
        .unwrap_or(Overall::PassedWithinBudget);
    AxiomReport { verdicts, overall }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::nfa::Nfa;
    use crate::words::{PaddedSymbol, Symbol};

    /// One-tape acceptor for `{ε}` or, with `empty`, for nothing.
    pub(crate) fn singleton_acceptor(alphabet: &Alphabet, empty: bool) -> SyncAutomaton {
        let mut nfa: Nfa<PaddedSymbol> = Nfa::new();
        let s = nfa.add_state("s");
        nfa.set_start(s);
        nfa.set_accept(s, !empty);
        SyncAutomaton::new(1, alphabet.clone(), nfa).unwrap()
    }

    /// Two-tape machine accepting `(ε, ε)` only, or nothing.
    pub(crate) fn empty_pair(alphabet: &Alphabet, accept: bool) -> SemiSortedAsync {
        let mut nfa = Nfa::new();
        let p = nfa.add_state("p");
        let q = nfa.add_state("q");
        let f = nfa.add_state("f");
        nfa.set_start(p);
        nfa.add_arrow(p, Some(Symbol::Pad), q);
        nfa.add_arrow(q, Some(Symbol::Pad), f);
        nfa.set_accept(f, accept);
        SemiSortedAsync::new(2, alphabet.clone(), nfa, vec![0, 1, 1]).unwrap()
    }

    pub(crate) fn trivial(paired: bool) -> StructureCandidate {
        let a = if paired {
            Alphabet::new(["x", "X"]).unwrap().with_inverses([("x", "X")]).unwrap()
        } else {
            Alphabet::new(["x"]).unwrap().with_inverses([("x", "x")]).unwrap()
        };
        let ms = a.letters().map(|_| empty_pair(&a, true)).collect();
        StructureCandidate::new(singleton_acceptor(&a, false), ms, empty_pair(&a, true)).unwrap()
    }

    #[test]
    fn bound_params_arithmetic() {
        assert_eq!(BoundParams::new(4, 2).axiom13_len, 12);
        let p = BoundParams::of(&trivial(true));
        assert_eq!((p.c, p.k, p.axiom13_len), (3, 0, 6));
    }

    #[test]
    fn trivial_group_passes() {
        for paired in [false, true] {
            let c = trivial(paired);
            let r = run_all(&c, Budget::new(4, 10_000));
            assert!(r.passed(), "{}", r.render(c.alphabet()));
            for a in [1, 2, 6, 9] {
                assert_eq!(*r.verdict(a), Verdict::Holds);
            }
        }
    }

    #[test]
    fn alphabet_without_inverses_is_rejected() {
        let a = Alphabet::new(["x"]).unwrap();
        let err = StructureCandidate::new(
            singleton_acceptor(&a, false),
            vec![empty_pair(&a, true)],
            empty_pair(&a, true),
        );
        assert!(err.is_err());
    }
}
