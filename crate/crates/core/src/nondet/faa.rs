use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::words::{Alphabet, PaddedSymbol, Symbol, TapeSet, WordTuple};

/// The tapes an FAA step advances together (0-based, nonempty).
pub type Filter = TapeSet;

/// Next states and offered filters for one `(state, symbol)` pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaaEntry {
    pub targets: BTreeSet<usize>,
    pub filters: BTreeSet<Filter>,
}

/// A filter automaton: at each step it looks at the symbols under all heads
/// at once, moves to a next state and advances the heads of one offered
/// filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faa {
    tapes: usize,
    alphabet: Alphabet,
    names: Vec<String>,
    start: BTreeSet<usize>,
    accept: Vec<bool>,
    trans: BTreeMap<(usize, PaddedSymbol), FaaEntry>,
}

impl Faa {
    pub fn new(tapes: usize, alphabet: Alphabet) -> Result<Self> {
        if tapes == 0 {
            return Err(Error::InvalidMachine("a machine needs at least one tape".into()));
        }
        Ok(Faa {
            tapes,
            alphabet,
            names: Vec::new(),
            start: BTreeSet::new(),
            accept: Vec::new(),
            trans: BTreeMap::new(),
        })
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.accept.push(false);
        self.names.len() - 1
    }

    pub fn set_start(&mut self, state: usize) {
        self.start.insert(state);
    }

    pub fn set_accept(&mut self, state: usize, accept: bool) {
        self.accept[state] = accept;
    }

    /// Adds targets and filters for `(state, symbol)`, merging with what is
    /// already there. Filters may not touch a tape whose symbol is padding.
    pub fn add_transition(
        &mut self,
        state: usize,
        symbol: PaddedSymbol,
        targets: impl IntoIterator<Item = usize>,
        filters: impl IntoIterator<Item = Filter>,
    ) -> Result<()> {
        if symbol.arity() != self.tapes {
            return Err(Error::Arity {
                expected: self.tapes,
                found: symbol.arity(),
            });
        }
        for s in symbol.entries() {
            if let Symbol::Letter(l) = s {
                if !self.alphabet.contains(*l) {
                    return Err(Error::ForeignLetter(l.0));
                }
            }
        }
        let full = TapeSet::full(self.tapes);
        let pads = symbol.pad_set();
        let filters: Vec<Filter> = filters.into_iter().collect();
        for f in &filters {
            if f.is_empty() || f.bits() & !full.bits() != 0 {
                return Err(Error::InvalidMachine(format!(
                    "state `{}`: filter {f} is empty or out of range",
                    self.names[state]
                )));
            }
            if f.bits() & pads.bits() != 0 {
                return Err(Error::InvalidMachine(format!(
                    "state `{}`: filter {f} advances a tape that is at its end in {}",
                    self.names[state],
                    self.alphabet.render_padded(&symbol)
                )));
            }
        }
        let entry = self.trans.entry((state, symbol)).or_default();
        entry.targets.extend(targets);
        entry.filters.extend(filters);
        Ok(())
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        self.start.iter().copied()
    }

    pub fn is_start(&self, state: usize) -> bool {
        self.start.contains(&state)
    }

    pub fn is_accept(&self, state: usize) -> bool {
        self.accept[state]
    }

    pub fn entry(&self, state: usize, symbol: &PaddedSymbol) -> Option<&FaaEntry> {
        self.trans.get(&(state, symbol.clone()))
    }

    /// Every transition with a nonempty target set, in `(state, symbol)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &PaddedSymbol, &FaaEntry)> {
        self.trans
            .iter()
            .filter(|(_, e)| !e.targets.is_empty() && !e.filters.is_empty())
            .map(|((s, sym), e)| (*s, sym, e))
    }

    /// Searches the configuration graph of (state, head positions).
    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        tuple.check(self.tapes, &self.alphabet)?;
        let words = tuple.components();
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
        let mut queue: VecDeque<(usize, Vec<usize>)> = VecDeque::new();
        for s in self.starts() {
            let cfg = (s, vec![0; self.tapes]);
            if seen.insert(cfg.clone()) {
                queue.push_back(cfg);
            }
        }
        while let Some((state, pos)) = queue.pop_front() {
            let heads: Vec<Symbol> = pos.iter().zip(words).map(|(&p, w)| Symbol::at(w, p)).collect();
            let Ok(symbol) = PaddedSymbol::new(heads) else {
                // every head is at the end of its tape
                if self.accept[state] {
                    return Ok(true);
                }
                continue;
            };
            let Some(entry) = self.trans.get(&(state, symbol)) else {
                continue;
            };
            for filter in &entry.filters {
                let mut next = pos.clone();
                for i in filter.iter() {
                    next[i] += 1;
                }
                for &t in &entry.targets {
                    let cfg = (t, next.clone());
                    if seen.insert(cfg.clone()) {
                        queue.push_back(cfg);
                    }
                }
            }
        }
        Ok(false)
    }

    /// States reordered by name, for stable output.
    pub fn canonical(&self) -> Faa {
        let mut order: Vec<usize> = (0..self.num_states()).collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut out = Faa {
            tapes: self.tapes,
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&o| self.names[o].clone()).collect(),
            start: self.start.iter().map(|&s| rank[s]).collect(),
            accept: order.iter().map(|&o| self.accept[o]).collect(),
            trans: BTreeMap::new(),
        };
        for ((s, sym), e) in &self.trans {
            out.trans.insert(
                (rank[*s], sym.clone()),
                FaaEntry {
                    targets: e.targets.iter().map(|&t| rank[t]).collect(),
                    filters: e.filters.clone(),
                },
            );
        }
        out
    }
}

/// An FAA offering at most one filter per `(state, symbol)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfaa(Faa);

impl Dfaa {
    pub fn new(faa: Faa) -> Result<Self> {
        if let Some((s, sym, _)) = faa.transitions().find(|(_, _, e)| e.filters.len() > 1) {
            return Err(Error::InvalidMachine(format!(
                "state `{}` offers several filters on {}",
                faa.name(s),
                faa.alphabet().render_padded(sym)
            )));
        }
        Ok(Dfaa(faa))
    }

    pub fn as_faa(&self) -> &Faa {
        &self.0
    }

    pub fn into_faa(self) -> Faa {
        self.0
    }

    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        self.0.accepts(tuple)
    }

    /// The single filter of a transition.
    pub fn filter(&self, state: usize, symbol: &PaddedSymbol) -> Option<Filter> {
        self.0
            .entry(state, symbol)
            .filter(|e| !e.targets.is_empty())
            .and_then(|e| e.filters.first().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;

    fn sym(entries: &[Option<u32>]) -> PaddedSymbol {
        PaddedSymbol::new(
            entries
                .iter()
                .map(|e| e.map_or(Symbol::Pad, |l| Symbol::Letter(Letter(l))))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn accepts_only_empty_tuple_without_transitions() {
        let a = Alphabet::new(["x"]).unwrap();
        let mut m = Faa::new(2, a.clone()).unwrap();
        let s = m.add_state("s");
        m.set_start(s);
        m.set_accept(s, true);
        assert!(m.accepts(&a.parse_tuple(",").unwrap()).unwrap());
        assert!(!m.accepts(&a.parse_tuple("x,").unwrap()).unwrap());
    }

    /// `(x^n, x^2n)`: read one left and one right letter together, then one
    /// more right letter.
    fn doubling() -> Faa {
        let a = Alphabet::new(["x"]).unwrap();
        let mut m = Faa::new(2, a).unwrap();
        let p = m.add_state("p");
        let q = m.add_state("q");
        m.set_start(p);
        m.set_accept(p, true);
        let both = TapeSet::from_iter([0, 1]);
        let right = TapeSet::single(1);
        m.add_transition(p, sym(&[Some(0), Some(0)]), [q], [both]).unwrap();
        m.add_transition(q, sym(&[Some(0), Some(0)]), [p], [right]).unwrap();
        m.add_transition(q, sym(&[None, Some(0)]), [p], [right]).unwrap();
        m
    }

    #[test]
    fn doubling_membership() {
        let m = doubling();
        let a = m.alphabet().clone();
        for (text, want) in [("xx,xxxx", true), ("xx,xxx", false), (",", true), ("x,x", false)] {
            assert_eq!(m.accepts(&a.parse_tuple(text).unwrap()).unwrap(), want, "{text}");
        }
        assert!(Dfaa::new(m).is_ok());
    }

    #[test]
    fn filter_on_padding_rejected() {
        let a = Alphabet::new(["x"]).unwrap();
        let mut m = Faa::new(2, a).unwrap();
        let p = m.add_state("p");
        let err = m.add_transition(p, sym(&[None, Some(0)]), [p], [TapeSet::single(0)]);
        assert!(matches!(err, Err(Error::InvalidMachine(_))));
    }

    #[test]
    fn two_filters_is_not_deterministic() {
        let mut m = doubling();
        m.add_transition(0, sym(&[Some(0), Some(0)]), [1], [TapeSet::single(0)])
            .unwrap();
        assert!(Dfaa::new(m).is_err());
    }
}
