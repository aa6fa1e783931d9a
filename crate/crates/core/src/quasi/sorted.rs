use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::words::{Alphabet, Symbol, TapeSet, WordTuple};

use super::semisorted::validate_classes;
use super::{simulate, RunTrace, SemiSortedAsync};

/// What a sorted state knows: the tape it reads and the tapes already
/// finished, or that every tape is finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Reading { tape: usize, done: TapeSet },
    Final,
}

impl Sort {
    pub fn tape(self) -> Option<usize> {
        match self {
            Sort::Reading { tape, .. } => Some(tape),
            Sort::Final => None,
        }
    }
}

/// A deterministic asynchronous automaton whose states also track which
/// tapes have been read to the end. The unique final state is the only
/// accepting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedAsync {
    tapes: usize,
    alphabet: Alphabet,
    nfa: Nfa<Symbol>,
    sort: Vec<Sort>,
}

impl SortedAsync {
    pub fn new(tapes: usize, alphabet: Alphabet, nfa: Nfa<Symbol>, sort: Vec<Sort>) -> Result<Self> {
        let classes: Vec<usize> = sort.iter().map(|s| s.tape().unwrap_or(0)).collect();
        validate_classes(tapes, &alphabet, &nfa, &classes)?;
        let bad = |s: usize, why: &str| {
            Err(Error::InvalidMachine(format!("state `{}`: {why}", nfa.name(s))))
        };
        if nfa.starts().len() != 1 {
            return Err(Error::InvalidMachine(format!(
                "expected exactly one start state, found {}",
                nfa.starts().len()
            )));
        }
        if !nfa.is_deterministic() {
            return Err(Error::InvalidMachine(
                "sorted machines must be partial deterministic".into(),
            ));
        }
        let full = TapeSet::full(tapes);
        let finals: Vec<usize> = (0..sort.len()).filter(|&s| sort[s] == Sort::Final).collect();
        if finals.len() > 1 {
            return bad(finals[1], "a second final state");
        }
        for s in 0..nfa.num_states() {
            if nfa.is_accept(s) != (sort[s] == Sort::Final) {
                return bad(s, "exactly the final state accepts");
            }
            if let Sort::Reading { tape, done } = sort[s] {
                if done.contains(tape) || done.bits() & !full.bits() != 0 {
                    return bad(s, "reads a tape it has already finished");
                }
            }
        }
        let start = nfa.starts()[0];
        if !matches!(sort[start], Sort::Reading { done, .. } if done.is_empty()) {
            return bad(start, "the start state must have no finished tapes");
        }
        for (s, label, t) in nfa.arrows() {
            let Sort::Reading { tape, done } = sort[s] else {
                return bad(s, "no arrows may leave the final state");
            };
            match (label, sort[t]) {
                (Some(Symbol::Letter(_)), Sort::Reading { done: d2, .. }) if d2 == done => {}
                (Some(Symbol::Letter(_)), _) => {
                    return bad(s, "letter arrows must keep the finished set")
                }
                (Some(Symbol::Pad), Sort::Final) if done.with(tape) == full => {}
                (Some(Symbol::Pad), Sort::Reading { tape: j, done: d2 })
                    if j != tape && d2 == done.with(tape) => {}
                (Some(Symbol::Pad), _) => {
                    return bad(s, "end-marker arrows must add exactly the tape just finished")
                }
                (None, _) => return bad(s, "empty moves are not allowed"),
            }
        }
        Ok(SortedAsync {
            tapes,
            alphabet,
            nfa,
            sort,
        })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nfa(&self) -> &Nfa<Symbol> {
        &self.nfa
    }

    pub fn sort(&self, state: usize) -> Sort {
        self.sort[state]
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.sort
    }

    pub fn num_states(&self) -> usize {
        self.nfa.num_states()
    }

    pub fn final_state(&self) -> Option<usize> {
        self.sort.iter().position(|&s| s == Sort::Final)
    }

    pub fn run(&self, tuple: &WordTuple) -> Result<RunTrace> {
        tuple.check(self.tapes, &self.alphabet)?;
        Ok(simulate(&self.nfa, |s| self.sort[s].tape(), tuple))
    }

    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        Ok(self.run(tuple)?.accepted())
    }
}

/// Forgets the finished sets: each state keeps the tape it reads, and the
/// final state joins the last tape's class.
pub fn sorted_to_semisorted(m: &SortedAsync) -> SemiSortedAsync {
    let classes = m
        .sort
        .iter()
        .map(|s| s.tape().unwrap_or(m.tapes - 1))
        .collect();
    SemiSortedAsync::new(m.tapes, m.alphabet.clone(), m.nfa.clone(), classes)
        .expect("a sorted machine is a valid semi-sorted machine")
}

/// Builds one layer per proper subset `V` of the tapes, holding a copy
/// `s@V` of every state whose tape is not in `V`. End-marker arrows move
/// from layer `V` to layer `V ∪ {i}`; the last one enters the new final
/// state `s$` when the original target accepts.
pub fn semisorted_to_sorted(m: &SemiSortedAsync) -> SortedAsync {
    let n = m.tapes();
    let full = TapeSet::full(n);
    let src = m.nfa();
    let mut nfa = Nfa::new();
    let mut sort = Vec::new();
    let mut index: HashMap<(usize, TapeSet), usize> = HashMap::new();
    for v in TapeSet::all_subsets(n).filter(|&v| v != full) {
        for s in 0..m.num_states() {
            let tape = m.class(s);
            if !v.contains(tape) {
                let id = nfa.add_state(format!("{}@{v}", src.name(s)));
                sort.push(Sort::Reading { tape, done: v });
                index.insert((s, v), id);
            }
        }
    }
    let fin = nfa.add_state("s$");
    nfa.set_accept(fin, true);
    sort.push(Sort::Final);
    nfa.set_start(index[&(m.start(), TapeSet::EMPTY)]);
    for (&(s, v), &from) in &index {
        for (label, t) in src.arrows_from(s) {
            match label {
                Some(Symbol::Letter(_)) => {
                    if let Some(&to) = index.get(&(*t, v)) {
                        nfa.add_arrow(from, *label, to);
                    }
                }
                Some(Symbol::Pad) => {
                    let v2 = v.with(m.class(s));
                    if v2 == full {
                        if src.is_accept(*t) {
                            nfa.add_arrow(from, *label, fin);
                        }
                    } else if let Some(&to) = index.get(&(*t, v2)) {
                        nfa.add_arrow(from, *label, to);
                    }
                }
                None => unreachable!("semi-sorted machines have no empty moves"),
            }
        }
    }
    SortedAsync::new(n, m.alphabet().clone(), nfa, sort)
        .expect("the layered construction respects the sort discipline")
}
