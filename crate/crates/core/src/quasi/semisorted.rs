use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::words::{Alphabet, Symbol, WordTuple};

use super::{simulate, RunTrace};

/// A partial-deterministic automaton over letters and the end marker whose
/// states are partitioned into tape classes (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSortedAsync {
    tapes: usize,
    alphabet: Alphabet,
    nfa: Nfa<Symbol>,
    class: Vec<usize>,
}

impl SemiSortedAsync {
    pub fn new(tapes: usize, alphabet: Alphabet, nfa: Nfa<Symbol>, class: Vec<usize>) -> Result<Self> {
        validate_classes(tapes, &alphabet, &nfa, &class)?;
        if nfa.starts().len() != 1 {
            return Err(Error::InvalidMachine(format!(
                "expected exactly one start state, found {}",
                nfa.starts().len()
            )));
        }
        if !nfa.is_deterministic() {
            let s = (0..nfa.num_states())
                .find(|&s| {
                    let arrows = nfa.arrows_from(s);
                    arrows.iter().any(|(l, _)| l.is_none())
                        || arrows.windows(2).any(|w| w[0].0 == w[1].0)
                })
                .unwrap_or(0);
            return Err(Error::InvalidMachine(format!(
                "state `{}` has an empty move or two arrows with the same label",
                nfa.name(s)
            )));
        }
        Ok(SemiSortedAsync {
            tapes,
            alphabet,
            nfa,
            class,
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

    pub fn class(&self, state: usize) -> usize {
        self.class[state]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class
    }

    pub fn num_states(&self) -> usize {
        self.nfa.num_states()
    }

    pub fn start(&self) -> usize {
        self.nfa.starts()[0]
    }

    pub fn run(&self, tuple: &WordTuple) -> Result<RunTrace> {
        tuple.check(self.tapes, &self.alphabet)?;
        Ok(simulate(&self.nfa, |s| Some(self.class[s]), tuple))
    }

    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        Ok(self.run(tuple)?.accepted())
    }
}

pub(crate) fn validate_classes(
    tapes: usize,
    alphabet: &Alphabet,
    nfa: &Nfa<Symbol>,
    class: &[usize],
) -> Result<()> {
    if tapes == 0 {
        return Err(Error::InvalidMachine("a machine needs at least one tape".into()));
    }
    if class.len() != nfa.num_states() {
        return Err(Error::InvalidMachine("every state needs a tape class".into()));
    }
    if let Some(s) = (0..class.len()).find(|&s| class[s] >= tapes) {
        return Err(Error::InvalidMachine(format!(
            "state `{}` has class {} but the machine has {} tapes",
            nfa.name(s),
            class[s] + 1,
            tapes
        )));
    }
    for (_, l, _) in nfa.arrows() {
        if let Some(Symbol::Letter(x)) = l {
            if !alphabet.contains(*x) {
                return Err(Error::ForeignLetter(x.0));
            }
        }
    }
    Ok(())
}
