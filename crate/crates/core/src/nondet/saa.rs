use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::quasi::SemiSortedAsync;
use crate::words::{Alphabet, Symbol, WordTuple};

/// A non-deterministic automaton over letters and the end marker with its
/// states partitioned into tape classes. Letter and end-marker arrows from a
/// class-`i` state read tape `i`; empty moves read nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saa {
    tapes: usize,
    alphabet: Alphabet,
    nfa: Nfa<Symbol>,
    class: Vec<usize>,
}

impl Saa {
    pub fn new(tapes: usize, alphabet: Alphabet, nfa: Nfa<Symbol>, class: Vec<usize>) -> Result<Self> {
        crate::quasi::validate_classes(tapes, &alphabet, &nfa, &class)?;
        Ok(Saa {
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

    /// Searches (state, positions); a position one past the end of a word
    /// means its end marker has been read.
    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        tuple.check(self.tapes, &self.alphabet)?;
        let words = tuple.components();
        let done: Vec<usize> = words.iter().map(|w| w.len() + 1).collect();
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
        let mut queue = VecDeque::new();
        for &s in self.nfa.starts() {
            let cfg = (s, vec![0; self.tapes]);
            if seen.insert(cfg.clone()) {
                queue.push_back(cfg);
            }
        }
        while let Some((state, pos)) = queue.pop_front() {
            if pos == done && self.nfa.is_accept(state) {
                return Ok(true);
            }
            let tape = self.class[state];
            for (label, t) in self.nfa.arrows_from(state) {
                let next = match label {
                    None => pos.clone(),
                    Some(sym) => {
                        if pos[tape] >= done[tape] || Symbol::at(&words[tape], pos[tape]) != *sym {
                            continue;
                        }
                        let mut next = pos.clone();
                        next[tape] += 1;
                        next
                    }
                };
                let cfg = (*t, next);
                if seen.insert(cfg.clone()) {
                    queue.push_back(cfg);
                }
            }
        }
        Ok(false)
    }

    pub fn trim(&self) -> Saa {
        let r = self.nfa.reachable();
        let c = self.nfa.coreachable();
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        let (nfa, map) = self.nfa.restrict(&keep);
        let mut class = vec![0; nfa.num_states()];
        for (old, new) in map.iter().enumerate() {
            if let Some(n) = new {
                class[*n] = self.class[old];
            }
        }
        Saa {
            tapes: self.tapes,
            alphabet: self.alphabet.clone(),
            nfa,
            class,
        }
    }

    pub fn canonical(&self) -> Saa {
        let mut order: Vec<usize> = (0..self.num_states()).collect();
        order.sort_by(|&a, &b| self.nfa.name(a).cmp(self.nfa.name(b)));
        let class = order.iter().map(|&o| self.class[o]).collect();
        Saa {
            tapes: self.tapes,
            alphabet: self.alphabet.clone(),
            nfa: self.nfa.canonical(),
            class,
        }
    }
}

impl From<&SemiSortedAsync> for Saa {
    fn from(m: &SemiSortedAsync) -> Saa {
        Saa {
            tapes: m.tapes(),
            alphabet: m.alphabet().clone(),
            nfa: m.nfa().clone(),
            class: m.classes().to_vec(),
        }
    }
}

/// Disjoint union, with states renamed `1:s` and `2:s`.
pub fn union_saa(a: &Saa, b: &Saa) -> Result<Saa> {
    if a.tapes != b.tapes {
        return Err(Error::Arity {
            expected: a.tapes,
            found: b.tapes,
        });
    }
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let mut class = a.class.clone();
    class.extend_from_slice(&b.class);
    Ok(Saa {
        tapes: a.tapes,
        alphabet: a.alphabet.clone(),
        nfa: a.nfa.disjoint_union(&b.nfa),
        class,
    })
}

/// Existential projection erasing tape `erase` (0-based).
///
/// Each state is doubled into `(s,0)` and `(s,1)`, the second copy meaning
/// the erased tape's end marker has been read. Reads of the erased tape
/// become empty moves: letters within copy 0, the end marker from copy 0
/// to copy 1. Start states live in copy 0 and accepting states in copy 1.
/// The erased class is merged into a neighbouring class.
pub fn exists_saa(m: &Saa, erase: usize) -> Result<Saa> {
    if m.tapes < 2 {
        return Err(Error::Precondition("projection needs at least two tapes".into()));
    }
    if erase >= m.tapes {
        return Err(Error::Precondition(format!("no tape {}", erase + 1)));
    }
    let merged = if erase + 1 < m.tapes { erase } else { erase - 1 };
    let remap = |c: usize| match c.cmp(&erase) {
        std::cmp::Ordering::Less => c,
        std::cmp::Ordering::Equal => merged,
        std::cmp::Ordering::Greater => c - 1,
    };
    let src = &m.nfa;
    let mut nfa = Nfa::new();
    let mut class = Vec::new();
    for s in 0..src.num_states() {
        for d in 0..2 {
            nfa.add_state(format!("({},{d})", src.name(s)));
            class.push(remap(m.class[s]));
        }
    }
    let id = |s: usize, d: usize| 2 * s + d;
    for &s in src.starts() {
        nfa.set_start(id(s, 0));
    }
    for s in src.accepting() {
        nfa.set_accept(id(s, 1), true);
    }
    for (s, label, t) in src.arrows() {
        match (m.class[s] == erase, label) {
            (true, Some(Symbol::Letter(_))) => nfa.add_arrow(id(s, 0), None, id(t, 0)),
            (true, Some(Symbol::Pad)) => nfa.add_arrow(id(s, 0), None, id(t, 1)),
            _ => {
                nfa.add_arrow(id(s, 0), *label, id(t, 0));
                nfa.add_arrow(id(s, 1), *label, id(t, 1));
            }
        }
    }
    let out = Saa {
        tapes: m.tapes - 1,
        alphabet: m.alphabet.clone(),
        nfa,
        class,
    };
    Ok(out.trim())
}

/// Existential projection of a deterministic machine, as a partitioned
/// automaton.
pub fn to_saa_exists(m: &SemiSortedAsync, erase: usize) -> Result<Saa> {
    exists_saa(&Saa::from(m), erase)
}
