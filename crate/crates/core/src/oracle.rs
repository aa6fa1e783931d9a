//! Brute-force acceptance straight from the definitions.
//!
//! Nothing here calls the simulators: tuples are padded by hand, runs are
//! replayed step by step, and non-deterministic machines are explored over
//! every interleaving of their tapes. Slow on purpose, and meant for
//! components of length up to about six.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::nfa::Nfa;
use crate::nondet::{Faa, Saa};
use crate::quasi::{SemiSortedAsync, Sort, SortedAsync};
use crate::sync::SyncAutomaton;
use crate::words::{Alphabet, LenLex, PaddedSymbol, Symbol, Word, WordTuple};

/// Every tuple over `alphabet` whose `i`-th component has length at most
/// `max_len[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedDomain {
    pub alphabet: Alphabet,
    pub max_len: Vec<usize>,
}

impl BoundedDomain {
    pub fn new(alphabet: Alphabet, max_len: Vec<usize>) -> Self {
        assert!(!max_len.is_empty(), "a domain needs at least one component");
        BoundedDomain { alphabet, max_len }
    }

    pub fn uniform(alphabet: Alphabet, arity: usize, max_len: usize) -> Self {
        BoundedDomain::new(alphabet, vec![max_len; arity])
    }

    pub fn arity(&self) -> usize {
        self.max_len.len()
    }

    /// The tuples in lexicographic order of their components, each
    /// component in length-lexicographic order.
    pub fn tuples(&self) -> Vec<WordTuple> {
        let streams: Vec<Vec<Word>> = self
            .max_len
            .iter()
            .map(|&m| LenLex::bounded(self.alphabet.len(), m).collect())
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; streams.len()];
        loop {
            out.push(WordTuple::new(
                idx.iter().zip(&streams).map(|(&i, s)| s[i].clone()).collect(),
            ));
            let mut k = streams.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < streams[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

pub fn oracle_accepts(machine: &Machine, t: &WordTuple) -> Result<bool> {
    if t.arity() != machine.tapes() {
        return Err(Error::Arity {
            expected: machine.tapes(),
            found: t.arity(),
        });
    }
    t.check(machine.tapes(), machine.alphabet())?;
    Ok(match machine {
        Machine::Sync(m) => sync_accepts(m, t),
        Machine::SemiSorted(m) => semisorted_accepts(m, t),
        Machine::Sorted(m) => sorted_accepts(m, t),
        Machine::Faa(m) => faa_accepts(m, t),
        Machine::Saa(m) => saa_accepts(m, t),
    })
}

pub fn language_set(machine: &Machine, d: &BoundedDomain) -> Result<BTreeSet<WordTuple>> {
    let mut out = BTreeSet::new();
    for t in d.tuples() {
        if oracle_accepts(machine, &t)? {
            out.insert(t);
        }
    }
    Ok(out)
}

/// `None` when the machines agree on the whole domain, otherwise the first
/// tuple in domain order on which they differ.
pub fn languages_equal(m1: &Machine, m2: &Machine, d: &BoundedDomain) -> Result<Option<WordTuple>> {
    if m1.tapes() != m2.tapes() {
        return Err(Error::Arity {
            expected: m1.tapes(),
            found: m2.tapes(),
        });
    }
    if m1.alphabet() != m2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    for t in d.tuples() {
        if oracle_accepts(m1, &t)? != oracle_accepts(m2, &t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn head(w: &Word, pos: usize) -> Symbol {
    match w.letters().get(pos) {
        Some(&l) => Symbol::Letter(l),
        None => Symbol::Pad,
    }
}

fn closure<L: crate::nfa::Label>(nfa: &Nfa<L>, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<usize> = seed.into_iter().collect();
    while let Some(s) = stack.pop() {
        if out.insert(s) {
            for (l, t) in nfa.arrows_from(s) {
                if l.is_none() {
                    stack.push(*t);
                }
            }
        }
    }
    out
}

fn sync_accepts(m: &SyncAutomaton, t: &WordTuple) -> bool {
    let nfa = m.nfa();
    let width = t.components().iter().map(Word::len).max().unwrap_or(0);
    let mut current = closure(nfa, nfa.starts().iter().copied());
    for col in 0..width {
        let entries: Vec<Symbol> = t.components().iter().map(|w| head(w, col)).collect();
        let column = PaddedSymbol::new(entries).expect("some component is long enough");
        let next: Vec<usize> = current
            .iter()
            .flat_map(|&s| nfa.arrows_from(s).iter())
            .filter(|(l, _)| l.as_ref() == Some(&column))
            .map(|(_, t)| *t)
            .collect();
        current = closure(nfa, next);
    }
    current.iter().any(|&s| nfa.is_accept(s))
}

/// Replays the single run of a deterministic asynchronous machine.
fn det_run(nfa: &Nfa<Symbol>, tape_of: impl Fn(usize) -> Option<usize>, t: &WordTuple) -> bool {
    let words = t.components();
    let mut read = vec![0usize; words.len()];
    let Some(&start) = nfa.starts().first() else {
        return false;
    };
    let mut state = start;
    let total: usize = words.iter().map(|w| w.len() + 1).sum();
    for _ in 0..total {
        let Some(tape) = tape_of(state) else {
            return false;
        };
        if read[tape] > words[tape].len() {
            return false;
        }
        let sym = head(&words[tape], read[tape]);
        let next = nfa
            .arrows_from(state)
            .iter()
            .find(|(l, _)| *l == Some(sym))
            .map(|(_, t)| *t);
        let Some(next) = next else {
            return false;
        };
        read[tape] += 1;
        state = next;
    }
    nfa.is_accept(state)
}

fn semisorted_accepts(m: &SemiSortedAsync, t: &WordTuple) -> bool {
    det_run(m.nfa(), |s| Some(m.class(s)), t)
}

fn sorted_accepts(m: &SortedAsync, t: &WordTuple) -> bool {
    det_run(
        m.nfa(),
        |s| match m.sort(s) {
            Sort::Reading { tape, .. } => Some(tape),
            Sort::Final => None,
        },
        t,
    )
}

/// Tries every transition and every filter from every reachable
/// configuration. Filters always advance, so the search is finite.
fn faa_accepts(m: &Faa, t: &WordTuple) -> bool {
    type Memo = HashMap<(usize, Vec<usize>), bool>;
    fn go(m: &Faa, words: &[Word], state: usize, pos: &mut Vec<usize>, memo: &mut Memo) -> bool {
        if let Some(&r) = memo.get(&(state, pos.clone())) {
            return r;
        }
        let heads: Vec<Symbol> = pos.iter().zip(words).map(|(&p, w)| head(w, p)).collect();
        let mut found = false;
        if heads.iter().all(|h| h.is_pad()) {
            found = m.is_accept(state);
        } else if let Some(entry) = m.entry(state, &PaddedSymbol::new(heads).expect("not all padding")) {
            for filter in &entry.filters {
                for i in filter.iter() {
                    pos[i] += 1;
                }
                found = entry.targets.iter().any(|&next| go(m, words, next, pos, memo));
                for i in filter.iter() {
                    pos[i] -= 1;
                }
                if found {
                    break;
                }
            }
        }
        memo.insert((state, pos.clone()), found);
        found
    }
    let words = t.components();
    let mut memo = HashMap::new();
    let starts: Vec<usize> = m.starts().collect();
    starts
        .into_iter()
        .any(|s| go(m, words, s, &mut vec![0; words.len()], &mut memo))
}

/// Walks the tree of shuffles of the tuple (each component followed by its
/// end marker), carrying the set of states that can have read the shuffle
/// so far. A state reads only symbols drawn from its own tape.
fn saa_accepts(m: &Saa, t: &WordTuple) -> bool {
    fn go(
        m: &Saa,
        words: &[Word],
        pos: &mut Vec<usize>,
        states: BTreeSet<usize>,
        memo: &mut HashMap<(Vec<usize>, BTreeSet<usize>), bool>,
    ) -> bool {
        if states.is_empty() {
            return false;
        }
        let key = (pos.clone(), states);
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let states = &key.1;
        let nfa = m.nfa();
        let done = pos.iter().zip(words).all(|(&p, w)| p == w.len() + 1);
        let result = if done {
            states.iter().any(|&s| nfa.is_accept(s))
        } else {
            let mut found = false;
            for tape in 0..words.len() {
                if pos[tape] > words[tape].len() {
                    continue;
                }
                let sym = head(&words[tape], pos[tape]);
                let next: Vec<usize> = states
                    .iter()
                    .filter(|&&s| m.class(s) == tape)
                    .flat_map(|&s| nfa.arrows_from(s).iter())
                    .filter(|(l, _)| *l == Some(sym))
                    .map(|(_, t)| *t)
                    .collect();
                pos[tape] += 1;
                found = go(m, words, pos, closure(nfa, next), memo);
                pos[tape] -= 1;
                if found {
                    break;
                }
            }
            found
        };
        memo.insert(key, result);
        result
    }
    let nfa = m.nfa();
    let words = t.components();
    let start = closure(nfa, nfa.starts().iter().copied());
    go(m, words, &mut vec![0; words.len()], start, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;

    fn doubling() -> SemiSortedAsync {
        let a = Alphabet::new(["x"]).unwrap();
        let x = Some(Symbol::Letter(Letter(0)));
        let pad = Some(Symbol::Pad);
        let mut nfa = Nfa::new();
        let q: Vec<usize> = ["q0", "q1", "q2", "r", "f"].iter().map(|n| nfa.add_state(*n)).collect();
        nfa.set_start(q[0]);
        nfa.set_accept(q[4], true);
        nfa.add_arrow(q[0], x, q[1]);
        nfa.add_arrow(q[1], x, q[2]);
        nfa.add_arrow(q[2], x, q[0]);
        nfa.add_arrow(q[0], pad, q[3]);
        nfa.add_arrow(q[3], pad, q[4]);
        SemiSortedAsync::new(2, a, nfa, vec![0, 1, 1, 1, 1]).unwrap()
    }

    #[test]
    fn domain_order_and_size() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let d = BoundedDomain::new(a.clone(), vec![1, 2]);
        let ts = d.tuples();
        assert_eq!(ts.len(), 3 * 7);
        assert_eq!(ts[0], a.parse_tuple(",").unwrap());
        assert_eq!(ts[1], a.parse_tuple(",a").unwrap());
        assert_eq!(ts[7], a.parse_tuple("a,").unwrap());
    }

    #[test]
    fn doubling_language() {
        let m = Machine::from(doubling());
        let a = m.alphabet().clone();
        let d = BoundedDomain::uniform(a.clone(), 2, 6);
        let got = language_set(&m, &d).unwrap();
        let want: BTreeSet<WordTuple> = [",", "x,xx", "xx,xxxx", "xxx,xxxxxx"]
            .iter()
            .map(|s| a.parse_tuple(s).unwrap())
            .collect();
        assert_eq!(got, want);
        assert_eq!(languages_equal(&m, &m, &d).unwrap(), None);
    }

    #[test]
    fn saa_view_agrees() {
        let m = doubling();
        let s = Machine::from(Saa::from(&m));
        let d = BoundedDomain::uniform(m.alphabet().clone(), 2, 5);
        assert_eq!(languages_equal(&Machine::from(m), &s, &d).unwrap(), None);
    }
}
