#![allow(dead_code)]

use std::path::PathBuf;

use multitape::format::{load_bundle, load_machine};
use multitape::group::StructureCandidate;
use multitape::machine::Machine;
use multitape::nfa::Nfa;
use multitape::nondet::{Faa, Saa};
use multitape::quasi::{SemiSortedAsync, Sort, SortedAsync};
use multitape::oracle::{oracle_accepts, BoundedDomain};
use multitape::sync::SyncAutomaton;
use multitape::words::{padded_alphabet, Alphabet, PaddedSymbol, Symbol, TapeSet, WordTuple};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> Machine {
    load_machine(&fixture_path(name)).unwrap_or_else(|e| panic!("{e}"))
}

pub fn bundle(name: &str) -> StructureCandidate {
    load_bundle(&fixture_path(&format!("groups/{name}"))).unwrap_or_else(|e| panic!("{e}"))
}

pub fn semisorted(name: &str) -> SemiSortedAsync {
    match fixture(name) {
        Machine::SemiSorted(m) => m,
        other => panic!("{name} is a {} machine", other.kind()),
    }
}

pub fn sorted(name: &str) -> SortedAsync {
    match fixture(name) {
        Machine::Sorted(m) => m,
        other => panic!("{name} is a {} machine", other.kind()),
    }
}

pub fn alphabet(size: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"][..size].iter().copied()).unwrap()
}

fn symbols(a: &Alphabet) -> Vec<Symbol> {
    a.letters().map(Symbol::Letter).chain([Symbol::Pad]).collect()
}

/// A target for an end-marker arrow out of `s`: usually a state reading
/// another tape, since the tape just finished has nothing left.
fn after_pad(r: &mut TestRng, class: &[usize], s: usize) -> usize {
    let other: Vec<usize> = (0..class.len()).filter(|&t| class[t] != class[s]).collect();
    if other.is_empty() || r.gen_bool(0.2) {
        r.gen_range(0..class.len())
    } else {
        *other.choose(r).unwrap()
    }
}

/// Every tape gets at least one state.
fn random_classes(r: &mut TestRng, tapes: usize, n: usize) -> Vec<usize> {
    let mut class: Vec<usize> = (0..n).map(|s| if s < tapes { s } else { r.gen_range(0..tapes) }).collect();
    class.shuffle(r);
    class
}

fn states<L: multitape::nfa::Label>(n: usize) -> Nfa<L> {
    let mut nfa = Nfa::new();
    for i in 0..n {
        nfa.add_state(format!("s{i}"));
    }
    nfa
}

pub fn random_sync(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> SyncAutomaton {
    let cols: Vec<PaddedSymbol> = padded_alphabet(tapes, a);
    let mut nfa = states(n);
    nfa.set_start(0);
    if n > 1 && r.gen_bool(0.3) {
        nfa.set_start(1);
    }
    for s in 0..n {
        nfa.set_accept(s, r.gen_bool(0.35));
        for c in &cols {
            if r.gen_bool(0.45) {
                nfa.add_arrow(s, Some(c.clone()), r.gen_range(0..n));
            }
        }
        if r.gen_bool(0.1) {
            nfa.add_arrow(s, None, r.gen_range(0..n));
        }
    }
    SyncAutomaton::new(tapes, a.clone(), nfa).unwrap()
}

/// Half of the time the arrows follow the layered shape of a sorted
/// machine, which accepts far more often than an unconstrained one.
/// A synchronous machine whose every path spells a valid padded string:
/// each state is labelled with the set of tapes already padded, and a
/// column may only be read from a state whose set it extends, moving to a
/// state labelled with the column's own padded set.
pub fn random_padded_sync(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> SyncAutomaton {
    let cols = padded_alphabet(tapes, a);
    let full = TapeSet::full(tapes);
    let mut label: Vec<TapeSet> = vec![TapeSet::default()];
    while label.len() < n {
        let pick = TapeSet::all_subsets(tapes).filter(|s| *s != full).collect::<Vec<_>>();
        label.push(*pick.choose(r).unwrap());
    }
    let mut nfa = states(n);
    nfa.set_start(0);
    for s in 0..n {
        nfa.set_accept(s, r.gen_bool(0.4));
        for c in &cols {
            let pads = c.pad_set();
            if pads.bits() & label[s].bits() != label[s].bits() {
                continue;
            }
            let targets: Vec<usize> = (0..n).filter(|&t| label[t] == pads).collect();
            if !targets.is_empty() && r.gen_bool(0.5) {
                nfa.add_arrow(s, Some(c.clone()), *targets.choose(r).unwrap());
            }
        }
    }
    SyncAutomaton::new(tapes, a.clone(), nfa).unwrap()
}

pub fn random_semisorted(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> SemiSortedAsync {
    if r.gen_bool(0.5) {
        let (nfa, class) = layered(r, tapes, a, n);
        return SemiSortedAsync::new(tapes, a.clone(), nfa, class).unwrap();
    }
    let mut nfa = states(n);
    nfa.set_start(0);
    let class = random_classes(r, tapes, n);
    for s in 0..n {
        nfa.set_accept(s, r.gen_bool(0.4));
        for sym in symbols(a) {
            if sym.is_pad() {
                if r.gen_bool(0.8) {
                    nfa.add_arrow(s, Some(sym), after_pad(r, &class, s));
                }
            } else if r.gen_bool(0.55) {
                nfa.add_arrow(s, Some(sym), r.gen_range(0..n));
            }
        }
    }
    SemiSortedAsync::new(tapes, a.clone(), nfa, class).unwrap()
}

/// States come in groups that share a finished set; every (finished set,
/// tape) pair gets at least one state, plus `extra` random ones.
pub fn random_sorted(r: &mut TestRng, tapes: usize, a: &Alphabet, extra: usize) -> SortedAsync {
    let full = TapeSet::full(tapes);
    let mut sorts: Vec<Sort> = Vec::new();
    for done in TapeSet::all_subsets(tapes).filter(|d| *d != full) {
        for tape in (0..tapes).filter(|t| !done.contains(*t)) {
            sorts.push(Sort::Reading { tape, done });
        }
    }
    for _ in 0..extra {
        let pick = sorts[r.gen_range(0..sorts.len())];
        sorts.push(pick);
    }
    sorts.push(Sort::Final);
    let n = sorts.len();
    let mut nfa = states(n);
    nfa.set_start(0);
    nfa.set_accept(n - 1, true);
    for s in 0..n {
        let Sort::Reading { tape, done } = sorts[s] else { continue };
        for l in a.letters() {
            let same: Vec<usize> = (0..n)
                .filter(|&t| matches!(sorts[t], Sort::Reading { done: d, .. } if d == done))
                .collect();
            if r.gen_bool(0.55) {
                nfa.add_arrow(s, Some(Symbol::Letter(l)), *same.choose(r).unwrap());
            }
        }
        let after = done.with(tape);
        let next: Vec<usize> = (0..n)
            .filter(|&t| match sorts[t] {
                Sort::Final => after == full,
                Sort::Reading { done: d, .. } => d == after,
            })
            .collect();
        if r.gen_bool(0.7) {
            nfa.add_arrow(s, Some(Symbol::Pad), *next.choose(r).unwrap());
        }
    }
    SortedAsync::new(tapes, a.clone(), nfa, sorts).unwrap()
}

/// The arrows of a random sorted machine, with each state's class its
/// tape (the final state gets class 1).
fn layered(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> (Nfa<Symbol>, Vec<usize>) {
    let m = random_sorted(r, tapes, a, n.saturating_sub(tapes));
    let class = m.sorts().iter().map(|s| s.tape().unwrap_or(0)).collect();
    (m.nfa().clone(), class)
}

pub fn random_faa(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> Faa {
    let mut m = Faa::new(tapes, a.clone()).unwrap();
    for i in 0..n {
        m.add_state(format!("s{i}"));
    }
    m.set_start(0);
    if n > 1 && r.gen_bool(0.3) {
        m.set_start(1);
    }
    for s in 0..n {
        m.set_accept(s, r.gen_bool(0.35));
        for col in padded_alphabet(tapes, a) {
            if !r.gen_bool(0.5) {
                continue;
            }
            let live: Vec<usize> = (0..tapes).filter(|&t| !col.entry(t).is_pad()).collect();
            let filter = |r: &mut TestRng| -> TapeSet {
                let mut f = TapeSet::single(*live.choose(r).unwrap());
                for &t in &live {
                    if r.gen_bool(0.4) {
                        f.insert(t);
                    }
                }
                f
            };
            let filters: Vec<TapeSet> = (0..r.gen_range(1..=2)).map(|_| filter(r)).collect();
            let targets: Vec<usize> = (0..r.gen_range(1..=2)).map(|_| r.gen_range(0..n)).collect();
            m.add_transition(s, col, targets, filters).unwrap();
        }
    }
    m
}

pub fn random_saa(r: &mut TestRng, tapes: usize, a: &Alphabet, n: usize) -> Saa {
    if r.gen_bool(0.5) {
        let (mut nfa, class) = layered(r, tapes, a, n);
        let m = nfa.num_states();
        for s in 0..m {
            if r.gen_bool(0.3) {
                let t = r.gen_range(0..m);
                if class[t] == class[s] || r.gen_bool(0.3) {
                    nfa.add_arrow(s, None, t);
                }
            }
            for l in a.letters() {
                if r.gen_bool(0.25) {
                    nfa.add_arrow(s, Some(Symbol::Letter(l)), r.gen_range(0..m));
                }
            }
        }
        if m > 1 && r.gen_bool(0.3) {
            nfa.set_start(r.gen_range(1..m));
        }
        return Saa::new(tapes, a.clone(), nfa, class).unwrap();
    }
    let mut nfa = states(n);
    nfa.set_start(0);
    if n > 1 && r.gen_bool(0.3) {
        nfa.set_start(1);
    }
    let class = random_classes(r, tapes, n);
    for s in 0..n {
        nfa.set_accept(s, r.gen_bool(0.4));
        for sym in symbols(a) {
            for _ in 0..2 {
                if !r.gen_bool(0.4) {
                    continue;
                }
                let t = if sym.is_pad() { after_pad(r, &class, s) } else { r.gen_range(0..n) };
                nfa.add_arrow(s, Some(sym), t);
            }
        }
        if r.gen_bool(0.15) {
            nfa.add_arrow(s, None, r.gen_range(0..n));
        }
    }
    Saa::new(tapes, a.clone(), nfa, class).unwrap()
}

/// A random machine of every model, in a fixed order.
pub fn random_machines(r: &mut TestRng, tapes: usize, a: &Alphabet) -> Vec<Machine> {
    let n = r.gen_range(2..=5).max(tapes + 1);
    let extra = r.gen_range(0..3);
    vec![
        random_sync(r, tapes, a, n).into(),
        random_semisorted(r, tapes, a, n).into(),
        random_sorted(r, tapes, a, extra).into(),
        random_faa(r, tapes, a, n).into(),
        random_saa(r, tapes, a, n).into(),
    ]
}

/// The first tuple of the domain where simulator and oracle disagree.
pub fn first_mismatch(m: &Machine, d: &BoundedDomain) -> Option<WordTuple> {
    d.tuples()
        .into_iter()
        .find(|t| m.accepts(t).unwrap() != oracle_accepts(m, t).unwrap())
}
