use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::sync::SyncAutomaton;
use crate::words::{PaddedSymbol, Symbol, TapeSet, Word};

use super::{semisorted_to_sorted, sorted_to_semisorted, SemiSortedAsync, Sort, SortedAsync};

/// Complement of a sorted machine.
///
/// Every sort `(i, V)` gets a dead state `d@(i,V)` that reads the rest of
/// tape `i` and then moves on to the smallest unfinished tape. Missing
/// arrows are sent to the dead state of their sort, the old final state is
/// dropped (so formerly accepted tuples get stuck), and a dead final state
/// becomes the unique accepting state.
pub fn complement_sorted(m: &SortedAsync) -> SortedAsync {
    let n = m.tapes();
    let full = TapeSet::full(n);
    let src = m.nfa();
    let old_final = m.final_state();
    let mut nfa = Nfa::new();
    let mut sort = Vec::new();
    let mut map = vec![None; src.num_states()];
    for s in 0..src.num_states() {
        if Some(s) != old_final {
            map[s] = Some(nfa.add_state(src.name(s)));
            sort.push(m.sort(s));
        }
    }
    let mut dead: HashMap<(usize, TapeSet), usize> = HashMap::new();
    for v in TapeSet::all_subsets(n).filter(|&v| v != full) {
        for tape in (0..n).filter(|&i| !v.contains(i)) {
            let id = nfa.add_state(format!("d@({},{v})", tape + 1));
            sort.push(Sort::Reading { tape, done: v });
            dead.insert((tape, v), id);
        }
    }
    let dead_final = nfa.add_state("d@final");
    sort.push(Sort::Final);
    nfa.set_accept(dead_final, true);

    // where the end marker leads from a state of sort (tape, done)
    let pad_target = |tape: usize, done: TapeSet| {
        let next = done.with(tape);
        match (0..n).find(|&j| !next.contains(j)) {
            Some(j) => dead[&(j, next)],
            None => dead_final,
        }
    };
    for (&(tape, done), &d) in &dead {
        for l in m.alphabet().letters() {
            nfa.add_arrow(d, Some(Symbol::Letter(l)), d);
        }
        nfa.add_arrow(d, Some(Symbol::Pad), pad_target(tape, done));
    }
    let symbols: Vec<Symbol> = m
        .alphabet()
        .letters()
        .map(Symbol::Letter)
        .chain([Symbol::Pad])
        .collect();
    for s in 0..src.num_states() {
        let Some(from) = map[s] else { continue };
        let Sort::Reading { tape, done } = m.sort(s) else {
            unreachable!("only the final state has the final sort")
        };
        for sym in &symbols {
            match src.successor(s, sym) {
                Some(t) if Some(t) == old_final => {}
                Some(t) => nfa.add_arrow(from, Some(*sym), map[t].unwrap()),
                None => {
                    let to = match sym {
                        Symbol::Letter(_) => dead[&(tape, done)],
                        Symbol::Pad => pad_target(tape, done),
                    };
                    nfa.add_arrow(from, Some(*sym), to);
                }
            }
        }
    }
    nfa.set_start(map[src.starts()[0]].expect("the start state is not final"));
    SortedAsync::new(n, m.alphabet().clone(), nfa, sort)
        .expect("completion respects the sort discipline")
}

/// The one-tape automaton for `{ w : ∃ v, the pair holds }` where `erase` is
/// the tape carrying `v`.
///
/// States are `(s,d)` where `d` records whether the erased tape's end marker
/// has been read. Reads of the erased tape become empty moves. Reading the
/// kept tape's end marker is replaced by accepting in the configurations
/// from which the rest of the run only touches the erased tape and accepts.
pub fn exists_two_tape(m: &SemiSortedAsync, erase: usize) -> Result<SyncAutomaton> {
    check_two_tape(m, erase)?;
    let src = m.nfa();
    let count = src.num_states();
    let on_erased = |s: usize| m.class(s) == erase;

    // States of the erased class that can finish the run: read erased
    // letters while staying in the class, then the end marker into an
    // accepting state.
    let mut finishes: Vec<bool> = (0..count)
        .map(|u| {
            on_erased(u)
                && src
                    .successor(u, &Symbol::Pad)
                    .is_some_and(|t| src.is_accept(t))
        })
        .collect();
    loop {
        let mut changed = false;
        for u in 0..count {
            if finishes[u] || !on_erased(u) {
                continue;
            }
            let reaches = src.arrows_from(u).iter().any(|(l, t)| {
                matches!(l, Some(Symbol::Letter(_))) && on_erased(*t) && finishes[*t]
            });
            if reaches {
                finishes[u] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut nfa = Nfa::new();
    for s in 0..count {
        for d in 0..2 {
            nfa.add_state(format!("({},{d})", src.name(s)));
        }
    }
    let id = |s: usize, d: usize| 2 * s + d;
    nfa.set_start(id(m.start(), 0));
    for s in 0..count {
        for (label, t) in src.arrows_from(s) {
            let t = *t;
            match (on_erased(s), label) {
                (true, Some(Symbol::Letter(_))) => nfa.add_arrow(id(s, 0), None, id(t, 0)),
                (true, Some(Symbol::Pad)) => nfa.add_arrow(id(s, 0), None, id(t, 1)),
                (false, Some(Symbol::Letter(l))) => {
                    let sym = PaddedSymbol::letter(*l);
                    nfa.add_arrow(id(s, 0), Some(sym.clone()), id(t, 0));
                    nfa.add_arrow(id(s, 1), Some(sym), id(t, 1));
                }
                (false, Some(Symbol::Pad)) => {
                    if finishes[t] {
                        nfa.set_accept(id(s, 0), true);
                    }
                    if src.is_accept(t) {
                        nfa.set_accept(id(s, 1), true);
                    }
                }
                (_, None) => unreachable!("semi-sorted machines have no empty moves"),
            }
        }
    }
    SyncAutomaton::new(1, m.alphabet().clone(), nfa.trim())
}

/// The one-tape automaton for `{ w : ∀ v, the pair holds }`, computed as
/// the complement of the projection of the complement.
pub fn forall_two_tape(m: &SemiSortedAsync, erase: usize) -> Result<SyncAutomaton> {
    check_two_tape(m, erase)?;
    let negated = sorted_to_semisorted(&complement_sorted(&semisorted_to_sorted(m)));
    Ok(exists_two_tape(&negated, erase)?.complement())
}

/// The one-tape automaton for `{ v : the pair holds with word on tape
/// fixed and v on the other tape }`.
///
/// States are `(s,i,d)`: `i` letters of `word` consumed (`|word| + 1` once
/// its end marker is read) and `d` recording the free tape's end marker.
pub fn section(m: &SemiSortedAsync, fixed: usize, word: &Word) -> Result<SyncAutomaton> {
    check_two_tape(m, fixed)?;
    let src = m.nfa();
    let end = word.len() + 1;
    let mut nfa = Nfa::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |nfa: &mut Nfa<PaddedSymbol>, queue: &mut VecDeque<_>, key: (usize, usize, usize)| {
        *index.entry(key).or_insert_with(|| {
            let (s, i, d) = key;
            let id = nfa.add_state(format!("({},{i},{d})", src.name(s)));
            nfa.set_accept(id, i == end && d == 1 && src.is_accept(s));
            queue.push_back(key);
            id
        })
    };
    let start = intern(&mut nfa, &mut queue, (m.start(), 0, 0));
    nfa.set_start(start);
    while let Some(key) = queue.pop_front() {
        let (s, i, d) = key;
        let from = intern(&mut nfa, &mut queue, key);
        if m.class(s) == fixed {
            if i < end {
                if let Some(t) = src.successor(s, &Symbol::at(word, i)) {
                    let to = intern(&mut nfa, &mut queue, (t, i + 1, d));
                    nfa.add_arrow(from, None, to);
                }
            }
        } else if d == 0 {
            for (label, t) in src.arrows_from(s) {
                match label {
                    Some(Symbol::Letter(l)) => {
                        let to = intern(&mut nfa, &mut queue, (*t, i, 0));
                        nfa.add_arrow(from, Some(PaddedSymbol::letter(*l)), to);
                    }
                    Some(Symbol::Pad) => {
                        let to = intern(&mut nfa, &mut queue, (*t, i, 1));
                        nfa.add_arrow(from, None, to);
                    }
                    None => unreachable!("semi-sorted machines have no empty moves"),
                }
            }
        }
    }
    SyncAutomaton::new(1, m.alphabet().clone(), nfa.trim())
}

fn check_two_tape(m: &SemiSortedAsync, erase: usize) -> Result<()> {
    if m.tapes() != 2 {
        return Err(Error::Precondition(format!(
            "two-tape projection needs a two-tape machine, got {} tapes",
            m.tapes()
        )));
    }
    if erase > 1 {
        return Err(Error::Precondition(format!("no tape {}", erase + 1)));
    }
    Ok(())
}
