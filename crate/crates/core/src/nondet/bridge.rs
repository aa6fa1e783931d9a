use std::collections::VecDeque;

use crate::nfa::Nfa;
use crate::quasi::SemiSortedAsync;
use crate::words::{Letter, Symbol};

use super::Saa;

/// Turns a partitioned automaton on `n` tapes into a deterministic one on
/// `n + 1` tapes whose projection away from the new tape 0 is the original
/// relation. Tape 0 spells the non-deterministic choices with fresh letters
/// `@1, @2, …`.
///
/// 1. Each empty move `r1 → r2` is replaced by a new tape-0 state that
///    receives copies of every arrow into `r1` and reads a fresh letter into
///    `r2`. Copied empty moves are processed in turn.
/// 2. Each accepting state `f` gets a tape-0 copy receiving the arrows into
///    `f`, which reads the end marker of tape 0 into a single new accepting
///    state. An accepting state with no outgoing arrows is moved to tape 0
///    instead of copied.
/// 3. Each bundle of equally labelled arrows leaving one state is routed
///    through a new tape-0 state that picks the target with fresh letters.
/// 4. Several start states are replaced by a new tape-0 start state that
///    picks one of them with fresh letters.
///
/// Arrows are processed in order of (source name, label, target name).
pub fn bridge(m: &Saa) -> SemiSortedAsync {
    let base = m.alphabet().len() as u32;
    let mut fresh = 0u32;
    let mut next_letter = || {
        fresh += 1;
        Some(Symbol::Letter(Letter(base + fresh - 1)))
    };
    let mut nfa: Nfa<Symbol> = m.nfa().clone();
    let mut class: Vec<usize> = m.classes().iter().map(|c| c + 1).collect();
    let add_state = |nfa: &mut Nfa<Symbol>, class: &mut Vec<usize>, name: String| {
        class.push(0);
        nfa.add_state(name)
    };
    let by_name = |nfa: &Nfa<Symbol>, a: &usize, b: &usize| nfa.name(*a).cmp(nfa.name(*b));

    // stage 1: empty moves
    let mut eps: Vec<(usize, usize)> = nfa
        .arrows()
        .filter(|(_, l, _)| l.is_none())
        .map(|(s, _, t)| (s, t))
        .collect();
    eps.sort_by(|a, b| by_name(&nfa, &a.0, &b.0).then(by_name(&nfa, &a.1, &b.1)));
    let mut work: VecDeque<(usize, usize)> = eps.into();
    let mut eps_count = 0;
    while let Some((r1, r2)) = work.pop_front() {
        if !nfa.remove_arrow(r1, &None, r2) || r1 == r2 {
            continue;
        }
        eps_count += 1;
        let s = add_state(&mut nfa, &mut class, format!("[eps:{eps_count}]"));
        let mut incoming: Vec<(usize, Option<Symbol>)> = nfa
            .arrows()
            .filter(|(_, _, t)| *t == r1)
            .map(|(q, l, _)| (q, *l))
            .collect();
        incoming.sort_by(|a, b| by_name(&nfa, &a.0, &b.0).then(a.1.cmp(&b.1)));
        for (q, l) in incoming {
            nfa.add_arrow(q, l, s);
            if l.is_none() {
                work.push_back((q, s));
            }
        }
        nfa.add_arrow(s, next_letter(), r2);
        if nfa.is_start(r1) {
            nfa.set_start(s);
        }
        nfa.set_accept(s, nfa.is_accept(r1));
    }

    // stage 2: read the end marker of the new tape before accepting
    let mut finals: Vec<usize> = nfa.accepting().collect();
    finals.sort_by(|a, b| by_name(&nfa, a, b));
    if !finals.is_empty() {
        let acc = add_state(&mut nfa, &mut class, "[accept]".to_string());
        for f in finals {
            if nfa.arrows_from(f).is_empty() {
                // nothing leaves f, so it can read the end marker itself
                class[f] = 0;
                nfa.add_arrow(f, Some(Symbol::Pad), acc);
                nfa.set_accept(f, false);
                continue;
            }
            let name = format!("[end:{}]", nfa.name(f));
            let end = add_state(&mut nfa, &mut class, name);
            let incoming: Vec<(usize, Option<Symbol>)> = nfa
                .arrows()
                .filter(|(_, _, t)| *t == f)
                .map(|(q, l, _)| (q, *l))
                .collect();
            for (q, l) in incoming {
                nfa.add_arrow(q, l, end);
            }
            if nfa.is_start(f) {
                nfa.set_start(end);
            }
            nfa.add_arrow(end, Some(Symbol::Pad), acc);
            nfa.set_accept(f, false);
        }
        nfa.set_accept(acc, true);
    }

    // stage 3: bundles of equally labelled arrows
    let mut states: Vec<usize> = (0..nfa.num_states()).collect();
    states.sort_by(|a, b| by_name(&nfa, a, b));
    let mut dup_count = 0;
    for s in states {
        let arrows = nfa.arrows_from(s).to_vec();
        let mut i = 0;
        while i < arrows.len() {
            let label = arrows[i].0;
            let j = i + arrows[i..].iter().take_while(|(l, _)| *l == label).count();
            if j - i >= 2 {
                let mut targets: Vec<usize> = arrows[i..j].iter().map(|(_, t)| *t).collect();
                targets.sort_by(|a, b| by_name(&nfa, a, b));
                dup_count += 1;
                let pick = add_state(&mut nfa, &mut class, format!("[dup:{dup_count}]"));
                for &t in &targets {
                    nfa.remove_arrow(s, &label, t);
                    nfa.add_arrow(pick, next_letter(), t);
                }
                nfa.add_arrow(s, label, pick);
            }
            i = j;
        }
    }

    // stage 4: a single start state
    let mut starts = nfa.starts().to_vec();
    if starts.len() != 1 {
        starts.sort_by(|a, b| by_name(&nfa, a, b));
        let start = add_state(&mut nfa, &mut class, "[start]".to_string());
        for &s in &starts {
            nfa.add_arrow(start, next_letter(), s);
        }
        nfa.clear_starts();
        nfa.set_start(start);
    }

    let (alphabet, _) = m.alphabet().with_generated(fresh as usize);
    SemiSortedAsync::new(m.tapes() + 1, alphabet, nfa, class)
        .expect("the construction is partial deterministic")
}
