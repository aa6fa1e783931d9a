use crate::nfa::Nfa;
use crate::words::Symbol;

/// Whether a machine ever reads more than a fixed number of letters in a
/// row from one tape, and the largest such number when it does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundedness {
    Bounded(usize),
    Unbounded,
}

impl Boundedness {
    pub fn is_bounded(self) -> bool {
        matches!(self, Boundedness::Bounded(_))
    }

    pub fn bound(self) -> Option<usize> {
        match self {
            Boundedness::Bounded(k) => Some(k),
            Boundedness::Unbounded => None,
        }
    }
}

/// Analyses the useful part of a machine (reachable and able to accept).
/// A letter cycle inside one tape class makes it unbounded; otherwise the
/// bound is the longest letter path whose arrows all leave states of a
/// single class.
pub fn is_bounded(nfa: &Nfa<Symbol>, class: impl Fn(usize) -> Option<usize>) -> Boundedness {
    let n = nfa.num_states();
    let reach = nfa.reachable();
    let coreach = nfa.coreachable();
    let live: Vec<bool> = (0..n).map(|s| reach[s] && coreach[s]).collect();
    // same-class letter arrows between live states
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            if !live[s] {
                return Vec::new();
            }
            nfa.arrows_from(s)
                .iter()
                .filter(|(l, t)| matches!(l, Some(Symbol::Letter(_))) && live[*t])
                .map(|(_, t)| *t)
                .collect()
        })
        .collect();
    // longest[s] = most letters read in a row starting at s, reading from
    // class(s); the last arrow may land in another class.
    let mut longest: Vec<Option<usize>> = vec![None; n];
    let mut on_stack = vec![false; n];
    fn visit(
        s: usize,
        edges: &[Vec<usize>],
        class: &dyn Fn(usize) -> Option<usize>,
        longest: &mut [Option<usize>],
        on_stack: &mut [bool],
    ) -> Option<usize> {
        if let Some(k) = longest[s] {
            return Some(k);
        }
        on_stack[s] = true;
        let mut best = 0;
        for &t in &edges[s] {
            let len = if class(t) == class(s) {
                if on_stack[t] {
                    return None;
                }
                1 + visit(t, edges, class, longest, on_stack)?
            } else {
                1
            };
            best = best.max(len);
        }
        on_stack[s] = false;
        longest[s] = Some(best);
        Some(best)
    }
    let mut bound = 0;
    for s in (0..n).filter(|&s| live[s] && class(s).is_some()) {
        match visit(s, &edges, &class, &mut longest, &mut on_stack) {
            Some(k) => bound = bound.max(k),
            None => return Boundedness::Unbounded,
        }
    }
    Boundedness::Bounded(bound)
}

impl super::SemiSortedAsync {
    pub fn boundedness(&self) -> Boundedness {
        is_bounded(self.nfa(), |s| Some(self.class(s)))
    }
}

impl super::SortedAsync {
    pub fn boundedness(&self) -> Boundedness {
        is_bounded(self.nfa(), |s| self.sort(s).tape())
    }
}
