//! Deterministic asynchronous automata.
//!
//! Both formulations read one tape at a time: every state belongs to a tape
//! class and reads the next symbol of that tape, a letter or the tape's
//! single end marker. A run ends once every tape, end marker included, has
//! been consumed.

mod bounded;
mod closure;
mod semisorted;
mod sorted;

pub use bounded::{is_bounded, Boundedness};
pub use closure::{complement_sorted, exists_two_tape, forall_two_tape, section};
pub use semisorted::SemiSortedAsync;
pub(crate) use semisorted::validate_classes;
pub use sorted::{semisorted_to_sorted, sorted_to_semisorted, Sort, SortedAsync};

use crate::nfa::Nfa;
use crate::words::{Symbol, WordTuple};

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Accepted,
    /// No arrow for the symbol under the head, or the state's tape is spent.
    Stuck,
    /// Every tape was consumed but the last state does not accept.
    NotAccepting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub state: usize,
    pub tape: usize,
    pub symbol: Symbol,
}

/// The unique run of a deterministic asynchronous machine on a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub last_state: usize,
    pub status: RunStatus,
}

impl RunTrace {
    pub fn accepted(&self) -> bool {
        self.status == RunStatus::Accepted
    }
}

/// Runs a partial-deterministic machine. `tape_of` gives the tape a state
/// reads from, or `None` for states that cannot read.
pub(crate) fn simulate(
    nfa: &Nfa<Symbol>,
    tape_of: impl Fn(usize) -> Option<usize>,
    tuple: &WordTuple,
) -> RunTrace {
    let words = tuple.components();
    // pos[i] == len + 1 once the end marker of tape i is consumed
    let mut pos = vec![0usize; words.len()];
    let mut steps = Vec::new();
    let Some(&start) = nfa.starts().first() else {
        return RunTrace {
            steps,
            last_state: usize::MAX,
            status: RunStatus::Stuck,
        };
    };
    let mut state = start;
    loop {
        if pos.iter().zip(words).all(|(&p, w)| p == w.len() + 1) {
            let status = if nfa.is_accept(state) {
                RunStatus::Accepted
            } else {
                RunStatus::NotAccepting
            };
            return RunTrace {
                steps,
                last_state: state,
                status,
            };
        }
        let stuck = |steps| RunTrace {
            steps,
            last_state: state,
            status: RunStatus::Stuck,
        };
        let Some(tape) = tape_of(state) else {
            return stuck(steps);
        };
        if pos[tape] > words[tape].len() {
            return stuck(steps);
        }
        let symbol = Symbol::at(&words[tape], pos[tape]);
        let Some(next) = nfa.successor(state, &symbol) else {
            return stuck(steps);
        };
        steps.push(TraceStep {
            state,
            tape,
            symbol,
        });
        pos[tape] += 1;
        state = next;
    }
}
