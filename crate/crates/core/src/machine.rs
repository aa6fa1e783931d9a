//! Any of the machine models, as loaded from a machine file.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nondet::{Faa, Saa};
use crate::quasi::{SemiSortedAsync, SortedAsync};
use crate::sync::SyncAutomaton;
use crate::words::{Alphabet, WordTuple};

/// The `kind:` of a machine file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// A synchronous automaton over padded tuples.
    Sync,
    /// A one-tape synchronous automaton written with plain letters.
    Fsa,
    SemiSorted,
    Sorted,
    Faa,
    Saa,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Sync => "sync",
            Kind::Fsa => "fsa",
            Kind::SemiSorted => "semisorted",
            Kind::Sorted => "sorted",
            Kind::Faa => "faa",
            Kind::Saa => "saa",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "sync" => Kind::Sync,
            "fsa" => Kind::Fsa,
            "semisorted" => Kind::SemiSorted,
            "sorted" => Kind::Sorted,
            "faa" => Kind::Faa,
            "saa" => Kind::Saa,
            other => return Err(Error::InvalidMachine(format!("unknown kind `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Sync(SyncAutomaton),
    SemiSorted(SemiSortedAsync),
    Sorted(SortedAsync),
    Faa(Faa),
    Saa(Saa),
}

impl Machine {
    /// One-tape synchronous machines report [`Kind::Fsa`].
    pub fn kind(&self) -> Kind {
        match self {
            Machine::Sync(m) if m.tapes() == 1 => Kind::Fsa,
            Machine::Sync(_) => Kind::Sync,
            Machine::SemiSorted(_) => Kind::SemiSorted,
            Machine::Sorted(_) => Kind::Sorted,
            Machine::Faa(_) => Kind::Faa,
            Machine::Saa(_) => Kind::Saa,
        }
    }

    pub fn tapes(&self) -> usize {
        match self {
            Machine::Sync(m) => m.tapes(),
            Machine::SemiSorted(m) => m.tapes(),
            Machine::Sorted(m) => m.tapes(),
            Machine::Faa(m) => m.tapes(),
            Machine::Saa(m) => m.tapes(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Machine::Sync(m) => m.alphabet(),
            Machine::SemiSorted(m) => m.alphabet(),
            Machine::Sorted(m) => m.alphabet(),
            Machine::Faa(m) => m.alphabet(),
            Machine::Saa(m) => m.alphabet(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Machine::Sync(m) => m.num_states(),
            Machine::SemiSorted(m) => m.num_states(),
            Machine::Sorted(m) => m.num_states(),
            Machine::Faa(m) => m.num_states(),
            Machine::Saa(m) => m.num_states(),
        }
    }

    pub fn accepts(&self, tuple: &WordTuple) -> Result<bool> {
        match self {
            Machine::Sync(m) => m.accepts(tuple),
            Machine::SemiSorted(m) => m.accepts(tuple),
            Machine::Sorted(m) => m.accepts(tuple),
            Machine::Faa(m) => m.accepts(tuple),
            Machine::Saa(m) => m.accepts(tuple),
        }
    }
}

impl From<SyncAutomaton> for Machine {
    fn from(m: SyncAutomaton) -> Self {
        Machine::Sync(m)
    }
}

impl From<SemiSortedAsync> for Machine {
    fn from(m: SemiSortedAsync) -> Self {
        Machine::SemiSorted(m)
    }
}

impl From<SortedAsync> for Machine {
    fn from(m: SortedAsync) -> Self {
        Machine::Sorted(m)
    }
}

impl From<Faa> for Machine {
    fn from(m: Faa) -> Self {
        Machine::Faa(m)
    }
}

impl From<Saa> for Machine {
    fn from(m: Saa) -> Self {
        Machine::Saa(m)
    }
}
