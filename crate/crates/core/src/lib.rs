//! Multi-tape finite automata.
//!
//! Relations between words are recognised by machines with several input
//! tapes. This crate implements three families of them:
//!
//! - [`sync`]: synchronous machines reading all tapes in lockstep over a
//!   padded alphabet (regular relations), with boolean operations,
//!   projection, emptiness, equivalence and pumping;
//! - [`quasi`]: deterministic asynchronous machines, in semi-sorted and
//!   sorted form, with conversions, complement, two-tape quantifier
//!   elimination and boundedness analysis;
//! - [`nondet`]: non-deterministic asynchronous machines (filter automata
//!   and partitioned automata) with their conversions, union, projection
//!   and the construction that turns one into a deterministic machine with
//!   an extra tape.
//!
//! On top of these, [`group`] checks whether a word acceptor and a family
//! of multiplier machines can be an asynchronous automatic structure for a
//! group, and [`oracle`] provides naive reference implementations of every
//! acceptance relation for differential testing.
//!
//! [`machine::Machine`] wraps every model behind one interface, and
//! [`format`] reads and writes the line-based machine and bundle files.

pub mod error;
pub mod format;
pub mod group;
pub mod machine;
pub mod nfa;
pub mod nondet;
pub mod oracle;
pub mod quasi;
pub mod sync;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Letter, PaddedString, PaddedSymbol, Symbol, TapeSet, Word, WordTuple};
