//! Non-deterministic asynchronous automata.
//!
//! Filter automata ([`Faa`]) look at every head at once and advance a chosen
//! set of tapes; partitioned automata ([`Saa`]) read one tape per step,
//! chosen by the class of the current state. Both recognise the same
//! relations, and [`bridge`] turns a partitioned automaton into a
//! deterministic one with an extra tape recording its choices.

mod bridge;
mod convert;
mod faa;
mod saa;

pub use bridge::bridge;
pub use convert::{dfaa_to_saa, faa_to_dfaa, saa_to_dfaa};
pub use faa::{Dfaa, Faa, FaaEntry, Filter};
pub use saa::{exists_saa, to_saa_exists, union_saa, Saa};
