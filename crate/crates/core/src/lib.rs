//! Instrumented sorting procedures with exact operation counters.
//!
//! The crate covers p-pass Shellsort (with full per-element, per-pass
//! inversion traces and a decoder that rebuilds the input from a trace),
//! Bubble Sort, sequential and parallel stack/queue sorting networks, and
//! numeric solvers for the bit-budget lower bounds that go with them.
//!
//! Everything here is `no_std` and only needs `alloc`. IO, file formats and
//! the experiment harness live in the `sortlab` crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod elementary;
mod error;
pub mod increments;
pub mod networks;
pub mod oracle;
pub mod perm;
pub mod shellsort;

pub use error::{Error, Result, SequenceRule};
pub use increments::IncrementSequence;
pub use perm::{Permutation, Seed};
pub use shellsort::{PassTrace, SortStats};

/// Largest `n` for which the 64-bit counters are guaranteed not to overflow
/// with up to `log² n` passes.
pub const MAX_N: usize = 1 << 21;
