//! Experiment harness, file formats and command-line front end for
//! `sortlab-core`.
//!
//! [`experiment::run_experiment`] draws seeded uniform permutations for every
//! `(algorithm, n)` cell, aggregates exact operation counts, and fits
//! log-log exponents across the grid. [`report`] turns the result into CSV,
//! JSON and plot data; [`io`] reads permutations and writes traces.

pub mod error;
pub mod experiment;
pub mod fit;
pub mod grid;
pub mod io;
pub mod report;
pub mod verify;

pub use error::{LabError, Result};
pub use experiment::{run_experiment, Algorithm, ExperimentSpec, Family, Metric};
pub use fit::{fit_exponent, ExponentFit};
pub use report::ExperimentReport;
