//! Exact counting, q-series expansion, executable injections and finite-range
//! verification for Alder-type partition inequalities.
//!
//! The central objects are the gap-restricted counts `q_d^(a)(n)` (parts at
//! least `a`, consecutive parts differing by at least `d`) and the residue
//! counts `Q_d^(a)(n)` (parts congruent to `±a` modulo `d + 3`), together
//! with the variants that drop the part `d + 3 - a` (and additionally `a`).

pub mod asymptotics;
pub mod cache;
pub mod cli;
pub mod error;
pub mod injections;
pub mod partition;
pub mod qseries;
pub mod range;
mod decimal;
pub mod verifier;

pub use error::{Error, Result};
pub use partition::{
    count_g, count_gap, count_residue, delta, enumerate_partitions, CountingFn, DeltaVariant,
    GapSpec, PartFilter, PartSetSpec, Partition,
};
pub use qseries::TruncatedSeries;
