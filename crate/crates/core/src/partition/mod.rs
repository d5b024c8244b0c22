//! Partitions, part-set descriptions and exact counting.
//!
//! Every count here is computed two ways: a DP counter in [`count`] and the
//! brute-force enumerator in [`enumerate`], which acts as the oracle for the
//! rest of the crate.

mod count;
mod enumerate;
mod parts;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

pub use count::{
    count_g, count_gap, count_residue, delta, delta_counts, g_counts, gap_counts, residue_counts,
    schur_counts, CountingFn,
};
pub use enumerate::{
    count_by_enumeration, enumerate_partitions, enumerate_partitions_with_ceiling,
    DEFAULT_ORACLE_CEILING,
};
pub use parts::{DeltaVariant, PartSetSpec};

/// A partition in canonical (weakly decreasing) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Caller guarantees `parts` is already weakly decreasing and positive.
    pub(crate) fn from_sorted(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    /// Part value to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn satisfies(&self, filter: &dyn PartFilter) -> bool {
        self.parts.iter().all(|&p| filter.admits_part(p))
            && self.parts.windows(2).all(|w| filter.admits_pair(w[0], w[1]))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Local constraints that decide membership of a partition: every part must
/// be admitted, and every adjacent pair (larger first) must be admitted.
pub trait PartFilter: Sync {
    fn admits_part(&self, part: u64) -> bool;
    fn admits_pair(&self, larger: u64, smaller: u64) -> bool;
}

/// Smallest part at least `min_part`, consecutive parts at least `min_gap` apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GapSpec {
    pub min_part: u64,
    pub min_gap: u64,
}

impl GapSpec {
    pub fn new(min_part: u64, min_gap: u64) -> Result<Self> {
        if min_part == 0 {
            return domain("GapSpec min_part must be at least 1");
        }
        Ok(GapSpec { min_part, min_gap })
    }
}

impl PartFilter for GapSpec {
    fn admits_part(&self, part: u64) -> bool {
        part >= self.min_part
    }

    fn admits_pair(&self, larger: u64, smaller: u64) -> bool {
        larger - smaller >= self.min_gap
    }
}

/// Schur's side condition: gaps at least 3, and a gap of exactly 3 is not
/// allowed between two multiples of 3.
#[derive(Debug, Clone, Copy, Default)]
pub struct SchurFilter;

impl PartFilter for SchurFilter {
    fn admits_part(&self, _part: u64) -> bool {
        true
    }

    fn admits_pair(&self, larger: u64, smaller: u64) -> bool {
        let gap = larger - smaller;
        gap > 3 || (gap == 3 && smaller % 3 != 0)
    }
}

/// `(h, ceil)` with `h` the least nonnegative residue of `-x` mod `a`, so
/// that `(x + h) / a == ceil(x / a)`.
pub fn residue_helpers(x: u64, a: u64) -> (u64, u64) {
    assert!(a > 0, "modulus must be positive");
    let h = (a - x % a) % a;
    (h, (x + h) / a)
}

/// Largest `r >= 1` with `2^r - 1 <= d`.
pub fn r_index(d: u64) -> Result<u32> {
    if d == 0 {
        return domain("r_index requires d >= 1");
    }
    Ok(largest_power_index(d))
}

/// Largest `r >= 0` with `2^r - 1 <= ceil(d / a)`.
pub fn r_index_a(d: u64, a: u64) -> Result<u32> {
    if a == 0 {
        return domain("r_index_a requires a >= 1");
    }
    Ok(largest_power_index(residue_helpers(d, a).1))
}

fn largest_power_index(bound: u64) -> u32 {
    // 2^r - 1 <= bound  <=>  2^r <= bound + 1
    63 - (bound + 1).leading_zeros()
}
