//! Executable versions of the constructive injections, plus an exhaustive
//! checker for well-definedness and injectivity on enumerated domains.

mod andrews;
mod glaisher;
mod suites;
mod s_to_t5;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::partition::Partition;

pub use andrews::phi_mod_andrews;
pub use glaisher::{glaisher_mod, phi_d2};
pub use suites::InjectionSuite;
pub use s_to_t5::{phi_s_to_t5, InjectionCaseData, SplitCase, SToT5Image, S_TO_T5_MIN_D};

/// Multiplicities `p_i` of the parts of a strictly increasing base list.
/// Indices are zero-based: index 0 is the smallest base part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    base: Vec<u64>,
    mults: BTreeMap<usize, u64>,
}

impl MultiplicityVector {
    pub fn new(base: Vec<u64>, mults: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        if base.first() == Some(&0) || base.windows(2).any(|w| w[0] >= w[1]) {
            return domain("base parts must be positive and strictly increasing");
        }
        let mut map = BTreeMap::new();
        for (i, p) in mults {
            if i >= base.len() {
                return domain(format!("multiplicity index {i} is beyond the {} base parts", base.len()));
            }
            if p > 0 {
                *map.entry(i).or_insert(0) += p;
            }
        }
        Ok(MultiplicityVector { base, mults: map })
    }

    /// Expresses `partition` over `base`; every part must occur in `base`.
    pub fn from_partition(partition: &Partition, base: Vec<u64>) -> Result<Self> {
        let mut mults = Vec::new();
        for (part, count) in partition.multiplicities() {
            match base.binary_search(&part) {
                Ok(i) => mults.push((i, count)),
                Err(_) => return domain(format!("part {part} is not in the base part list")),
            }
        }
        Self::new(base, mults)
    }

    pub fn base_parts(&self) -> &[u64] {
        &self.base
    }

    pub fn multiplicity(&self, i: usize) -> u64 {
        self.mults.get(&i).copied().unwrap_or(0)
    }

    /// Nonzero `(index, multiplicity)` pairs in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.mults.iter().map(|(&i, &p)| (i, p))
    }

    pub fn weight(&self) -> u64 {
        self.nonzero().map(|(i, p)| p * self.base[i]).sum()
    }

    pub fn to_partition(&self) -> Partition {
        let parts = self
            .mults
            .iter()
            .rev()
            .flat_map(|(&i, &p)| std::iter::repeat(self.base[i]).take(p as usize))
            .collect();
        Partition::from_sorted(parts)
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_partition().fmt(f)
    }
}

pub trait Weighted {
    fn weight(&self) -> u64;
}

impl Weighted for Partition {
    fn weight(&self) -> u64 {
        Partition::weight(self)
    }
}

impl Weighted for MultiplicityVector {
    fn weight(&self) -> u64 {
        MultiplicityVector::weight(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InjectionFailure {
    MapFailed { input: String, error: String },
    OutsideCodomain { input: String, image: String },
    WeightShift { input: String, image: String, expected: i64, actual: i64 },
    Collision { first: String, second: String, image: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub domain_size: usize,
    pub distinct_images: usize,
    pub failures: Vec<InjectionFailure>,
}

impl InjectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Merges shard reports in the order given.
    pub fn merge(mut self, other: InjectionReport) -> InjectionReport {
        self.domain_size += other.domain_size;
        self.distinct_images += other.distinct_images;
        self.failures.extend(other.failures);
        self
    }
}

/// Applies `map` to every domain element and checks that each image lies in
/// the codomain, that `weight(image) - weight(input) == expected_shift`, and
/// that no two inputs share an image.
pub fn verify_injection<X, F, C>(domain: &[X], map: F, codomain: C, expected_shift: i64) -> InjectionReport
where
    X: Weighted + fmt::Display,
    F: Fn(&X) -> Result<Partition>,
    C: Fn(&Partition) -> bool,
{
    let mut failures = Vec::new();
    let mut seen: HashMap<Partition, usize> = HashMap::with_capacity(domain.len());
    for (idx, x) in domain.iter().enumerate() {
        let image = match map(x) {
            Ok(image) => image,
            Err(e) => {
                failures.push(InjectionFailure::MapFailed { input: x.to_string(), error: e.to_string() });
                continue;
            }
        };
        if !codomain(&image) {
            failures.push(InjectionFailure::OutsideCodomain { input: x.to_string(), image: image.to_string() });
        }
        let actual = image.weight() as i64 - x.weight() as i64;
        if actual != expected_shift {
            failures.push(InjectionFailure::WeightShift {
                input: x.to_string(),
                image: image.to_string(),
                expected: expected_shift,
                actual,
            });
        }
        if let Some(&prev) = seen.get(&image) {
            failures.push(InjectionFailure::Collision {
                first: domain[prev].to_string(),
                second: x.to_string(),
                image: image.to_string(),
            });
        } else {
            seen.insert(image, idx);
        }
    }
    InjectionReport { domain_size: domain.len(), distinct_images: seen.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_vector_weight_and_partition() {
        let mv = MultiplicityVector::new(vec![1, 4, 6], [(0, 2), (2, 1)]).unwrap();
        assert_eq!(mv.weight(), 8);
        assert_eq!(mv.to_partition().parts(), &[6, 1, 1]);
        let back = MultiplicityVector::from_partition(&mv.to_partition(), vec![1, 4, 6]).unwrap();
        assert_eq!(back, mv);
        assert!(MultiplicityVector::new(vec![2, 2], []).is_err());
        assert!(MultiplicityVector::new(vec![2, 3], [(2, 1)]).is_err());
        assert!(MultiplicityVector::from_partition(&Partition::new(vec![5]).unwrap(), vec![1, 4]).is_err());
    }

    #[test]
    fn empty_domain_passes() {
        let report = verify_injection::<Partition, _, _>(&[], |p| Ok(p.clone()), |_| false, 3);
        assert!(report.passed());
        assert_eq!(report.domain_size, 0);
    }

    #[test]
    fn collision_is_pinpointed() {
        let domain = vec![Partition::new(vec![3, 1]).unwrap(), Partition::new(vec![2, 2]).unwrap()];
        let report = verify_injection(&domain, |_| Ok(Partition::new(vec![4]).unwrap()), |_| true, 0);
        assert_eq!(
            report.failures,
            vec![InjectionFailure::Collision { first: "(3,1)".into(), second: "(2,2)".into(), image: "(4)".into() }]
        );
    }

    #[test]
    fn weight_and_codomain_failures_reported() {
        let domain = vec![Partition::new(vec![3]).unwrap()];
        let report = verify_injection(&domain, |_| Ok(Partition::new(vec![5]).unwrap()), |p| p.len() == 2, 1);
        assert_eq!(report.failures.len(), 2);
    }
}
