use std::fmt;
use std::str::FromStr;

use super::{glaisher_mod, phi_d2, phi_s_to_t5, verify_injection, InjectionReport};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions_with_ceiling, GapSpec, PartSetSpec, Partition};

/// Exhaustive injectivity checks over all small domain elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectionSuite {
    /// All `S_d` partitions of `n_lo..=n_hi` into `T_{5,d}` partitions.
    SToT5 { d: u64, n_lo: u64, n_hi: u64 },
    /// All odd-parts-`>= 3` partitions of `n <= n_max` into distinct parts `>= 3`.
    Glaisher { n_max: u64 },
    /// All `q_2^(2)` partitions of `m <= m_max` containing a 2, dropping that 2.
    PhiD2 { m_max: u64 },
}

impl InjectionSuite {
    pub fn name(&self) -> &'static str {
        match self {
            InjectionSuite::SToT5 { .. } => "phi_s_to_t5",
            InjectionSuite::Glaisher { .. } => "glaisher_mod",
            InjectionSuite::PhiD2 { .. } => "phi_d2",
        }
    }

    pub fn domain(&self) -> Result<Vec<Partition>> {
        let collect = |lo: u64, hi: u64, filter: &dyn crate::partition::PartFilter| -> Result<Vec<Partition>> {
            let mut out = Vec::new();
            for n in lo..=hi {
                out.extend(enumerate_partitions_with_ceiling(n, filter, hi.max(1))?);
            }
            Ok(out)
        };
        match *self {
            InjectionSuite::SToT5 { d, n_lo, n_hi } => collect(n_lo, n_hi, &PartSetSpec::s_set(d)?),
            InjectionSuite::Glaisher { n_max } => collect(0, n_max, &PartSetSpec::odd_parts().excluding([1])),
            InjectionSuite::PhiD2 { m_max } => Ok(collect(0, m_max, &GapSpec::new(2, 2)?)?
                .into_iter()
                .filter(|p| p.smallest() == Some(2))
                .collect()),
        }
    }

    pub fn run(&self) -> Result<InjectionReport> {
        let domain = self.domain()?;
        Ok(match *self {
            InjectionSuite::SToT5 { d, .. } => {
                let t = PartSetSpec::andrews_t(5, d)?;
                verify_injection(&domain, |p| Ok(phi_s_to_t5(p, d)?.partition), |img| img.satisfies(&t), 0)
            }
            InjectionSuite::Glaisher { .. } => {
                let codomain = GapSpec::new(3, 1)?;
                verify_injection(&domain, glaisher_mod, |img| img.satisfies(&codomain), 0)
            }
            InjectionSuite::PhiD2 { .. } => {
                let codomain = GapSpec::new(2, 2)?;
                verify_injection(&domain, phi_d2, |img| img.satisfies(&codomain), -2)
            }
        })
    }
}

impl fmt::Display for InjectionSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name with default bounds; use the variants directly for others.
impl FromStr for InjectionSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi_s_to_t5" => Ok(InjectionSuite::SToT5 { d: 31, n_lo: 156, n_hi: 170 }),
            "glaisher_mod" => Ok(InjectionSuite::Glaisher { n_max: 40 }),
            "phi_d2" => Ok(InjectionSuite::PhiD2 { m_max: 120 }),
            _ => Err(Error::Parse(format!("unknown injection suite `{s}`; expected phi_s_to_t5, glaisher_mod or phi_d2"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [
            InjectionSuite::SToT5 { d: 31, n_lo: 33, n_hi: 100 },
            InjectionSuite::Glaisher { n_max: 25 },
            InjectionSuite::PhiD2 { m_max: 50 },
        ] {
            let r = suite.run().unwrap();
            assert!(r.passed(), "{suite}: {:?}", r.failures);
            assert!(r.domain_size > 0);
        }
    }
}
