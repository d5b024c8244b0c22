//! DP counters. `gap_counts` uses the staircase transform: a `k`-part gap
//! partition minus the staircase `d·C(k,2) + k·a` is an unrestricted
//! partition into at most `k` parts. Residue counts are a bounded coin DP
//! over allowed parts, with 0/1 updates for distinct classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{GapSpec, PartFilter, PartSetSpec, DeltaVariant};
use crate::error::{domain, Error, Result};

/// `q_d^(a)(m)` for `m = 0..=n_max`.
pub fn gap_counts(d: u64, a: u64, n_max: usize) -> Result<Vec<BigUint>> {
    if a == 0 {
        return domain("q_d^(a) needs a >= 1");
    }
    let n_max_w = n_max as u128;
    let mut total = vec![BigUint::zero(); n_max + 1];
    // at_most[m] = partitions of m into at most k parts, for the current k.
    let mut at_most = vec![BigUint::zero(); n_max + 1];
    at_most[0] = BigUint::one();
    for k in 0u128.. {
        let staircase = d as u128 * (k * k.saturating_sub(1) / 2) + k * a as u128;
        if staircase > n_max_w {
            break;
        }
        if k > 0 {
            let k = k as usize;
            for m in k..=n_max {
                let (lo, hi) = at_most.split_at_mut(m);
                hi[0] += &lo[m - k];
            }
        }
        let shift = staircase as usize;
        for m in shift..=n_max {
            total[m] += &at_most[m - shift];
        }
    }
    Ok(total)
}

/// `q_d^(a)(n)`: partitions of `n` with parts `>= a` differing by `>= d`.
pub fn count_gap(n: u64, d: u64, a: u64) -> Result<BigUint> {
    Ok(gap_counts(d, a, n as usize)?.swap_remove(n as usize))
}

/// `ρ(R; m)` for `m = 0..=n_max`, with `R` described by `spec`.
pub fn residue_counts(spec: &PartSetSpec, n_max: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); n_max + 1];
    c[0] = BigUint::one();
    for part in spec.elements_up_to(n_max as u64) {
        let p = part as usize;
        if spec.is_distinct(part) {
            for m in (p..=n_max).rev() {
                let (lo, hi) = c.split_at_mut(m);
                hi[0] += &lo[m - p];
            }
        } else {
            for m in p..=n_max {
                let (lo, hi) = c.split_at_mut(m);
                hi[0] += &lo[m - p];
            }
        }
    }
    c
}

pub fn count_residue(n: u64, spec: &PartSetSpec) -> BigUint {
    residue_counts(spec, n as usize).swap_remove(n as usize)
}

/// `G_d^(1)(m)` for `m = 0..=n_max`.
pub fn g_counts(d: u64, n_max: usize) -> Result<Vec<BigUint>> {
    Ok(residue_counts(&PartSetSpec::yee_g(d)?, n_max))
}

pub fn count_g(n: u64, d: u64) -> Result<BigUint> {
    Ok(g_counts(d, n as usize)?.swap_remove(n as usize))
}

/// Schur partitions: gaps `>= 3`, and no two parts that are consecutive
/// multiples of 3. DP over the largest part.
pub fn schur_counts(n_max: usize) -> Vec<BigUint> {
    // exact[m][l]: largest part exactly l; upto[m][l]: largest part <= l.
    let mut exact: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    let mut upto: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    exact.push(vec![BigUint::zero()]);
    upto.push(vec![BigUint::one()]);
    for m in 1..=n_max {
        let mut ex = vec![BigUint::zero(); m + 1];
        let mut up = vec![BigUint::zero(); m + 1];
        for l in 1..=m {
            let rest = m - l;
            let mut v = if rest == 0 { BigUint::one() } else { BigUint::zero() };
            if rest > 0 && l > 3 {
                let cap = (l - 3).min(rest);
                v += &upto[rest][cap];
                if l % 3 == 0 && l - 3 <= rest {
                    v -= &exact[rest][l - 3];
                }
            }
            up[l] = &up[l - 1] + &v;
            ex[l] = v;
        }
        exact.push(ex);
        upto.push(up);
    }
    upto.into_iter().map(|mut row| row.pop().expect("row nonempty")).collect()
}

/// `Δ(n) = q_d^(a)(n) - Q(n)` for the chosen residue variant.
pub fn delta(n: u64, d: u64, a: u64, variant: DeltaVariant) -> Result<BigInt> {
    Ok(delta_counts(d, a, variant, n as usize)?.swap_remove(n as usize))
}

pub fn delta_counts(d: u64, a: u64, variant: DeltaVariant, n_max: usize) -> Result<Vec<BigInt>> {
    if a == 0 {
        return domain("Δ needs a >= 1");
    }
    let spec = variant.part_set(d, a)?;
    let q = gap_counts(d, a, n_max)?;
    let r = residue_counts(&spec, n_max);
    Ok(q.into_iter().zip(r).map(|(l, r)| BigInt::from(l) - BigInt::from(r)).collect())
}

/// A counting function addressable from the command line and the cache.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CountingFn {
    /// `q_d^(a)`.
    Gap { d: u64, a: u64 },
    /// `Q_d^(a)`, `Q_d^(a,-)` or `Q_d^(a,-,-)`.
    Residue { variant: DeltaVariant, d: u64, a: u64 },
    /// `ρ(T^l_{a,d}; n)`; `classes` is the `a` of `T^l_{a,d}`.
    ScaledT { d: u64, classes: u64, scale: u64 },
    /// Yee's `G_d^(1)`.
    YeeG { d: u64 },
    /// `ρ(R; n)` for an arbitrary part set.
    Parts(PartSetSpec),
}

impl CountingFn {
    /// The allowed-part set, for everything except `q`.
    pub fn part_set(&self) -> Result<Option<PartSetSpec>> {
        Ok(match self {
            CountingFn::Gap { .. } => None,
            CountingFn::Residue { variant, d, a } => Some(variant.part_set(*d, *a)?),
            CountingFn::ScaledT { d, classes, scale } => Some(PartSetSpec::scaled_t(*scale, *classes, *d)?),
            CountingFn::YeeG { d } => Some(PartSetSpec::yee_g(*d)?),
            CountingFn::Parts(spec) => Some(spec.clone()),
        })
    }

    /// Exact values for `n = 0..=n_max` from the DP counters.
    pub fn table(&self, n_max: usize) -> Result<Vec<BigUint>> {
        match self {
            CountingFn::Gap { d, a } => gap_counts(*d, *a, n_max),
            other => Ok(residue_counts(&other.part_set()?.expect("residue-type function"), n_max)),
        }
    }

    pub fn count(&self, n: u64) -> Result<BigUint> {
        Ok(self.table(n as usize)?.swap_remove(n as usize))
    }

    /// The membership filter used by the brute-force oracle.
    pub fn filter(&self) -> Result<Box<dyn PartFilter>> {
        Ok(match self {
            CountingFn::Gap { d, a } => Box::new(GapSpec::new(*a, *d)?),
            other => Box::new(other.part_set()?.expect("residue-type function")),
        })
    }
}

impl fmt::Display for CountingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingFn::Gap { d, a } => write!(f, "q:d={d},a={a}"),
            CountingFn::Residue { variant, d, a } => write!(f, "{}:d={d},a={a}", variant.name()),
            CountingFn::ScaledT { d, classes, scale } => write!(f, "rho:d={d},a={classes},l={scale}"),
            CountingFn::YeeG { d } => write!(f, "G:d={d}"),
            CountingFn::Parts(spec) => write!(f, "parts:{spec}"),
        }
    }
}

/// Parses the forms produced by `Display`, e.g. `q:d=10,a=1`, `Qminus:d=28,a=1`,
/// `rho:d=31,a=5` (`l` defaults to 1), `G:d=31`, `parts:m=5;r=1,4;x=;u=`.
impl FromStr for CountingFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        if name == "parts" {
            return Ok(CountingFn::Parts(args.parse()?));
        }
        let mut kv = BTreeMap::new();
        for item in args.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in `{item}`")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{}` is not a nonnegative integer", v.trim())))?;
            kv.insert(k.trim().to_string(), v);
        }
        let get = |key: &str| {
            kv.get(key).copied().ok_or_else(|| {
                Error::Parse(format!("counting function `{name}` needs `{key}=<value>`"))
            })
        };
        let variant = |v| -> Result<CountingFn> { Ok(CountingFn::Residue { variant: v, d: get("d")?, a: get("a")? }) };
        match name {
            "q" => Ok(CountingFn::Gap { d: get("d")?, a: get("a")? }),
            "Q" => variant(DeltaVariant::Plain),
            "Qminus" => variant(DeltaVariant::Minus),
            "Qminusminus" => variant(DeltaVariant::MinusMinus),
            "rho" => Ok(CountingFn::ScaledT {
                d: get("d")?,
                classes: get("a")?,
                scale: kv.get("l").copied().unwrap_or(1),
            }),
            "G" => Ok(CountingFn::YeeG { d: get("d")? }),
            other => Err(Error::Parse(format!(
                "unknown counting function `{other}` (expected q, Q, Qminus, Qminusminus, rho, G or parts)"
            ))),
        }
    }
}
