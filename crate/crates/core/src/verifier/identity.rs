use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};

use super::{VerificationReport, Violation};
use crate::error::{domain, Error, Result};
use crate::partition::{
    count_by_enumeration, delta_counts, gap_counts, residue_counts, schur_counts, DeltaVariant, PartSetSpec,
    SchurFilter,
};
use crate::qseries::{gap_sum_series, product_series, TruncatedSeries};

/// Largest `n` for which Schur counts are also cross-checked by enumeration.
pub const SCHUR_ENUMERATION_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    /// Distinct parts vs odd parts.
    Euler,
    /// `q_2^(1) = Q_2^(1)`, also against the sum side.
    Rr1,
    /// `q_2^(2) = Q_2^(2)`, also against the sum side.
    Rr2,
    /// Schur's gap-3 partitions vs parts `≡ ±1 (mod 6)`.
    Schur,
    /// `ρ(odd parts >= 3) <= q_1^(3)`.
    GlaisherConsistency,
    /// `q_d^(1)` and `Q_{d-3}^(1,-)` are weakly increasing.
    Monotonicity,
    /// `Δ^(a,-,-) >= Δ^(a,-) >= Δ^(a)` on a grid.
    DeltaChain,
    /// `Q_d^(a,-)(a n) = Q_{(d+3)/a-3}^(1,-)(n)` when `a | d+3`, and the `-,-` analogue.
    Scaling,
    /// `(1 - q^2) Σ q_2^(2)(n) q^n = Σ Q_2^(3,-)(n) q^n`.
    D2Series,
    /// Interval bounds on `q_k^(1)` and `ρ(T^1_{a,k})` over `2k+6 <= m <= 5k+1`.
    IntervalBounds { a: u64, k: u64 },
    /// `Q_{d-3}^(1,-)` at `2d-2, 4d-1, 5d` is `2, 12, 26`; `q_d^(1)(2d-1) >= 16`, `q_d^(1)(4d) >= 47`.
    BoundaryCountsMinus3 { d: u64 },
    /// `Q_{d-4}^(1,-)` at `2d-4, 3d-5, 4d-6, 5d-8, 5d` is `2, 5, 11, 20, 36`.
    BoundaryCountsMinus4 { d: u64 },
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Euler => "euler",
            IdentityId::Rr1 => "rr1",
            IdentityId::Rr2 => "rr2",
            IdentityId::Schur => "schur",
            IdentityId::GlaisherConsistency => "glaisher_consistency",
            IdentityId::Monotonicity => "monotonicity",
            IdentityId::DeltaChain => "delta_chain",
            IdentityId::Scaling => "scaling",
            IdentityId::D2Series => "d2_series",
            IdentityId::IntervalBounds { .. } => "interval_bounds",
            IdentityId::BoundaryCountsMinus3 { .. } => "boundary_counts_minus3",
            IdentityId::BoundaryCountsMinus4 { .. } => "boundary_counts_minus4",
        }
    }

    /// Parses a name, taking `d`, `a`, `k` from the given values where needed.
    pub fn parse_with(name: &str, d: Option<u64>, a: Option<u64>, k: Option<u64>) -> Result<Self> {
        let need = |v: Option<u64>, flag: &str| {
            v.ok_or_else(|| Error::Domain(format!("identity `{name}` needs --{flag}")))
        };
        Ok(match name {
            "interval_bounds" => IdentityId::IntervalBounds { a: need(a, "a")?, k: need(k, "k")? },
            "boundary_counts_minus3" => IdentityId::BoundaryCountsMinus3 { d: need(d, "d")? },
            "boundary_counts_minus4" => IdentityId::BoundaryCountsMinus4 { d: need(d, "d")? },
            other => other.parse()?,
        })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "euler" => IdentityId::Euler,
            "rr1" => IdentityId::Rr1,
            "rr2" => IdentityId::Rr2,
            "schur" => IdentityId::Schur,
            "glaisher_consistency" => IdentityId::GlaisherConsistency,
            "monotonicity" => IdentityId::Monotonicity,
            "delta_chain" => IdentityId::DeltaChain,
            "scaling" => IdentityId::Scaling,
            "d2_series" => IdentityId::D2Series,
            "interval_bounds" | "boundary_counts_minus3" | "boundary_counts_minus4" => {
                return Err(Error::Parse(format!("identity `{s}` takes parameters")))
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unknown identity `{s}`; expected euler, rr1, rr2, schur, glaisher_consistency, monotonicity, \
                     delta_chain, scaling, d2_series, interval_bounds, boundary_counts_minus3 or boundary_counts_minus4"
                )))
            }
        })
    }
}

fn compare_eq(report: &mut VerificationReport, lhs: &[BigUint], rhs: &[BigUint], n_max: usize, detail: &str) {
    for n in 0..=n_max {
        report.checked += 1;
        if lhs[n] != rhs[n] {
            report
                .violations
                .push(Violation::new(None, None, n as u64, lhs[n].clone(), rhs[n].clone()).with_detail(detail));
        }
    }
}

fn series_counts(s: TruncatedSeries) -> Result<Vec<BigUint>> {
    s.to_counts().ok_or_else(|| Error::InvariantViolation("generating function has a negative coefficient".into()))
}

/// First `n <= n_max` where `(1 - q^3) Σ q_2^(2)(n) q^n` differs from
/// `Σ Q_2^(3,-)(n) q^n`.
pub fn d2_factor_q3_first_mismatch(n_max: usize) -> Result<Option<usize>> {
    let lhs = gap_sum_series(2, 2, n_max + 1)?.mul_one_minus(3);
    let rhs = product_series(&PartSetSpec::q_minus(2, 3)?, n_max + 1)?;
    Ok((0..=n_max).find(|&n| lhs.coeff(n) != rhs.coeff(n)))
}

/// One row of the interval bound table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBound {
    pub lo: u64,
    pub hi: u64,
    /// Claimed lower bound for `q_k^(1)(m)` on the interval.
    pub q_lower: u64,
    /// Claimed upper bound for `ρ(T^1_{a,k}; m)` on the interval.
    pub rho_upper: u64,
}

/// The three interval rows for `(a, k)`; valid when `k >= 2^(a+3) - 1`.
pub fn interval_bounds(a: u64, k: u64) -> Vec<IntervalBound> {
    let p = |e: u64| 1u64 << e;
    vec![
        IntervalBound { lo: 2 * k + 6, hi: 3 * k + 1, q_lower: p(a + 2) + 3, rho_upper: 1 + a * (a + 1) / 2 },
        IntervalBound {
            lo: 3 * k + 1,
            hi: 4 * k + 1,
            q_lower: p(a + 3),
            rho_upper: 2 * a + a * (a + 1) * (2 * a + 1) / 6,
        },
        IntervalBound {
            lo: 4 * k + 1,
            hi: 5 * k + 1,
            q_lower: 3 * p(a + 2),
            rho_upper: 2 + a * (a - 1) + a * (a + 1) / 2 + a * a * (a + 1) * (a + 1) / 4,
        },
    ]
}

/// Checks the identity exactly for `n <= n_max` (the boundary-count and
/// interval identities ignore `n_max`).
pub fn check_identity(id: IdentityId, n_max: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(id.name());
    match id {
        IdentityId::Euler => {
            report = report.with_range("n", format!("0..{n_max}"));
            let lhs = residue_counts(&PartSetSpec::distinct_parts(), n_max);
            let rhs = series_counts(product_series(&PartSetSpec::odd_parts(), n_max + 1)?)?;
            compare_eq(&mut report, &lhs, &rhs, n_max, "distinct vs odd");
        }
        IdentityId::Rr1 | IdentityId::Rr2 => {
            report = report.with_range("n", format!("0..{n_max}"));
            let a = if id == IdentityId::Rr1 { 1 } else { 2 };
            let lhs = gap_counts(2, a, n_max)?;
            let rhs = series_counts(product_series(&PartSetSpec::residue_pair(5, a)?, n_max + 1)?)?;
            let sum = series_counts(gap_sum_series(2, a, n_max + 1)?)?;
            compare_eq(&mut report, &lhs, &rhs, n_max, "gap count vs product side");
            compare_eq(&mut report, &sum, &rhs, n_max, "sum side vs product side");
        }
        IdentityId::Schur => {
            report = report.with_range("n", format!("0..{n_max}"));
            let lhs = schur_counts(n_max);
            let rhs = series_counts(product_series(&PartSetSpec::residue_pair(6, 1)?, n_max + 1)?)?;
            compare_eq(&mut report, &lhs, &rhs, n_max, "gap-3 count vs parts ±1 mod 6");
            let limit = n_max.min(SCHUR_ENUMERATION_LIMIT);
            let enumerated = (0..=limit as u64)
                .map(|n| count_by_enumeration(n, &SchurFilter, limit as u64))
                .collect::<Result<Vec<_>>>()?;
            compare_eq(&mut report, &enumerated, &lhs, limit, "enumeration vs DP");
            report.notes.push(format!("enumeration cross-check for n <= {limit}"));
        }
        IdentityId::GlaisherConsistency => {
            report = report.with_range("n", format!("0..{n_max}"));
            let odd3 = PartSetSpec::odd_parts().excluding([1]);
            if PartSetSpec::q_minus(1, 3)?.elements_up_to(200) != odd3.elements_up_to(200) {
                return Err(Error::InvariantViolation("Q_1^(3,-) parts differ from odd parts >= 3".into()));
            }
            let rho = residue_counts(&odd3, n_max);
            let q = gap_counts(1, 3, n_max)?;
            for n in 0..=n_max {
                report.checked += 1;
                if q[n] < rho[n] {
                    report.violations.push(Violation::new(Some(1), Some(3), n as u64, q[n].clone(), rho[n].clone()));
                }
            }
        }
        IdentityId::Monotonicity => {
            report = report.with_range("n", format!("0..{n_max}")).with_range("d", "4,12,31,63");
            for d in [4u64, 12, 31, 63] {
                let q = gap_counts(d, 1, n_max)?;
                let big_q = residue_counts(&PartSetSpec::residue_pair_minus(d, 1)?, n_max);
                for (table, what) in [(&q, "q_d^(1) decreases"), (&big_q, "Q_{d-3}^(1,-) decreases")] {
                    for n in 0..n_max {
                        report.checked += 1;
                        if table[n + 1] < table[n] {
                            report.violations.push(
                                Violation::new(Some(d), Some(1), n as u64 + 1, table[n + 1].clone(), table[n].clone())
                                    .with_detail(what),
                            );
                        }
                    }
                }
            }
        }
        IdentityId::DeltaChain => {
            report = report.with_range("n", format!("0..{n_max}")).with_range("d", "1..12").with_range("a", "1..5");
            for d in 1..=12u64 {
                for a in 1..=5u64.min(d + 2) {
                    let plain = delta_counts(d, a, DeltaVariant::Plain, n_max)?;
                    let minus = delta_counts(d, a, DeltaVariant::Minus, n_max)?;
                    let mm = delta_counts(d, a, DeltaVariant::MinusMinus, n_max)?;
                    for n in 0..=n_max {
                        report.checked += 1;
                        if !(mm[n] >= minus[n] && minus[n] >= plain[n]) {
                            let mag = |x: &BigInt| x.magnitude().clone();
                            report.violations.push(
                                Violation::new(Some(d), Some(a), n as u64, mag(&mm[n]), mag(&plain[n]))
                                    .with_detail(format!("delta chain {} >= {} >= {} fails", mm[n], minus[n], plain[n])),
                            );
                        }
                    }
                }
            }
        }
        IdentityId::Scaling => {
            report = report.with_range("n", format!("0..{n_max}")).with_range("d", "1..40").with_range("a", "2..6");
            for d in 1..=40u64 {
                for a in (2..=6u64).filter(|&a| (d + 3) % a == 0 && a <= d + 2) {
                    let m = (d + 3) / a;
                    for (big, small, label) in [
                        (PartSetSpec::q_minus(d, a)?, PartSetSpec::residue_pair_minus(m, 1)?, "minus"),
                        (PartSetSpec::q_minus_minus(d, a)?, PartSetSpec::residue_pair_minus_minus(m, 1)?, "minus-minus"),
                    ] {
                        let lhs = residue_counts(&big, a as usize * n_max);
                        let rhs = residue_counts(&small, n_max);
                        for n in 0..=n_max {
                            report.checked += 1;
                            if lhs[a as usize * n] != rhs[n] {
                                report.violations.push(
                                    Violation::new(Some(d), Some(a), n as u64, lhs[a as usize * n].clone(), rhs[n].clone())
                                        .with_detail(label),
                                );
                            }
                        }
                    }
                }
            }
        }
        IdentityId::D2Series => {
            report = report.with_range("n", format!("0..{n_max}"));
            let order = n_max + 1;
            let rhs = series_counts(product_series(&PartSetSpec::q_minus(2, 3)?, order)?)?;
            let sum = gap_sum_series(2, 2, order)?;
            let gap = TruncatedSeries::from_counts(&gap_counts(2, 2, n_max)?);
            compare_eq(&mut report, &series_counts(sum.clone().mul_one_minus(2))?, &rhs, n_max, "sum side");
            compare_eq(&mut report, &series_counts(gap.mul_one_minus(2))?, &rhs, n_max, "gap counts");
            if let Some(n) = d2_factor_q3_first_mismatch(n_max)? {
                report.notes.push(format!("with the factor (1 - q^3) instead, the identity first fails at n = {n}"));
            }
        }
        IdentityId::IntervalBounds { a, k } => {
            if a == 0 || k + 1 < (1u64 << (a + 3)) {
                return domain(format!("interval bounds need a >= 1 and k >= 2^(a+3) - 1 (got a = {a}, k = {k})"));
            }
            report = report.with_range("a", a).with_range("k", k).with_range("m", format!("{}..{}", 2 * k + 6, 5 * k + 1));
            let top = 5 * k as usize + 1;
            let q = gap_counts(k, 1, top)?;
            let rho = residue_counts(&PartSetSpec::andrews_t(a, k)?, top);
            for row in interval_bounds(a, k) {
                for m in row.lo..=row.hi {
                    let m_ = m as usize;
                    report.checked += 1;
                    if q[m_] < BigUint::from(row.q_lower) {
                        report.violations.push(
                            Violation::new(Some(k), Some(a), m, q[m_].clone(), row.q_lower).with_detail("q lower bound"),
                        );
                    }
                    if rho[m_] > BigUint::from(row.rho_upper) {
                        report.violations.push(
                            Violation::new(Some(k), Some(a), m, rho[m_].clone(), row.rho_upper).with_detail("rho upper bound"),
                        );
                    }
                }
                let q_min = q[row.lo as usize..=row.hi as usize].iter().min().expect("nonempty");
                let rho_max = rho[row.lo as usize..=row.hi as usize].iter().max().expect("nonempty");
                report.notes.push(format!(
                    "m in {}..{}: min q = {q_min} (bound {}), max rho = {rho_max} (bound {})",
                    row.lo, row.hi, row.q_lower, row.rho_upper
                ));
            }
        }
        IdentityId::BoundaryCountsMinus3 { d } => {
            if d < 31 {
                return domain(format!("boundary_counts_minus3 holds for d >= 31, got {d}"));
            }
            report = report.with_range("d", d);
            let big_q = residue_counts(&PartSetSpec::residue_pair_minus(d, 1)?, 5 * d as usize);
            let q = gap_counts(d, 1, 5 * d as usize)?;
            for (n, want) in [(2 * d - 2, 2u64), (4 * d - 1, 12), (5 * d, 26)] {
                report.checked += 1;
                if big_q[n as usize] != BigUint::from(want) {
                    report.violations.push(Violation::new(Some(d), Some(1), n, big_q[n as usize].clone(), want).with_detail("exact count"));
                }
            }
            for (n, lower) in [(2 * d - 1, 16u64), (4 * d, 47)] {
                report.checked += 1;
                if q[n as usize] < BigUint::from(lower) {
                    report.violations.push(Violation::new(Some(d), Some(1), n, q[n as usize].clone(), lower).with_detail("lower bound"));
                }
            }
        }
        IdentityId::BoundaryCountsMinus4 { d } => {
            if d < 12 {
                return domain(format!("boundary_counts_minus4 holds for d >= 12, got {d}"));
            }
            report = report.with_range("d", d);
            let big_q = residue_counts(&PartSetSpec::residue_pair_minus(d - 1, 1)?, 5 * d as usize);
            for (n, want) in [(2 * d - 4, 2u64), (3 * d - 5, 5), (4 * d - 6, 11), (5 * d - 8, 20), (5 * d, 36)] {
                report.checked += 1;
                if big_q[n as usize] != BigUint::from(want) {
                    report.violations.push(Violation::new(Some(d), Some(1), n, big_q[n as usize].clone(), want).with_detail("exact count"));
                }
            }
        }
    }
    let mut report = report.finish();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities_pass() {
        for id in [
            IdentityId::Euler,
            IdentityId::Rr1,
            IdentityId::Rr2,
            IdentityId::Schur,
            IdentityId::GlaisherConsistency,
            IdentityId::Monotonicity,
            IdentityId::DeltaChain,
            IdentityId::Scaling,
            IdentityId::D2Series,
        ] {
            let r = check_identity(id, 80).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.violations);
        }
    }

    #[test]
    fn d2_factor_is_one_minus_q2() {
        assert_eq!(d2_factor_q3_first_mismatch(300).unwrap(), Some(2));
        let r = check_identity(IdentityId::D2Series, 300).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].contains("n = 2"));
    }

    #[test]
    fn euler_at_zero() {
        let r = check_identity(IdentityId::Euler, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn boundary_counts() {
        for d in [31, 40, 63] {
            assert!(check_identity(IdentityId::BoundaryCountsMinus3 { d }, 0).unwrap().passed());
        }
        for d in [12, 13, 20] {
            assert!(check_identity(IdentityId::BoundaryCountsMinus4 { d }, 0).unwrap().passed());
        }
        assert!(check_identity(IdentityId::BoundaryCountsMinus3 { d: 30 }, 0).is_err());
    }

    #[test]
    fn interval_rows_for_a5() {
        let rows = interval_bounds(5, 255);
        assert_eq!((rows[0].q_lower, rows[0].rho_upper), (131, 16));
        assert_eq!((rows[1].q_lower, rows[1].rho_upper), (256, 65));
        assert_eq!((rows[2].q_lower, rows[2].rho_upper), (384, 262));
    }

    #[test]
    fn parse_with_params() {
        assert_eq!(
            IdentityId::parse_with("interval_bounds", None, Some(5), Some(255)).unwrap(),
            IdentityId::IntervalBounds { a: 5, k: 255 }
        );
        assert!(IdentityId::parse_with("boundary_counts_minus3", None, None, None).is_err());
        assert!("nope".parse::<IdentityId>().is_err());
    }
}
