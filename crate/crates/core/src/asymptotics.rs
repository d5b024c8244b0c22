//! Constants `α_d`, `A_d`, `M_d` governing the limiting sign of
//! `q_d^(a)(n) - ρ(two residue classes mod m; n)`, and finite trend data.

use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::partition::CountingFn;
use crate::qseries::DEFAULT_ORDER_CAP;

/// The `d` values of the standard reference rows.
pub const REFERENCE_DS: [u64; 12] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 20, 100];

/// Distance from an integer below which `M_d` is flagged.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub d: u64,
    pub alpha: f64,
    pub a_const: f64,
    pub m_const: u64,
    /// `π²/(3A_d)` lies within [`BOUNDARY_TOLERANCE`] of an integer.
    pub boundary_sensitive: bool,
}

fn poly(x: f64, d: i32) -> f64 {
    x.powi(d) + x - 1.0
}

/// Root of `x^d + x - 1` in `(0, 1)`: bisection to `1e-13`, then two Newton steps.
pub fn alpha(d: u64) -> Result<f64> {
    if d == 0 {
        return domain("alpha needs d >= 1");
    }
    let di = i32::try_from(d).map_err(|_| Error::Domain(format!("d = {d} too large")))?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if poly(mid, di) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let deriv = d as f64 * x.powi(di - 1) + 1.0;
        x -= poly(x, di) / deriv;
    }
    Ok(x)
}

/// `A_d = (d/2) ln²α_d + Σ_{r>=1} α_d^{rd}/r²`.
pub fn a_const(d: u64) -> Result<f64> {
    let al = alpha(d)?;
    let ad = al.powi(d as i32);
    let mut sum = 0.0;
    let mut term_pow = 1.0;
    for r in 1u64.. {
        term_pow *= ad;
        let r2 = (r * r) as f64;
        sum += term_pow / r2;
        let tail = term_pow * ad / (r2 * (1.0 - ad));
        if tail < 1e-14 {
            break;
        }
    }
    Ok(0.5 * d as f64 * al.ln().powi(2) + sum)
}

/// `M_d = floor(π²/(3A_d))` and whether the quotient is within the boundary tolerance.
pub fn m_const(d: u64) -> Result<(u64, bool)> {
    let x = PI * PI / (3.0 * a_const(d)?);
    let boundary = (x - x.round()).abs() < BOUNDARY_TOLERANCE;
    Ok((x.floor() as u64, boundary))
}

pub fn constants(d: u64) -> Result<AsymptoticConstants> {
    let (m_const, boundary_sensitive) = m_const(d)?;
    Ok(AsymptoticConstants { d, alpha: alpha(d)?, a_const: a_const(d)?, m_const, boundary_sensitive })
}

pub fn reference_rows() -> Vec<AsymptoticConstants> {
    REFERENCE_DS.iter().map(|&d| constants(d).expect("reference d are valid")).collect()
}

/// CSV with header `d,alpha_d,A_d,M_d`, reals at 6 decimals.
pub fn write_constants_csv<W: std::io::Write>(rows: &[AsymptoticConstants], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["d", "alpha_d", "A_d", "M_d"])?;
    for r in rows {
        w.write_record([r.d.to_string(), format!("{:.6}", r.alpha), format!("{:.6}", r.a_const), r.m_const.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `lhs(n) - rhs(n)` for `n = 0..=n_max`. Finite evidence only: no limit is
/// certified by these values.
pub fn delta_trend(lhs: &CountingFn, rhs: &CountingFn, n_max: usize) -> Result<Vec<BigInt>> {
    if n_max > DEFAULT_ORDER_CAP {
        return Err(Error::OrderTooLarge { order: n_max, cap: DEFAULT_ORDER_CAP });
    }
    let l = lhs.table(n_max)?;
    let r = rhs.table(n_max)?;
    Ok(l.into_iter().zip(r).take(n_max + 1).map(|(l, r)| BigInt::from(l) - BigInt::from(r)).collect())
}

/// CSV with header `n,lhs,rhs,delta`.
pub fn write_trend_csv<W: std::io::Write>(lhs: &CountingFn, rhs: &CountingFn, n_max: usize, out: W) -> Result<()> {
    let l = lhs.table(n_max)?;
    let r = rhs.table(n_max)?;
    let delta = delta_trend(lhs, rhs, n_max)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "lhs", "rhs", "delta"])?;
    for (n, dl) in delta.iter().enumerate() {
        w.write_record([n.to_string(), l[n].to_string(), r[n].to_string(), dl.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn alpha_is_a_root() {
        assert!((alpha(1).unwrap() - 0.5).abs() < 1e-15);
        for d in 1..=200 {
            let a = alpha(d).unwrap();
            assert!(a > 0.0 && a < 1.0);
            assert!(poly(a, d as i32).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn monotone_over_reference_rows() {
        let rows = reference_rows();
        for w in rows.windows(2) {
            assert!(w[0].m_const <= w[1].m_const);
            assert!(w[0].a_const > w[1].a_const);
        }
        assert!(rows.iter().all(|r| !r.boundary_sensitive));
    }

    #[test]
    fn identical_trend_is_zero() {
        let f: CountingFn = "Q:d=4,a=1".parse().unwrap();
        assert!(delta_trend(&f, &f, 100).unwrap().iter().all(Zero::is_zero));
        assert!(delta_trend(&f, &f, DEFAULT_ORDER_CAP + 1).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_constants_csv(&[constants(3).unwrap()], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "d,alpha_d,A_d,M_d\n3,0.682328,0.566433,5\n");
    }
}
