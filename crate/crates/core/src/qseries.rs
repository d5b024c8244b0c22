//! Truncated formal power series with exact integer coefficients, and the
//! generating functions of the counting functions as series.
//!
//! Products of the form `1/(q^e; q^m)_∞` are expanded factor by factor:
//! multiplying by `1/(1 - q^e)` is an in-place prefix recurrence and
//! multiplying by `1 + q^e` a reverse one, so no general convolution is
//! needed to build them.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::PartSetSpec;

pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// `c_0 + c_1 q + … + c_N q^N (mod q^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_counts(counts: &[BigUint]) -> Self {
        Self::from_coeffs(counts.iter().cloned().map(BigInt::from).collect())
    }

    /// `1 - q^e` (or `1` when `e` lies beyond the order).
    pub fn one_minus_monomial(e: usize, order: usize) -> Self {
        Self::one(order).mul_one_minus(e)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as counts; `None` if any is negative.
    pub fn to_counts(&self) -> Option<Vec<BigUint>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    /// Multiply by `1/(1 - q^e)`.
    pub fn inverse_factor(mut self, e: usize) -> Self {
        assert!(e >= 1, "1/(1 - q^0) is not a power series");
        for i in e..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - e];
        }
        self
    }

    /// Multiply by `1 + q^e`.
    pub fn mul_one_plus(mut self, e: usize) -> Self {
        if e == 0 {
            self.coeffs.iter_mut().for_each(|c| *c *= 2);
            return self;
        }
        for i in (e..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - e];
        }
        self
    }

    /// Multiply by `1 - q^e`.
    pub fn mul_one_minus(mut self, e: usize) -> Self {
        if e == 0 {
            return Self::zero(self.order());
        }
        for i in (e..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - e];
        }
        self
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        if k < n {
            out[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries { coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries { coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

/// Cauchy product truncated to the smaller of the two orders.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

pub fn series_mul(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> TruncatedSeries {
    lhs * rhs
}

pub fn series_inverse_factor(s: &TruncatedSeries, e: usize) -> TruncatedSeries {
    s.clone().inverse_factor(e)
}

/// Order cap shared by the series constructors.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    pub order_cap: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { order_cap: DEFAULT_ORDER_CAP }
    }
}

impl SeriesConfig {
    fn check(&self, order: usize) -> Result<()> {
        if order > self.order_cap {
            return Err(Error::OrderTooLarge { order, cap: self.order_cap });
        }
        Ok(())
    }

    /// `Π 1/(1 - q^e)` over unrestricted parts `e` times `Π (1 + q^e)` over
    /// distinct-class parts, truncated at `order`.
    pub fn product_series(&self, spec: &PartSetSpec, order: usize) -> Result<TruncatedSeries> {
        self.check(order)?;
        let mut s = TruncatedSeries::one(order);
        for e in spec.elements_up_to(order as u64) {
            s = if spec.is_distinct(e) {
                s.mul_one_plus(e as usize)
            } else {
                s.inverse_factor(e as usize)
            };
        }
        Ok(s)
    }

    /// `Σ_k q^{d·C(k,2) + k·a} / (q;q)_k`, stopping once the exponent passes `order`.
    pub fn gap_sum_series(&self, d: u64, a: u64, order: usize) -> Result<TruncatedSeries> {
        self.check(order)?;
        let mut sum = TruncatedSeries::zero(order);
        let mut term = TruncatedSeries::one(order); // 1/(q;q)_k
        for k in 0u128.. {
            let exponent = d as u128 * (k * k.saturating_sub(1) / 2) + k * a as u128;
            if exponent > order as u128 {
                break;
            }
            if k > 0 {
                term = term.inverse_factor(k as usize);
            }
            sum = &sum + &term.shift(exponent as usize);
        }
        Ok(sum)
    }

    /// `(q^first; q^step)_len` as a polynomial truncated at `order`;
    /// `len = None` is the infinite product.
    pub fn pochhammer(&self, first: usize, step: usize, len: Option<usize>, order: usize) -> Result<TruncatedSeries> {
        self.check(order)?;
        if first == 0 || step == 0 {
            return Err(Error::Domain("pochhammer exponents must be positive".into()));
        }
        let mut s = TruncatedSeries::one(order);
        let mut e = first;
        let mut k = 0;
        while e <= order && len.map_or(true, |l| k < l) {
            s = s.mul_one_minus(e);
            e += step;
            k += 1;
        }
        Ok(s)
    }
}

pub fn product_series(spec: &PartSetSpec, order: usize) -> Result<TruncatedSeries> {
    SeriesConfig::default().product_series(spec, order)
}

pub fn gap_sum_series(d: u64, a: u64, order: usize) -> Result<TruncatedSeries> {
    SeriesConfig::default().gap_sum_series(d, a, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn multiplicative_identity() {
        let s = TruncatedSeries::from_coeffs(ints(&[3, -1, 4, 1, 5]));
        assert_eq!(&TruncatedSeries::one(4) * &s, s);
        assert_eq!(series_mul(&s, &TruncatedSeries::one(10)), s);
    }

    #[test]
    fn geometric_series() {
        let g = series_inverse_factor(&TruncatedSeries::one(12), 1);
        assert!(g.coeffs().iter().all(|c| c == &BigInt::one()));
    }

    #[test]
    fn parts_two_and_three() {
        let s = TruncatedSeries::one(10).inverse_factor(2).inverse_factor(3);
        assert_eq!(s.coeff(6), &BigInt::from(2));
        assert_eq!(s.coeff(1), &BigInt::zero());
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(7).inverse_factor(1);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn inverse_then_multiply_by_factor_is_identity() {
        let s = TruncatedSeries::from_coeffs(ints(&[1, 2, 0, 7, 1, 1, 9]));
        assert_eq!(s.clone().inverse_factor(3).mul_one_minus(3), s);
    }

    #[test]
    fn product_with_large_min_part_is_one() {
        let spec = PartSetSpec::q_minus_minus(20, 4).unwrap();
        assert_eq!(product_series(&spec, 20).unwrap(), TruncatedSeries::one(20));
    }

    #[test]
    fn parts_pm2_mod5() {
        let s = product_series(&PartSetSpec::residue_pair(5, 2).unwrap(), 10).unwrap();
        assert_eq!(s.coeff(10), &BigInt::from(4));
    }

    #[test]
    fn gap_sum_constant_term() {
        for (d, a) in [(0, 1), (3, 2), (7, 5)] {
            assert_eq!(gap_sum_series(d, a, 15).unwrap().coeff(0), &BigInt::one());
        }
    }

    #[test]
    fn order_cap_enforced() {
        let cfg = SeriesConfig { order_cap: 50 };
        assert!(matches!(cfg.gap_sum_series(2, 1, 51), Err(Error::OrderTooLarge { .. })));
        assert!(cfg.product_series(&PartSetSpec::odd_parts(), 50).is_ok());
    }

    #[test]
    fn euler_via_pochhammer() {
        // (-q;q)_∞ = (q^2;q^2)_∞ / (q;q)_∞
        let cfg = SeriesConfig::default();
        let n = 40;
        let num = cfg.pochhammer(2, 2, None, n).unwrap();
        let mut inv = num;
        for e in 1..=n {
            inv = inv.inverse_factor(e);
        }
        let distinct = cfg.product_series(&PartSetSpec::distinct_parts(), n).unwrap();
        assert_eq!(inv, distinct);
    }
}
