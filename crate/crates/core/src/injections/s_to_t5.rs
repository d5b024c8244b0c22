//! The injection from partitions into parts of `S_d = {x ≡ ±1 (mod d)} \ {d-1}`
//! to partitions into parts of Andrews' `T_{5,d}`, same weight.
//!
//! With `x_i`, `y_i` the `i`-th smallest elements of the two sets, `x_i >= y_i`
//! for every `i` except `i = 2` (`x_2 = d+1 < d+2 = y_2`). The map splits on
//! whether the surplus `p_1 + α` (with `α` summed over `i != 2`) covers `p_2`.

use serde::Serialize;

use super::MultiplicityVector;
use crate::error::{domain, Error, Result};
use crate::partition::{PartSetSpec, Partition};

pub const S_TO_T5_MIN_D: u64 = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCase {
    /// `p_1 + α >= p_2`: reindex and let the part 1 absorb the surplus.
    Reindex,
    /// `p_1 + α < p_2`: rebalance the copies of `d+1` into `d+2` and `2d+1`.
    Rebalance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InjectionCaseData {
    pub case: SplitCase,
    pub alpha: u64,
    pub beta: u64,
    pub p_bar: u64,
    pub epsilon: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SToT5Image {
    pub partition: Partition,
    pub data: InjectionCaseData,
}

pub fn phi_s_to_t5(lambda: &Partition, d: u64) -> Result<SToT5Image> {
    if d < S_TO_T5_MIN_D {
        return domain(format!("the S_d -> T_(5,d) injection needs d >= {S_TO_T5_MIN_D} (got {d})"));
    }
    let n = lambda.weight();
    if n > 0 && n < d + 2 {
        return domain(format!("weight {n} is below d + 2 = {}", d + 2));
    }
    let s_spec = PartSetSpec::s_set(d)?;
    if let Some(&bad) = lambda.parts().iter().find(|&&p| !s_spec.contains(p)) {
        return domain(format!("part {bad} is not in S_{d} (parts ≡ ±1 mod {d}, excluding {})", d - 1));
    }
    let len = s_spec.elements_up_to(lambda.largest().unwrap_or(1)).len().max(6);
    let xs = s_spec.first_elements(len);
    let ys = PartSetSpec::andrews_t(5, d)?.first_elements(len);
    let source = MultiplicityVector::from_partition(lambda, xs.clone())?;
    let p = |i: usize| source.multiplicity(i) as i128;

    let mut alpha: i128 = 0;
    for (i, m) in source.nonzero().filter(|&(i, _)| i != 1) {
        if xs[i] < ys[i] {
            return Err(Error::InvariantViolation(format!(
                "x_{} = {} < y_{} = {} away from i = 2",
                i + 1,
                xs[i],
                i + 1,
                ys[i]
            )));
        }
        alpha += m as i128 * (xs[i] - ys[i]) as i128;
    }

    let mut q: Vec<i128> = (0..len).map(p).collect();
    let data = if p(0) + alpha >= p(1) {
        q[0] = p(0) + alpha - p(1);
        InjectionCaseData { case: SplitCase::Reindex, alpha: alpha as u64, beta: 0, p_bar: 0, epsilon: 0 }
    } else {
        if p(1) < 2 {
            return Err(Error::InvariantViolation(format!(
                "rebalancing case reached with p_2 = {} for {lambda}",
                p(1)
            )));
        }
        let period = (d - 2) as i128;
        let beta = (p(0) + p(5)) / period;
        let p_bar = (p(0) + p(5)) % period;
        let epsilon = p(1) % 2;
        q[0] = (p(1) - 2 * beta - 3 * epsilon) / 2 + alpha + p(0) - 2 * beta;
        q[1] = 2 * beta + epsilon;
        q[5] = (p(1) - 2 * beta - epsilon) / 2 + p(5);
        InjectionCaseData {
            case: SplitCase::Rebalance,
            alpha: alpha as u64,
            beta: beta as u64,
            p_bar: p_bar as u64,
            epsilon: epsilon as u64,
        }
    };

    if let Some(i) = q.iter().position(|&v| v < 0) {
        return Err(Error::InvariantViolation(format!(
            "negative multiplicity q_{} = {} for {lambda} (d = {d})",
            i + 1,
            q[i]
        )));
    }
    let image = MultiplicityVector::new(ys, q.iter().enumerate().map(|(i, &v)| (i, v as u64)))?;
    if image.weight() != n {
        return Err(Error::InvariantViolation(format!(
            "image weight {} differs from input weight {n} for {lambda}",
            image.weight()
        )));
    }
    Ok(SToT5Image { partition: image.to_partition(), data })
}
