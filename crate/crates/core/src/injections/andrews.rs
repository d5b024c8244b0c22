use super::MultiplicityVector;
use crate::error::{domain, Error, Result};
use crate::partition::residue_helpers;

/// The modified Andrews map. Given `λ` over `S = (x_i)` and a target list
/// `T = (y_i)` with `y_1 = a`, `a | y_i` and `x_i >= y_i`, every part keeps
/// its index except that the smallest target part absorbs the surplus:
/// `q_1 = p_1 + (h + α) / a` with `α = Σ p_i (x_i - y_i)` and `h` the least
/// nonnegative residue of `-|λ|` mod `a`. The image has weight `|λ| + h`.
pub fn phi_mod_andrews(lambda: &MultiplicityVector, target: &[u64], a: u64) -> Result<MultiplicityVector> {
    if a == 0 {
        return domain("a must be positive");
    }
    match target.first() {
        Some(&y1) if y1 == a => {}
        Some(&y1) => return domain(format!("target index 0: smallest part {y1} must equal a = {a}")),
        None => return domain("target part list is empty"),
    }
    for (i, &y) in target.iter().enumerate() {
        if y % a != 0 {
            return domain(format!("target index {i}: part {y} is not divisible by a = {a}"));
        }
        if i > 0 && target[i - 1] >= y {
            return domain(format!("target index {i}: parts must be strictly increasing"));
        }
    }

    let source = lambda.base_parts();
    let mut alpha: u64 = 0;
    for (i, p) in lambda.nonzero() {
        let y = *target
            .get(i)
            .ok_or_else(|| Error::Domain(format!("index {i}: no target part for source part {}", source[i])))?;
        if source[i] < y {
            return domain(format!("index {i}: source part {} is smaller than target part {y}", source[i]));
        }
        alpha += p * (source[i] - y);
    }

    let (h, _) = residue_helpers(lambda.weight(), a);
    if (h + alpha) % a != 0 {
        return Err(Error::InvariantViolation(format!(
            "a = {a} does not divide h + α = {h} + {alpha}"
        )));
    }
    let mults = lambda
        .nonzero()
        .filter(|&(i, _)| i != 0)
        .chain(std::iter::once((0, lambda.multiplicity(0) + (h + alpha) / a)));
    MultiplicityVector::new(target.to_vec(), mults)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{residue_helpers, PartSetSpec};

    #[test]
    fn empty_input_maps_to_empty() {
        let src = MultiplicityVector::new(vec![3, 18, 27], []).unwrap();
        let out = phi_mod_andrews(&src, &[3, 15, 21], 3).unwrap();
        assert_eq!(out.weight(), 0);
    }

    #[test]
    fn chain_instance_d12_a3() {
        let s = PartSetSpec::q_minus(12, 3).unwrap().first_elements(8);
        let t = PartSetSpec::q_minus(9, 3).unwrap().first_elements(8);
        let lambda = MultiplicityVector::new(s.clone(), [(0, 2)]).unwrap();
        let out = phi_mod_andrews(&lambda, &t, 3).unwrap();
        assert_eq!(out.to_partition().parts(), &[3, 3]);

        // λ = (18, 3): α = 18 - 15 = 3, n = 21, h = 0, q_1 = 1 + 1
        let lambda = MultiplicityVector::new(s, [(0, 1), (1, 1)]).unwrap();
        let out = phi_mod_andrews(&lambda, &t, 3).unwrap();
        assert_eq!(out.to_partition().parts(), &[15, 3, 3]);
    }

    #[test]
    fn a_equal_one_is_andrews_map() {
        let lambda = MultiplicityVector::new(vec![2, 5, 9], [(1, 2), (2, 1)]).unwrap();
        let out = phi_mod_andrews(&lambda, &[1, 4, 6], 1).unwrap();
        // α = 2·1 + 1·3 = 5, h = 0
        assert_eq!(out.multiplicity(0), 5);
        assert_eq!(out.multiplicity(1), 2);
        assert_eq!(out.weight(), lambda.weight());
    }

    #[test]
    fn shift_is_h_of_weight() {
        let lambda = MultiplicityVector::new(vec![4, 7, 11], [(1, 1), (2, 1)]).unwrap();
        let out = phi_mod_andrews(&lambda, &[4, 8, 12], 4).unwrap_err();
        assert!(out.to_string().contains("index 1"));
        let out = phi_mod_andrews(&lambda, &[4, 6, 8], 4).unwrap_err();
        assert!(out.to_string().contains("index 1"));
        let lambda = MultiplicityVector::new(vec![5, 9, 13], [(1, 1), (2, 1)]).unwrap();
        let out = phi_mod_andrews(&lambda, &[4, 8, 12], 4).unwrap();
        assert_eq!(out.weight(), 22 + residue_helpers(22, 4).0);
    }

    #[test]
    fn preconditions_name_the_index() {
        let lambda = MultiplicityVector::new(vec![3, 6], [(0, 1)]).unwrap();
        let err = phi_mod_andrews(&lambda, &[2, 6], 3).unwrap_err().to_string();
        assert!(err.contains("index 0"), "{err}");
        let err = phi_mod_andrews(&lambda, &[3, 7], 3).unwrap_err().to_string();
        assert!(err.contains("index 1"), "{err}");
    }
}
