use crate::error::{domain, Result};
use crate::partition::{GapSpec, Partition};

/// Glaisher's binary splitting restricted to odd parts `>= 3`: a part `v`
/// with multiplicity `Σ 2^{e_j}` becomes the distinct parts `2^{e_j}·v`.
pub fn glaisher_mod(lambda: &Partition) -> Result<Partition> {
    let mut out = Vec::with_capacity(lambda.len());
    for (value, count) in lambda.multiplicities() {
        if value % 2 == 0 || value < 3 {
            return domain(format!("part {value} is not an odd part >= 3"));
        }
        let mut bits = count;
        let mut power = 0;
        while bits > 0 {
            if bits & 1 == 1 {
                out.push(value << power);
            }
            bits >>= 1;
            power += 1;
        }
    }
    Partition::new(out)
}

/// Drops the final part 2 from a partition with parts `>= 2`, gaps `>= 2`
/// and smallest part 2.
pub fn phi_d2(lambda: &Partition) -> Result<Partition> {
    let spec = GapSpec { min_part: 2, min_gap: 2 };
    if !lambda.satisfies(&spec) {
        return domain(format!("{lambda} does not have parts >= 2 differing by >= 2"));
    }
    if lambda.smallest() != Some(2) {
        return domain(format!("{lambda} has no part equal to 2"));
    }
    let parts = lambda.parts();
    Ok(Partition::from_sorted(parts[..parts.len() - 1].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn glaisher_examples() {
        assert_eq!(glaisher_mod(&p(&[5])).unwrap(), p(&[5]));
        assert_eq!(glaisher_mod(&p(&[3, 3, 3])).unwrap(), p(&[6, 3]));
        assert_eq!(glaisher_mod(&p(&[9, 3, 3])).unwrap(), p(&[9, 6]));
        assert_eq!(glaisher_mod(&p(&[3; 7])).unwrap(), p(&[12, 6, 3]));
        assert!(glaisher_mod(&p(&[4])).is_err());
        assert!(glaisher_mod(&p(&[3, 1])).is_err());
    }

    #[test]
    fn phi_d2_examples() {
        assert_eq!(phi_d2(&p(&[7, 2])).unwrap(), p(&[7]));
        assert_eq!(phi_d2(&p(&[2])).unwrap(), Partition::empty());
        assert!(phi_d2(&p(&[7, 3])).is_err());
        assert!(phi_d2(&p(&[3, 2])).is_err());
    }
}
