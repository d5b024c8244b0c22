//! Brute-force enumeration. This is the oracle every DP counter is checked
//! against, so it deliberately shares no code with them: it walks all weakly
//! decreasing sequences and asks the filter about each part and each
//! adjacent pair.

use num_bigint::BigUint;

use super::{PartFilter, Partition};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CEILING: u64 = 400;

/// All partitions of `n` accepted by `filter`, in reverse lexicographic order.
pub fn enumerate_partitions(n: u64, filter: &dyn PartFilter) -> Result<Vec<Partition>> {
    enumerate_partitions_with_ceiling(n, filter, DEFAULT_ORACLE_CEILING)
}

pub fn enumerate_partitions_with_ceiling(
    n: u64,
    filter: &dyn PartFilter,
    ceiling: u64,
) -> Result<Vec<Partition>> {
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, ceiling });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    walk(n, None, filter, &mut current, &mut |p| out.push(Partition::from_sorted(p.to_vec())));
    Ok(out)
}

/// Number of partitions of `n` accepted by `filter`, without materializing them.
pub fn count_by_enumeration(n: u64, filter: &dyn PartFilter, ceiling: u64) -> Result<BigUint> {
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, ceiling });
    }
    let mut count = 0u64;
    let mut current = Vec::new();
    walk(n, None, filter, &mut current, &mut |_| count += 1);
    Ok(BigUint::from(count))
}

fn walk(
    remaining: u64,
    previous: Option<u64>,
    filter: &dyn PartFilter,
    current: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    let top = previous.map_or(remaining, |p| p.min(remaining));
    for part in (1..=top).rev() {
        if !filter.admits_part(part) {
            continue;
        }
        if let Some(prev) = previous {
            if !filter.admits_pair(prev, part) {
                continue;
            }
        }
        current.push(part);
        walk(remaining - part, Some(part), filter, current, emit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{GapSpec, PartSetSpec};

    fn show(ps: &[Partition]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn zero_has_only_the_empty_partition() {
        let g = GapSpec::new(3, 5).unwrap();
        assert_eq!(enumerate_partitions(0, &g).unwrap(), vec![Partition::empty()]);
        let s = PartSetSpec::q_minus(7, 2).unwrap();
        assert_eq!(enumerate_partitions(0, &s).unwrap(), vec![Partition::empty()]);
    }

    #[test]
    fn unrestricted_partitions_of_four() {
        let all = enumerate_partitions(4, &GapSpec::new(1, 0).unwrap()).unwrap();
        assert_eq!(show(&all), ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn gap_two_min_two_of_ten() {
        let ps = enumerate_partitions(10, &GapSpec::new(2, 2).unwrap()).unwrap();
        assert_eq!(show(&ps), ["(10)", "(8,2)", "(7,3)", "(6,4)"]);
    }

    #[test]
    fn ceiling_is_enforced() {
        let g = GapSpec::new(1, 0).unwrap();
        match enumerate_partitions(401, &g) {
            Err(Error::CeilingExceeded { n: 401, ceiling: 400 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(enumerate_partitions_with_ceiling(12, &g, 10).is_err());
        assert!(count_by_enumeration(12, &g, 10).is_err());
    }

    #[test]
    fn distinct_classes_respected() {
        let ps = enumerate_partitions(6, &PartSetSpec::distinct_parts()).unwrap();
        assert_eq!(show(&ps), ["(6)", "(5,1)", "(4,2)", "(3,2,1)"]);
    }
}
