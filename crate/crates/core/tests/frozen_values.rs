//! Values computed once by an independent brute-force implementation and frozen.

use num_bigint::BigUint;
use partition_ineq::partition::{count_gap, count_residue, gap_counts, schur_counts, CountingFn, PartSetSpec};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn table(f: &str, n_max: usize) -> Vec<u64> {
    let f: CountingFn = f.parse().unwrap();
    f.table(n_max).unwrap().iter().map(|v| u64::try_from(v).unwrap()).collect()
}

#[test]
fn gap_sequences() {
    assert_eq!(table("q:d=1,a=1", 14), [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22]);
    assert_eq!(table("q:d=3,a=1", 19), [1, 1, 1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 6, 7, 8, 10, 11, 13, 15, 17]);
    assert_eq!(table("q:d=2,a=2", 19), [1, 0, 1, 1, 1, 1, 2, 2, 3, 3, 4, 4, 6, 6, 8, 9, 11, 12, 15, 16]);
    assert_eq!(count_gap(30, 4, 3).unwrap(), big(24));
    assert_eq!(count_gap(40, 4, 3).unwrap(), big(62));
    assert_eq!(count_gap(50, 10, 1).unwrap(), big(54));
    assert_eq!(count_gap(100, 31, 1).unwrap(), big(39));
}

#[test]
fn large_values_beyond_machine_words_stay_exact() {
    assert_eq!(count_gap(1000, 10, 1).unwrap(), big(12118645020848));
    assert_eq!(count_gap(1000, 31, 1).unwrap(), big(1178343112));
    let q7 = CountingFn::Residue { variant: partition_ineq::DeltaVariant::Plain, d: 7, a: 1 };
    assert_eq!(q7.count(1000).unwrap(), big(10856545106234));
    assert_eq!(count_residue(1000, &PartSetSpec::residue_pair_minus(31, 1).unwrap()), big(1014841));
    assert_eq!(count_residue(300, &PartSetSpec::residue_pair(5, 2).unwrap()), big(2943419040));
}

#[test]
fn schur_sequence() {
    let s: Vec<u64> = schur_counts(24).iter().map(|v| u64::try_from(v).unwrap()).collect();
    assert_eq!(s, [1, 1, 1, 1, 1, 2, 2, 3, 3, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20, 23, 26, 30]);
}

#[test]
fn residue_and_t_set_values() {
    assert_eq!(CountingFn::Residue { variant: partition_ineq::DeltaVariant::Minus, d: 7, a: 2 }.count(40).unwrap(), big(14));
    assert_eq!(CountingFn::Residue { variant: partition_ineq::DeltaVariant::Minus, d: 9, a: 3 }.count(60).unwrap(), big(26));
    assert_eq!(CountingFn::Residue { variant: partition_ineq::DeltaVariant::MinusMinus, d: 6, a: 4 }.count(50).unwrap(), big(3));
    assert_eq!(count_residue(50, &PartSetSpec::andrews_t(3, 7).unwrap()), big(68));
    assert_eq!(count_residue(100, &PartSetSpec::scaled_t(2, 3, 7).unwrap()), big(68));
}

#[test]
fn small_hand_checked_values() {
    assert_eq!(gap_counts(2, 2, 10).unwrap()[10], big(4));
    assert_eq!(gap_counts(2, 2, 7).unwrap()[7], big(2));
    assert_eq!(count_residue(10, &PartSetSpec::residue_pair(5, 2).unwrap()), big(4));
    assert_eq!("G:d=31".parse::<CountingFn>().unwrap().count(47).unwrap(), big(5));
}

#[test]
fn interval_extremes_for_a5() {
    let k = 255usize;
    let q = gap_counts(k as u64, 1, 5 * k + 1).unwrap();
    let rho = partition_ineq::partition::residue_counts(&PartSetSpec::andrews_t(5, k as u64).unwrap(), 5 * k + 1);
    let rows = [(2 * k + 6, 3 * k + 1, 131u64, 16u64), (3 * k + 1, 4 * k + 1, 256, 45), (4 * k + 1, 5 * k + 1, 5845, 107)];
    for (lo, hi, q_min, rho_max) in rows {
        assert_eq!(q[lo..=hi].iter().min().unwrap(), &big(q_min));
        assert_eq!(rho[lo..=hi].iter().max().unwrap(), &big(rho_max));
    }
}

#[test]
fn boundary_counts_at_other_d() {
    for d in [40u64, 63] {
        let s = PartSetSpec::residue_pair_minus(d, 1).unwrap();
        assert_eq!(count_residue(2 * d - 2, &s), big(2));
        assert_eq!(count_residue(4 * d - 1, &s), big(12));
        assert_eq!(count_residue(5 * d, &s), big(26));
    }
    for d in [13u64, 20] {
        let s = PartSetSpec::residue_pair_minus(d - 1, 1).unwrap();
        let got: Vec<_> = [2 * d - 4, 3 * d - 5, 4 * d - 6, 5 * d - 8, 5 * d].iter().map(|&n| count_residue(n, &s)).collect();
        assert_eq!(got, [2u64, 5, 11, 20, 36].map(big));
    }
}
