//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! criterion fails, except those recorded as unattainable as stated.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use partition_ineq::asymptotics::constants;
use partition_ineq::cache::Counter;
use partition_ineq::injections::{phi_mod_andrews, InjectionSuite, MultiplicityVector};
use partition_ineq::partition::{
    count_by_enumeration, delta_counts, residue_helpers, schur_counts, CountingFn, DeltaVariant, GapSpec, PartFilter,
    PartSetSpec, SchurFilter,
};
use partition_ineq::verifier::{
    check_identity, check_table_closed_forms, d2_factor_q3_first_mismatch, scan_family, FamilyId, IdentityId,
    InequalityFamily, Status, TableId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(d, α_d, A_d, M_d)` as tabulated.
const REFERENCE_ROWS: [(u64, f64, f64, u64); 12] = [
    (3, 0.682328, 0.566433, 5),
    (4, 0.724492, 0.504981, 6),
    (5, 0.754878, 0.459731, 7),
    (6, 0.778090, 0.424486, 7),
    (7, 0.796544, 0.395966, 8),
    (8, 0.811652, 0.372243, 8),
    (9, 0.824301, 0.352090, 9),
    (10, 0.835079, 0.334683, 9),
    (11, 0.844398, 0.319446, 10),
    (12, 0.852551, 0.305958, 10),
    (20, 0.893895, 0.234874, 14),
    (100, 0.966584, 0.091456, 35),
];

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails as literally stated; the analysis lives in the decisions ledger.
    Unattainable(String),
}

fn within(elapsed: Duration, budget_s: u64, detail: String) -> Outcome {
    if elapsed > Duration::from_secs(budget_s) {
        Outcome::Fail(format!("{detail}; over the {budget_s}s budget"))
    } else {
        Outcome::Pass(detail)
    }
}

fn constants_match() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (d, alpha, a_const, m) in REFERENCE_ROWS {
        let c = constants(d).unwrap();
        if (c.alpha - alpha).abs() > 1e-5 || (c.a_const - a_const).abs() > 1e-5 || c.m_const != m {
            bad.push(format!("d={d}: got ({:.6}, {:.6}, {})", c.alpha, c.a_const, c.m_const));
        }
    }
    if !bad.is_empty() {
        return Outcome::Fail(bad.join("; "));
    }
    within(start.elapsed(), 1, "12 rows match (alpha, A to 1e-5, M exact)".into())
}

fn boundary_counts() -> Outcome {
    let start = Instant::now();
    let count = |modulus: u64, n: u64| {
        let spec = PartSetSpec::residue_pair_minus(modulus, 1).unwrap();
        CountingFn::Parts(spec).count(n).unwrap()
    };
    let d = 31;
    let mut checks = vec![(d, 2 * d - 2, 2u64), (d, 4 * d - 1, 12), (d, 5 * d, 26)];
    let d = 12;
    checks.extend([(d - 1, 2 * d - 4, 2), (d - 1, 3 * d - 5, 5), (d - 1, 4 * d - 6, 11), (d - 1, 5 * d - 8, 20), (d - 1, 5 * d, 36)]);
    let wrong: Vec<_> = checks
        .iter()
        .filter(|&&(m, n, want)| count(m, n) != BigUint::from(want))
        .map(|&(m, n, want)| format!("modulus {m}, n={n}: got {} want {want}", count(m, n)))
        .collect();
    if !wrong.is_empty() {
        return Outcome::Fail(wrong.join("; "));
    }
    within(start.elapsed(), 5, "8 exact counts at d=31 and d=12".into())
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for id in [IdentityId::Euler, IdentityId::Rr1, IdentityId::Rr2, IdentityId::Schur, IdentityId::Scaling] {
        let r = check_identity(id, 500).unwrap();
        if !r.passed() {
            failed.push(format!("{id}: {} violations", r.violations.len()));
        }
    }
    let d2 = check_identity(IdentityId::D2Series, 300).unwrap();
    if !d2.passed() {
        failed.push(format!("d2_series: {} violations", d2.violations.len()));
    }
    if !failed.is_empty() {
        return Outcome::Fail(failed.join("; "));
    }
    let literal = d2_factor_q3_first_mismatch(300).unwrap();
    if literal != Some(2) {
        return Outcome::Fail(format!("expected the (1-q^3) form to break at n=2, got {literal:?}"));
    }
    let elapsed = start.elapsed();
    let detail = "euler, rr1, rr2, schur, scaling exact to n=500; d=2 series exact to n=300 with factor (1-q^2)";
    if elapsed > Duration::from_secs(30) {
        return Outcome::Fail(format!("{detail}; over the 30s budget"));
    }
    Outcome::Unattainable(format!(
        "{detail}; the factor (1-q^3) as written first fails at n=2 (1 vs 0), see README"
    ))
}

fn theorem_scans() -> Outcome {
    let start = Instant::now();
    let counter = Counter::dp();
    let scan = |id, d: &str, n: &str| {
        let family = InequalityFamily::new(id, d.parse().unwrap(), None, n.parse().unwrap()).unwrap();
        scan_family(&family, &counter, 4).unwrap()
    };
    let mut failed = Vec::new();
    for d in ["1", "2", "91..93"] {
        let r = scan(FamilyId::A3Minus, d, "1..1000");
        if r.status != Status::Pass {
            failed.push(format!("a3_minus d={d}: {} violations", r.violations.len()));
        }
    }
    let kp = scan(FamilyId::KangPark2Minus, "62..80", "1..1000");
    if kp.status != Status::Pass {
        failed.push(format!("kang_park_2minus: {} violations", kp.violations.len()));
    }
    let minus = scan(FamilyId::AlderMinusD3, "10..20", "1..5000");
    if minus.status == Status::Fail || !minus.violations.is_empty() {
        failed.push(format!("alder_minus_d3: {} violations", minus.violations.len()));
    }
    let plain = scan(FamilyId::AlderPlainD3, "10..20", "1..5000");
    let elapsed = start.elapsed();
    if !failed.is_empty() {
        return Outcome::Fail(failed.join("; "));
    }
    if elapsed > Duration::from_secs(300) {
        return Outcome::Fail("over the 5 min budget".into());
    }
    // Every d has the counterexample n = d+2: q = 2 against Q = 3.
    let all_at_d_plus_2 = (10..=20u64).all(|d| {
        plain.violations.iter().any(|v| v.d == Some(d) && v.n == d + 2 && v.lhs == 2u32.into() && v.rhs == 3u32.into())
    });
    if plain.violations.is_empty() {
        return Outcome::Pass("a3_minus, kang_park_2minus, alder_plain_d3 all violation-free".into());
    }
    if !all_at_d_plus_2 {
        return Outcome::Fail(format!("alder_plain_d3: {} unexpected violations", plain.violations.len()));
    }
    Outcome::Unattainable(format!(
        "a3_minus (d=1,2,91..93) and kang_park_2minus (d=62..80) clean to n=1000; \
         q_d^(1) >= Q_{{d-3}}^(1) has {} violations for d=10..20, n<=5000, starting at n=d+2 (2 vs 3) for every d; \
         with the part d-1 excluded it is clean; see README",
        plain.violations.len()
    ))
}

fn andrews_random_instances(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..count {
        let a = rng.gen_range(1..=5u64);
        let len = rng.gen_range(1..=6usize);
        let mut target = vec![a];
        for _ in 1..len {
            let last = *target.last().unwrap();
            target.push(last + a * rng.gen_range(1..=4u64));
        }
        let mut offset = 0;
        let source: Vec<u64> = target
            .iter()
            .map(|&y| {
                offset += rng.gen_range(0..=3u64);
                y + offset
            })
            .collect();
        let mults: Vec<(usize, u64)> = (0..len).map(|i| (i, rng.gen_range(0..=4u64))).collect();
        let lambda = MultiplicityVector::new(source, mults).map_err(|e| e.to_string())?;
        let image = phi_mod_andrews(&lambda, &target, a).map_err(|e| format!("trial {trial}: {e}"))?;
        let (h, _) = residue_helpers(lambda.weight(), a);
        if image.weight() != lambda.weight() + h {
            return Err(format!("trial {trial}: weight {} -> {}, h = {h}", lambda.weight(), image.weight()));
        }
        if image.base_parts() != target.as_slice() || (1..len).any(|i| image.multiplicity(i) != lambda.multiplicity(i)) {
            return Err(format!("trial {trial}: image {image} does not keep indices"));
        }
    }
    Ok(())
}

fn injections() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for suite in [
        InjectionSuite::SToT5 { d: 31, n_lo: 156, n_hi: 170 },
        InjectionSuite::Glaisher { n_max: 40 },
        InjectionSuite::PhiD2 { m_max: 120 },
    ] {
        let r = suite.run().unwrap();
        if !r.passed() || r.domain_size == 0 {
            return Outcome::Fail(format!("{suite}: {} failures of {}", r.failures.len(), r.domain_size));
        }
        parts.push(format!("{suite} {} inputs", r.domain_size));
    }
    if let Err(e) = andrews_random_instances(1000, 0x5eed) {
        return Outcome::Fail(e);
    }
    parts.push("phi_mod_andrews 1000 random instances".into());
    within(start.elapsed(), 120, parts.join(", "))
}

fn tables() -> Outcome {
    let start = Instant::now();
    for d in [31, 63, 64] {
        let r = check_table_closed_forms(TableId::SVsT5, d, 0, 50).unwrap();
        if !r.passed() {
            return Outcome::Fail(format!("s_vs_t5 d={d}: {:?}", r.violations));
        }
    }
    let a = 5;
    let r = check_table_closed_forms(TableId::MinusMinusVsScaledT, (a << (a + 3)) - a, a, 100).unwrap();
    if !r.passed() {
        return Outcome::Fail(format!("minusminus_vs_scaled_t: {:?}", r.violations));
    }
    let k = (1 << (a + 3)) - 1;
    let r = check_identity(IdentityId::IntervalBounds { a, k }, 0).unwrap();
    if !r.passed() {
        return Outcome::Fail(format!("interval bounds a=5 k={k}: {:?}", r.violations));
    }
    within(
        start.elapsed(),
        60,
        format!("closed forms d=31,63,64 (only i=2 undominated); dominance a=5 i<=100; interval bounds a=5 k={k}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    const N: u64 = 60;
    let mut checked = 0usize;
    let mut check = |label: String, filter: &dyn PartFilter, dp: Vec<BigUint>| -> Result<(), String> {
        for n in 0..=N {
            let brute = count_by_enumeration(n, filter, N).unwrap();
            if brute != dp[n as usize] {
                return Err(format!("{label} n={n}: DP {} vs enumeration {brute}", dp[n as usize]));
            }
            checked += 1;
        }
        Ok(())
    };
    let mut run = || -> Result<(), String> {
        check("schur".into(), &SchurFilter, schur_counts(N as usize))?;
        for d in 1..=12u64 {
            let mut specs: Vec<PartSetSpec> = Vec::new();
            for a in 1..=5u64 {
                let gap = GapSpec::new(a, d).unwrap();
                check(format!("q d={d} a={a}"), &gap, CountingFn::Gap { d, a }.table(N as usize).unwrap())?;
                for v in DeltaVariant::ALL {
                    if let Ok(s) = v.part_set(d, a) {
                        specs.push(s);
                    }
                }
                specs.push(PartSetSpec::andrews_t(a, d).unwrap());
                specs.push(PartSetSpec::scaled_t(a, a, d).unwrap());
            }
            specs.extend(PartSetSpec::s_set(d));
            specs.extend(PartSetSpec::yee_g(d));
            for s in specs {
                check(format!("{s}"), &s, CountingFn::Parts(s.clone()).table(N as usize).unwrap())?;
            }
        }
        for (d, a) in (1..=12u64).flat_map(|d| (1..=5u64.min(d + 2)).map(move |a| (d, a))) {
            let p = delta_counts(d, a, DeltaVariant::Plain, N as usize).unwrap();
            let m = delta_counts(d, a, DeltaVariant::Minus, N as usize).unwrap();
            let mm = delta_counts(d, a, DeltaVariant::MinusMinus, N as usize).unwrap();
            let broken = (0..=N as usize).find(|&n| !(mm[n] >= m[n] && m[n] >= p[n]));
            if let Some(n) = broken {
                let show = |x: &BigInt| x.to_string();
                return Err(format!("delta chain d={d} a={a} n={n}: {} {} {}", show(&mm[n]), show(&m[n]), show(&p[n])));
            }
        }
        Ok(())
    };
    match run() {
        Err(e) => Outcome::Fail(e),
        Ok(()) => within(
            start.elapsed(),
            300,
            format!("{checked} (function, n) pairs agree for d<=12, a<=5, n<=60; delta chain holds on the grid"),
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("asymptotic constants", constants_match),
        ("exact boundary counts", boundary_counts),
        ("identity suite", identity_suite),
        ("inequality scans", theorem_scans),
        ("injection verification", injections),
        ("part-table validation", tables),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failures = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failures += 1;
                ("FAIL", d)
            }
            Outcome::Unattainable(d) => ("FAIL (unattainable as stated)", d),
        };
        println!("criterion {} {name}: {tag} [{secs:.2}s] {detail}", i + 1);
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
