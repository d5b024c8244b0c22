use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::{Status, VerificationReport, Violation};
use crate::cache::Counter;
use crate::error::{domain, Error, Result};
use crate::partition::{residue_helpers, CountingFn, DeltaVariant};
use crate::range::ParamRange;

/// Inequality families `lhs(n) >= rhs(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `q_d^(1) >= Q_d^(1)`.
    Alder,
    /// `q_d^(2) >= Q_d^(2,-)`.
    KangPark2Minus,
    /// `q_d^(3) >= Q_d^(3,-)`.
    A3Minus,
    /// `q_d^(a) >= Q_d^(a,-)`, skipping `n = d+3+a` when `a >= 4` and `a | d+3`.
    GeneralAMinus,
    /// `q_d^(a) >= Q_d^(a,-,-)`.
    GeneralAMinusMinus,
    /// `q_d^(1) >= Q_{d-4}^(1,-)` for `n >= d+2`.
    AlderMinusD4,
    /// `q_d^(1) >= Q_{d-3}^(1,-)` for `n >= d+2`.
    AlderMinusD3,
    /// `q_d^(1) >= Q_{d-3}^(1)` for `n >= d+2`.
    AlderPlainD3,
    /// `q_d^(2) >= Q_d^(2)`, known to fail; never claimed.
    Delta2Plain,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::Alder,
        FamilyId::KangPark2Minus,
        FamilyId::A3Minus,
        FamilyId::GeneralAMinus,
        FamilyId::GeneralAMinusMinus,
        FamilyId::AlderMinusD4,
        FamilyId::AlderMinusD3,
        FamilyId::AlderPlainD3,
        FamilyId::Delta2Plain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Alder => "alder",
            FamilyId::KangPark2Minus => "kang_park_2minus",
            FamilyId::A3Minus => "a3_minus",
            FamilyId::GeneralAMinus => "general_a_minus",
            FamilyId::GeneralAMinusMinus => "general_a_minusminus",
            FamilyId::AlderMinusD4 => "alder_minus_d4",
            FamilyId::AlderMinusD3 => "alder_minus_d3",
            FamilyId::AlderPlainD3 => "alder_plain_d3",
            FamilyId::Delta2Plain => "delta2_plain",
        }
    }

    /// `Some(a)` for families with a built-in `a`.
    pub fn fixed_a(self) -> Option<u64> {
        match self {
            FamilyId::GeneralAMinus | FamilyId::GeneralAMinusMinus => None,
            FamilyId::KangPark2Minus | FamilyId::Delta2Plain => Some(2),
            FamilyId::A3Minus => Some(3),
            _ => Some(1),
        }
    }

    fn min_d(self) -> u64 {
        match self {
            FamilyId::AlderMinusD4 => 4,
            FamilyId::AlderMinusD3 | FamilyId::AlderPlainD3 => 3,
            _ => 1,
        }
    }

    pub fn lhs(self, d: u64, a: u64) -> CountingFn {
        CountingFn::Gap { d, a }
    }

    pub fn rhs(self, d: u64, a: u64) -> Result<CountingFn> {
        if d < self.min_d() {
            return domain(format!("family {} needs d >= {}, got d = {d}", self.name(), self.min_d()));
        }
        let (variant, rd) = match self {
            FamilyId::Alder | FamilyId::Delta2Plain => (DeltaVariant::Plain, d),
            FamilyId::KangPark2Minus | FamilyId::A3Minus | FamilyId::GeneralAMinus => (DeltaVariant::Minus, d),
            FamilyId::GeneralAMinusMinus => (DeltaVariant::MinusMinus, d),
            FamilyId::AlderMinusD4 => (DeltaVariant::Minus, d - 4),
            FamilyId::AlderMinusD3 => (DeltaVariant::Minus, d - 3),
            FamilyId::AlderPlainD3 => (DeltaVariant::Plain, d - 3),
        };
        if variant != DeltaVariant::Plain && a > rd + 2 {
            return domain(format!(
                "family {} at d = {d}: a = {a} exceeds d + 2 = {}; restrict --a to 1..{}",
                self.name(),
                rd + 2,
                rd + 2
            ));
        }
        variant.part_set(rd, a)?;
        Ok(CountingFn::Residue { variant, d: rd, a })
    }

    /// Smallest `n` inside the family's statement.
    pub fn min_n(self, d: u64) -> u64 {
        match self {
            FamilyId::AlderMinusD4 | FamilyId::AlderMinusD3 | FamilyId::AlderPlainD3 => d + 2,
            _ => 1,
        }
    }

    pub fn is_excluded(self, d: u64, a: u64, n: u64) -> bool {
        self == FamilyId::GeneralAMinus && a >= 4 && (d + 3) % a == 0 && n == d + 3 + a
    }

    /// Whether the inequality at `(d, a, n)` is asserted by a theorem or a
    /// standing conjecture. Violations elsewhere are exploratory.
    pub fn is_claimed(self, d: u64, a: u64, n: u64) -> bool {
        match self {
            FamilyId::Alder | FamilyId::KangPark2Minus | FamilyId::A3Minus | FamilyId::GeneralAMinusMinus => true,
            FamilyId::GeneralAMinus => {
                if a <= 3 {
                    return true;
                }
                let (h, k) = residue_helpers(d, a);
                let (_, m) = residue_helpers(n, a);
                (h <= 3 && (k == 31 || k >= 63)) || (k >= 12 && m <= 5 * k)
            }
            FamilyId::AlderMinusD4 => d >= 12,
            FamilyId::AlderMinusD3 => d == 31 || d >= 63 || (d >= 31 && n <= 5 * d),
            FamilyId::AlderPlainD3 => d >= 10,
            FamilyId::Delta2Plain => false,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = FamilyId::ALL.iter().map(|f| f.name()).collect();
            Error::Parse(format!("unknown family `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// A family together with finite parameter ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityFamily {
    pub id: FamilyId,
    pub d: ParamRange,
    pub a: ParamRange,
    pub n: ParamRange,
}

impl InequalityFamily {
    /// `a` may be omitted for families with a built-in `a`, and must match it
    /// if given. Every `(d, a)` cell is validated up front.
    pub fn new(id: FamilyId, d: ParamRange, a: Option<ParamRange>, n: ParamRange) -> Result<Self> {
        let a = match (id.fixed_a(), a) {
            (Some(fixed), None) => ParamRange::single(fixed),
            (Some(fixed), Some(given)) if given.values() == [fixed] => given,
            (Some(fixed), Some(given)) => {
                return domain(format!("family {id} has a = {fixed} built in; drop --a or pass --a {fixed} (got {given})"))
            }
            (None, Some(given)) => given,
            (None, None) => return domain(format!("family {id} needs an a range, e.g. --a 4..6")),
        };
        if a.min() == 0 {
            return domain("a must be at least 1");
        }
        let family = InequalityFamily { id, d, a, n };
        for (d, a) in family.cells() {
            id.rhs(d, a)?;
        }
        Ok(family)
    }

    pub fn cells(&self) -> Vec<(u64, u64)> {
        let a_values = self.a.values();
        self.d.values().into_iter().flat_map(|d| a_values.iter().map(move |&a| (d, a))).collect()
    }
}

struct CellResult {
    violations: Vec<Violation>,
    checked: u64,
    excluded: u64,
    claimed_failure: bool,
}

fn scan_cell(family: &InequalityFamily, counter: &Counter, d: u64, a: u64) -> Result<CellResult> {
    let id = family.id;
    let ns: Vec<u64> = family.n.values().into_iter().filter(|&n| n >= id.min_n(d)).collect();
    let mut out = CellResult { violations: Vec::new(), checked: 0, excluded: 0, claimed_failure: false };
    let Some(&n_max) = ns.last() else {
        return Ok(out);
    };
    let lhs = counter.table(&id.lhs(d, a), n_max as usize)?;
    let rhs = counter.table(&id.rhs(d, a)?, n_max as usize)?;
    for n in ns {
        if id.is_excluded(d, a, n) {
            out.excluded += 1;
            continue;
        }
        out.checked += 1;
        let (l, r) = (&lhs[n as usize], &rhs[n as usize]);
        if l < r {
            let mut v = Violation::new(Some(d), Some(a), n, l.clone(), r.clone());
            if id.is_claimed(d, a, n) {
                out.claimed_failure = true;
            } else {
                v = v.with_detail("unclaimed");
            }
            out.violations.push(v);
        }
    }
    Ok(out)
}

/// Evaluates `lhs >= rhs` at every in-range, non-excluded point, with `(d, a)`
/// cells spread over `workers` threads. Output does not depend on `workers`.
pub fn scan_family(family: &InequalityFamily, counter: &Counter, workers: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let cells = family.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start {workers} workers: {e}")))?;
    let results: Vec<CellResult> =
        pool.install(|| cells.par_iter().map(|&(d, a)| scan_cell(family, counter, d, a)).collect::<Result<_>>())?;

    let mut report = VerificationReport::new(family.id.name())
        .with_range("d", &family.d)
        .with_range("a", &family.a)
        .with_range("n", &family.n);
    let mut excluded = 0;
    let mut failed = false;
    for cell in results {
        report.violations.extend(cell.violations);
        report.checked += cell.checked;
        excluded += cell.excluded;
        failed |= cell.claimed_failure;
    }
    report.violations.sort();
    report.status = if failed {
        Status::Fail
    } else if report.violations.is_empty() {
        Status::Pass
    } else {
        Status::Exploratory
    };
    if excluded > 0 {
        report.notes.push(format!("{excluded} excluded points skipped"));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
