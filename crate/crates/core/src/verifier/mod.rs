//! Finite confrontation of inequality families, chains, closed-form part
//! tables and classical identities with exact counts.

mod chain;
mod family;
mod identity;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::injections::InjectionReport;

pub use chain::{check_chain, ChainId, ChainLink, ChainReport, Relation};
pub use family::{scan_family, FamilyId, InequalityFamily};
pub use identity::{check_identity, d2_factor_q3_first_mismatch, interval_bounds, IdentityId, IntervalBound, SCHUR_ENUMERATION_LIMIT};
pub use tables::{check_table_closed_forms, minusminus_closed_form, s_vs_t5_closed_form, TableId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Violations (if any) lie outside every proven or conjectured range.
    Exploratory,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Exploratory => "exploratory",
        })
    }
}

/// One point where the expected relation failed, with both sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub d: Option<u64>,
    pub a: Option<u64>,
    pub n: u64,
    #[serde(serialize_with = "crate::decimal::biguint")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::decimal::biguint")]
    pub rhs: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Violation {
    pub fn new(d: Option<u64>, a: Option<u64>, n: u64, lhs: impl Into<BigUint>, rhs: impl Into<BigUint>) -> Self {
        Violation { d, a, n, lhs: lhs.into(), rhs: rhs.into(), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    /// Parameter name -> range string, e.g. `"d" -> "91..93"`.
    pub ranges: BTreeMap<String, String>,
    pub violations: Vec<Violation>,
    /// Number of points compared.
    pub checked: u64,
    pub elapsed_ms: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>) -> Self {
        VerificationReport {
            family: family.into(),
            ranges: BTreeMap::new(),
            violations: Vec::new(),
            checked: 0,
            elapsed_ms: 0,
            status: Status::Pass,
            notes: Vec::new(),
        }
    }

    pub fn with_range(mut self, name: &str, range: impl fmt::Display) -> Self {
        self.ranges.insert(name.to_string(), range.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sets `status` to pass or fail from the violation list.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.status = if self.violations.is_empty() { Status::Pass } else { Status::Fail };
        self
    }

    /// Associative merge of two shards of the same family.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.violations.extend(other.violations);
        self.violations.sort();
        self.checked += other.checked;
        self.elapsed_ms = self.elapsed_ms.max(other.elapsed_ms);
        self.status = self.status.max(other.status);
        for (k, v) in other.ranges {
            self.ranges.entry(k).or_insert(v);
        }
        self.notes.extend(other.notes);
        self
    }

    /// Writes one CSV row per violation, with a header row.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> crate::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["family", "d", "a", "n", "lhs", "rhs", "detail"])?;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        for v in &self.violations {
            w.write_record([
                self.family.clone(),
                opt(v.d),
                opt(v.a),
                v.n.to_string(),
                v.lhs.to_string(),
                v.rhs.to_string(),
                v.detail.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl From<(&str, InjectionReport)> for VerificationReport {
    fn from((name, inj): (&str, InjectionReport)) -> Self {
        let mut report = VerificationReport::new(name);
        report.checked = inj.domain_size as u64;
        report.notes = inj
            .failures
            .iter()
            .map(|f| serde_json::to_string(f).expect("failure serializes"))
            .collect();
        report.notes.insert(0, format!("{} inputs, {} distinct images", inj.domain_size, inj.distinct_images));
        report.status = if inj.passed() { Status::Pass } else { Status::Fail };
        report
    }
}
