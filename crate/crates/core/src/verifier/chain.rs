use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::partition::{residue_helpers, CountingFn, DeltaVariant, PartSetSpec};

/// Reduction chains from general `a` to `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainId {
    /// The general-`a` chain specialised to `a = 3`.
    A3Chain,
    /// `q_d^(a) >= q_k^(1) >= Q_{k-3}^(1,-) = Q_{d+h-3}^(a,-) >= Q_d^(a,-)`.
    StrengthenChain,
    /// `q_d^(a) >= q_k^(1) >= ρ(T^1_{a,k}) = ρ(T^a_{a,k}) >= Q_d^(a,-,-)`.
    GenKpChain,
    /// `q_d^(a) >= q_k^(1) >= Q_{k-4}^(1,-) = Q_{d+h-a-3}^(a,-) >= Q_d^(a,-)`.
    ConditionalChain,
}

impl ChainId {
    pub const ALL: [ChainId; 4] = [ChainId::A3Chain, ChainId::StrengthenChain, ChainId::GenKpChain, ChainId::ConditionalChain];

    pub fn name(self) -> &'static str {
        match self {
            ChainId::A3Chain => "a3_chain",
            ChainId::StrengthenChain => "strengthen_chain",
            ChainId::GenKpChain => "genkp_chain",
            ChainId::ConditionalChain => "conditional_chain",
        }
    }
}

impl fmt::Display for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChainId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChainId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            Error::Parse(format!(
                "unknown chain `{s}`; expected a3_chain, strengthen_chain, genkp_chain or conditional_chain"
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub lhs_label: String,
    #[serde(serialize_with = "crate::decimal::biguint")]
    pub lhs: BigUint,
    pub relation: Relation,
    pub rhs_label: String,
    #[serde(serialize_with = "crate::decimal::biguint")]
    pub rhs: BigUint,
    pub holds: bool,
}

impl ChainLink {
    fn new(lhs_label: String, lhs: BigUint, relation: Relation, rhs_label: String, rhs: BigUint) -> Self {
        let holds = match relation {
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        };
        ChainLink { lhs_label, lhs, relation, rhs_label, rhs, holds }
    }
}

impl fmt::Display for ChainLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        write!(
            f,
            "{} = {} {rel} {} = {}  [{}]",
            self.lhs_label,
            self.lhs,
            self.rhs_label,
            self.rhs,
            if self.holds { "ok" } else { "FAILS" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub chain: String,
    pub d: u64,
    pub a: u64,
    pub n: u64,
    pub links: Vec<ChainLink>,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

fn q(d: u64, a: u64, n: u64) -> Result<(String, BigUint)> {
    Ok((format!("q_{d}^({a})({n})"), CountingFn::Gap { d, a }.count(n)?))
}

fn q_minus(d: u64, a: u64, n: u64) -> Result<(String, BigUint)> {
    let f = CountingFn::Residue { variant: DeltaVariant::Minus, d, a };
    Ok((format!("Q_{d}^({a},-)({n})"), f.count(n)?))
}

fn link(lhs: &(String, BigUint), rel: Relation, rhs: &(String, BigUint)) -> ChainLink {
    ChainLink::new(lhs.0.clone(), lhs.1.clone(), rel, rhs.0.clone(), rhs.1.clone())
}

/// Evaluates every link of `chain` at `(d, a, n)` independently. Hypotheses
/// of individual links are checked first; a violated one is a domain error
/// naming the link.
pub fn check_chain(chain: ChainId, d: u64, a: u64, n: u64) -> Result<ChainReport> {
    if d == 0 || a == 0 || n == 0 {
        return domain("chains need d, a, n >= 1");
    }
    if chain == ChainId::A3Chain && a != 3 {
        return domain(format!("a3_chain fixes a = 3 (got a = {a}); use strengthen_chain for other a"));
    }
    if a > d + 2 {
        return domain(format!("a = {a} exceeds d + 2 = {}", d + 2));
    }
    if n < d + 2 * a {
        return domain(format!("link 1 (reduction to a = 1) needs n >= d + 2a = {}, got n = {n}", d + 2 * a));
    }
    let (h, k) = residue_helpers(d, a);
    let (hn, m) = residue_helpers(n, a);
    let top = q(d, a, n)?;
    let reduced = q(k, 1, m)?;
    let mut links = vec![link(&top, Relation::Ge, &reduced)];

    match chain {
        ChainId::A3Chain | ChainId::StrengthenChain => {
            if h > 3 {
                return domain(format!("link 4 needs h_d = (-d mod a) <= 3, got {h}"));
            }
            if k < 3 {
                return domain(format!("link 2 needs ceil(d/a) >= 3, got {k}"));
            }
            let alder = q_minus(k - 3, 1, m)?;
            let lifted = q_minus(d + h - 3, a, n + hn)?;
            let target = q_minus(d, a, n)?;
            links.push(link(&reduced, Relation::Ge, &alder));
            links.push(link(&alder, Relation::Eq, &lifted));
            links.push(link(&lifted, Relation::Ge, &target));
        }
        ChainId::GenKpChain => {
            let t1 = PartSetSpec::scaled_t(1, a, k)?;
            let ta = PartSetSpec::scaled_t(a, a, k)?;
            let rho1 = (format!("rho(T^1_{{{a},{k}}};{m})"), CountingFn::Parts(t1).count(m)?);
            let rhoa = (format!("rho(T^{a}_{{{a},{k}}};{})", n + hn), CountingFn::Parts(ta).count(n + hn)?);
            let mm = CountingFn::Residue { variant: DeltaVariant::MinusMinus, d, a };
            let target = (format!("Q_{d}^({a},-,-)({n})"), mm.count(n)?);
            links.push(link(&reduced, Relation::Ge, &rho1));
            links.push(link(&rho1, Relation::Eq, &rhoa));
            links.push(link(&rhoa, Relation::Ge, &target));
        }
        ChainId::ConditionalChain => {
            if k < 4 {
                return domain(format!("link 2 needs ceil(d/a) >= 4, got {k}"));
            }
            let alder = q_minus(k - 4, 1, m)?;
            let lifted = q_minus(d + h - a - 3, a, n + hn)?;
            let target = q_minus(d, a, n)?;
            links.push(link(&reduced, Relation::Ge, &alder));
            links.push(link(&alder, Relation::Eq, &lifted));
            links.push(link(&lifted, Relation::Ge, &target));
        }
    }
    Ok(ChainReport { chain: chain.name().into(), d, a, n, links })
}
