use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{r_index, PartFilter};
use crate::error::{domain, Error, Result};

/// Allowed parts given by residue classes modulo `modulus`, minus a finite
/// set of excluded parts. Classes listed in `distinct` admit each part at
/// most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartSetSpec {
    modulus: u64,
    residues: BTreeSet<u64>,
    excluded: BTreeSet<u64>,
    distinct: BTreeSet<u64>,
}

impl PartSetSpec {
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        excluded: impl IntoIterator<Item = u64>,
        distinct: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if modulus == 0 {
            return domain("part-set modulus must be positive");
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        let excluded: BTreeSet<u64> = excluded.into_iter().collect();
        let distinct: BTreeSet<u64> = distinct.into_iter().collect();
        if residues.is_empty() {
            return domain("part set has no residue classes (empty part set)");
        }
        if let Some(r) = residues.iter().find(|&&r| r >= modulus) {
            return domain(format!("residue {r} is not reduced modulo {modulus}"));
        }
        if let Some(r) = distinct.iter().find(|r| !residues.contains(r)) {
            return domain(format!("distinct class {r} is not one of the residues"));
        }
        if excluded.contains(&0) {
            return domain("excluded parts must be positive");
        }
        Ok(PartSetSpec { modulus, residues, excluded, distinct })
    }

    /// Parts congruent to `±a` modulo `modulus`.
    pub fn residue_pair(modulus: u64, a: u64) -> Result<Self> {
        if modulus == 0 {
            return domain("part-set modulus must be positive");
        }
        let r = a % modulus;
        Self::new(modulus, [r, (modulus - r) % modulus], [], [])
    }

    /// Parts `≡ ±a (mod modulus)` without the part `modulus - a`.
    pub fn residue_pair_minus(modulus: u64, a: u64) -> Result<Self> {
        Self::check_minus_range(modulus, a)?;
        Ok(Self::residue_pair(modulus, a)?.excluding([modulus - a]))
    }

    /// Parts `≡ ±a (mod modulus)` without the parts `a` and `modulus - a`.
    pub fn residue_pair_minus_minus(modulus: u64, a: u64) -> Result<Self> {
        Self::check_minus_range(modulus, a)?;
        Ok(Self::residue_pair(modulus, a)?.excluding([a, modulus - a]))
    }

    fn check_minus_range(modulus: u64, a: u64) -> Result<()> {
        if a == 0 || a >= modulus {
            return domain(format!(
                "the excluded-part variants need 1 <= a <= d + 2 (got a = {a}, d + 3 = {modulus}); \
                 choose a smaller a or a larger d"
            ));
        }
        Ok(())
    }

    /// The part set of `Q_d^(a)`: parts `≡ ±a (mod d + 3)`.
    pub fn q_plain(d: u64, a: u64) -> Result<Self> {
        Self::residue_pair(d + 3, a)
    }

    /// The part set of `Q_d^(a,-)`.
    pub fn q_minus(d: u64, a: u64) -> Result<Self> {
        Self::residue_pair_minus(d + 3, a)
    }

    /// The part set of `Q_d^(a,-,-)`.
    pub fn q_minus_minus(d: u64, a: u64) -> Result<Self> {
        Self::residue_pair_minus_minus(d + 3, a)
    }

    /// `T^l_{a,d}`: parts `≡ l, (d+2)l, (d+4)l, …, (d+2^{a-1})l (mod 2dl)`.
    /// With `l = 1` this is Andrews' `T_{a,d}`.
    pub fn scaled_t(scale: u64, classes: u64, d: u64) -> Result<Self> {
        if scale == 0 || classes == 0 || d == 0 {
            return domain("T-sets need scale, class count and d all >= 1");
        }
        if classes > 62 {
            return domain("T-set class count too large");
        }
        let modulus = 2 * d * scale;
        let residues = std::iter::once(scale % modulus)
            .chain((1..classes).map(|j| ((d + (1u64 << j)) * scale) % modulus));
        Self::new(modulus, residues, [], [])
    }

    /// Andrews' `T_{r,d}`.
    pub fn andrews_t(r: u64, d: u64) -> Result<Self> {
        Self::scaled_t(1, r, d)
    }

    /// `S_d`: parts `≡ ±1 (mod d)` without `d - 1`. Same set as `Q_{d-3}^(1,-)`.
    pub fn s_set(d: u64) -> Result<Self> {
        if d < 2 {
            return domain("S_d needs d >= 2");
        }
        Self::residue_pair_minus(d, 1)
    }

    /// Yee's set for `G_d^(1)`: classes `1, d+2, …, d+2^{r_d-2}` (mod 2d)
    /// unrestricted, class `d + 2^{r_d-1}` with distinct parts.
    pub fn yee_g(d: u64) -> Result<Self> {
        if d < 3 {
            return domain(format!("G_d^(1) needs d >= 3 so that r_d >= 2 (got d = {d})"));
        }
        let r = r_index(d)? as u64;
        let modulus = 2 * d;
        let distinct_class = (d + (1u64 << (r - 1))) % modulus;
        let residues = std::iter::once(1 % modulus)
            .chain((1..r - 1).map(|j| (d + (1u64 << j)) % modulus))
            .chain(std::iter::once(distinct_class));
        Self::new(modulus, residues, [], [distinct_class])
    }

    pub fn odd_parts() -> Self {
        Self::new(2, [1], [], []).expect("valid")
    }

    pub fn distinct_parts() -> Self {
        Self::new(1, [0], [], [0]).expect("valid")
    }

    /// Adds explicit exclusions.
    pub fn excluding(mut self, parts: impl IntoIterator<Item = u64>) -> Self {
        self.excluded.extend(parts.into_iter().filter(|&p| p > 0));
        self
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    pub fn distinct_residues(&self) -> &BTreeSet<u64> {
        &self.distinct
    }

    pub fn contains(&self, part: u64) -> bool {
        part >= 1 && self.residues.contains(&(part % self.modulus)) && !self.excluded.contains(&part)
    }

    pub fn is_distinct(&self, part: u64) -> bool {
        self.distinct.contains(&(part % self.modulus))
    }

    /// Allowed parts `<= max`, ascending.
    pub fn elements_up_to(&self, max: u64) -> Vec<u64> {
        self.iter().take_while(|&x| x <= max).collect()
    }

    /// The `count` smallest allowed parts, ascending.
    pub fn first_elements(&self, count: usize) -> Vec<u64> {
        self.iter().take(count).collect()
    }

    /// All allowed parts in increasing order (an infinite iterator).
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let m = self.modulus;
        (0u64..)
            .flat_map(move |block| self.residues.iter().map(move |&r| block * m + r))
            .filter(move |&x| x >= 1 && !self.excluded.contains(&x))
    }

    /// Smallest allowed part.
    pub fn min_part(&self) -> u64 {
        self.iter().next().expect("nonempty residue set yields parts")
    }
}

impl PartFilter for PartSetSpec {
    fn admits_part(&self, part: u64) -> bool {
        self.contains(part)
    }

    fn admits_pair(&self, larger: u64, smaller: u64) -> bool {
        larger != smaller || !self.is_distinct(smaller)
    }
}

/// Canonical text form `m=5;r=1,4;x=;u=`. Used as a stable cache key.
impl fmt::Display for PartSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "m={};r={};x={};u={}",
            self.modulus,
            join(&self.residues),
            join(&self.excluded),
            join(&self.distinct)
        )
    }
}

impl FromStr for PartSetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut modulus = None;
        let (mut residues, mut excluded, mut distinct) = (Vec::new(), Vec::new(), Vec::new());
        for field in s.split(';') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("part set field `{field}` lacks `=`")))?;
            let list = || -> Result<Vec<u64>> {
                value
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
                    .collect()
            };
            match key.trim() {
                "m" => modulus = Some(value.trim().parse().map_err(|_| Error::Parse(format!("bad modulus `{value}`")))?),
                "r" => residues = list()?,
                "x" => excluded = list()?,
                "u" => distinct = list()?,
                other => return Err(Error::Parse(format!("unknown part set field `{other}`"))),
            }
        }
        let modulus = modulus.ok_or_else(|| Error::Parse("part set needs m=<modulus>".into()))?;
        PartSetSpec::new(modulus, residues, excluded, distinct)
    }
}

/// Which residue count `Δ` subtracts: `Q_d^(a)`, `Q_d^(a,-)` or `Q_d^(a,-,-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaVariant {
    Plain,
    Minus,
    MinusMinus,
}

impl DeltaVariant {
    pub const ALL: [DeltaVariant; 3] = [DeltaVariant::Plain, DeltaVariant::Minus, DeltaVariant::MinusMinus];

    pub fn part_set(self, d: u64, a: u64) -> Result<PartSetSpec> {
        match self {
            DeltaVariant::Plain => PartSetSpec::q_plain(d, a),
            DeltaVariant::Minus => PartSetSpec::q_minus(d, a),
            DeltaVariant::MinusMinus => PartSetSpec::q_minus_minus(d, a),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeltaVariant::Plain => "Q",
            DeltaVariant::Minus => "Qminus",
            DeltaVariant::MinusMinus => "Qminusminus",
        }
    }
}
