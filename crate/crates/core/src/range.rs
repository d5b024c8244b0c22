//! Inclusive parameter ranges written as `lo..hi`, optionally comma-joined
//! (`1..2,91..93`). A bare integer is the one-point range.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamRange {
    spans: Vec<(u64, u64)>,
}

impl ParamRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        Self::from_spans(vec![(lo, hi)])
    }

    pub fn single(value: u64) -> Self {
        ParamRange { spans: vec![(value, value)] }
    }

    pub fn from_spans(spans: Vec<(u64, u64)>) -> Result<Self> {
        if spans.is_empty() {
            return Err(Error::Parse("empty range".into()));
        }
        if let Some(&(lo, hi)) = spans.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::Parse(format!(
                "malformed range {lo}..{hi}: lower bound exceeds upper bound"
            )));
        }
        Ok(ParamRange { spans })
    }

    pub fn spans(&self) -> &[(u64, u64)] {
        &self.spans
    }

    /// Distinct values in ascending order.
    pub fn values(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.spans.iter().flat_map(|&(lo, hi)| lo..=hi).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn contains(&self, value: u64) -> bool {
        self.spans.iter().any(|&(lo, hi)| lo <= value && value <= hi)
    }

    pub fn min(&self) -> u64 {
        self.spans.iter().map(|s| s.0).min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.spans.iter().map(|s| s.1).max().unwrap_or(0)
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi)) in self.spans.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if lo == hi {
                write!(f, "{lo}")?;
            } else {
                write!(f, "{lo}..{hi}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim().parse::<u64>().map_err(|_| {
                Error::Parse(format!("malformed range `{s}`: expected `lo..hi` or an integer"))
            })
        };
        let spans = s
            .split(',')
            .map(|part| match part.split_once("..") {
                Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
                None => {
                    let v = parse(part)?;
                    Ok((v, v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ParamRange::from_spans(spans)
    }
}

impl Serialize for ParamRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spans_and_points() {
        let r: ParamRange = "1..2,91..93".parse().unwrap();
        assert_eq!(r.values(), vec![1, 2, 91, 92, 93]);
        assert_eq!(r.to_string(), "1..2,91..93");
        let p: ParamRange = "7".parse().unwrap();
        assert_eq!(p.values(), vec![7]);
        assert!("5..3".parse::<ParamRange>().is_err());
        assert!("a..3".parse::<ParamRange>().is_err());
    }
}
