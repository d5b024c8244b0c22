use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n = {n} exceeds the enumeration ceiling of {ceiling}; use the DP counters instead")]
    CeilingExceeded { n: u64, ceiling: u64 },

    #[error("truncation order {order} exceeds the configured cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache mismatch for {descriptor}: stored table differs from a fresh computation")]
    CacheMismatch { descriptor: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
