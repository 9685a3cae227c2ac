use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole proximity in {what}: |denominator| = {magnitude:.3e}")]
    PoleProximity { what: String, magnitude: f64 },
    #[error("truncation overflow in {what}: tail not below tolerance within {cap} terms")]
    TruncationOverflow { what: &'static str, cap: i64 },
    #[error("finite-difference step underflow: {0}")]
    StepUnderflow(String),
    #[error("series grid mismatch: {0}")]
    GridMismatch(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("not a half-integer: {0:?}")]
    InvalidHalfInt(String),
}

pub type Result<T> = std::result::Result<T, Error>;
