use thiserror::Error;

/// Errors raised by the rank-modulation toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("value {value} appears more than once")]
    Duplicate { value: u32 },
    #[error("value {value} is outside [{low}, {high}]")]
    OutOfRange { value: i64, low: i64, high: i64 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("symbol {symbol} appears {found} times, expected {expected}")]
    Multiplicity { symbol: u32, found: usize, expected: usize },
    #[error("expected {expected} block permutations, got {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("block {block} does not cover the interval [{low}, {high}]")]
    BlockInterval { block: u32, low: u32, high: u32 },
    #[error("length {n} is not {ell} x {m}")]
    Dimension { n: usize, ell: usize, m: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("n = {n} exceeds the exhaustive budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
