use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: i64, bound: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("strand mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("word length {len} exceeds cap {cap}")]
    WordLengthOverflow { len: usize, cap: usize },
    #[error("modulus undefined for equal leading components")]
    UndefinedModulus,
    #[error("polynomial is zero in the elimination variable")]
    ZeroPolynomial,
    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
