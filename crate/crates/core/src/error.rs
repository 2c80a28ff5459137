use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported field parameters: {0}")]
    FieldParameters(String),

    #[error("elements belong to different fields")]
    MixedFields,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("cannot embed GF({from}) into GF({into}): {reason}")]
    Embedding {
        from: u64,
        into: u64,
        reason: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },

    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("invalid code parameters: {0}")]
    CodeParameters(String),

    #[error("{what} exceeds guard: {detail}")]
    Guard { what: &'static str, detail: String },

    #[error("invalid weight distribution: {0}")]
    InvalidDistribution(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
