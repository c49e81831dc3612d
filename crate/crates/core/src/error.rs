use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("job {job}: processing times must be >= 1 (got p1={p1}, p2={p2})")]
    NonPositiveTime { job: usize, p1: i64, p2: i64 },

    #[error("instance too large: {n} jobs with p_max={p_max} may overflow 64-bit sums")]
    Overflow { n: usize, p_max: i64 },

    #[error("sequence is not a permutation of 0..{n}")]
    NotPermutation { n: usize },

    #[error("brute force enumeration limited to n <= {limit} jobs (got {n})")]
    TooManyJobs { n: usize, limit: usize },

    #[error("rank {k} out of range 1..={len}")]
    RankOutOfRange { k: usize, len: usize },

    #[error("alpha must lie strictly between 0 and 1 (got {0})")]
    InvalidAlpha(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
