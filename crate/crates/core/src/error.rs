use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit must be at least 2, got {0}")]
    LimitTooSmall(u64),

    /// A query landed past the sieve; rebuild the oracle with a larger limit.
    #[error("query at {x} exceeds sieve limit {limit}")]
    BeyondSieve { x: i64, limit: u64 },

    #[error("prime index {index} exceeds the {count} primes stored up to the sieve limit")]
    PrimeIndexOutOfRange { index: i64, count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Bound tail is vacuous (1 - c/log(slope*n) <= 0).
    #[error("tail bound undefined at n = {n}, slope = {slope}")]
    VacuousTail { n: u64, slope: u32 },

    /// A state that would contradict a theorem, e.g. every candidate down to the
    /// certified lower bound eliminated. Always an implementation bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("certificate parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
