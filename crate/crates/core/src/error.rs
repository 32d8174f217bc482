use thiserror::Error;

/// Errors surfaced by the library. Every fallible operation returns one of
/// these rather than panicking, so malformed input can never crash a caller.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("an all-zero covector has no canonical form")]
    DegenerateCovector,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("intersection lattice exceeds the configured cap of {cap} flats")]
    LatticeCapExceeded { cap: usize },

    #[error("interpolated point counts do not give an integer polynomial ({0}); retry with larger primes")]
    BadPrimes(String),

    #[error("sampler gave up after {rejections} rejections without an accepted sample")]
    SamplerExhausted { rejections: u64 },

    #[error("census of {size} tuples exceeds the cap of {cap}")]
    CensusCapExceeded { size: u128, cap: u128 },

    #[error("internal invariant violated: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
