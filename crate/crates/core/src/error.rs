use thiserror::Error;

/// Errors surfaced by the coding/decoding primitives.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} exceeds the supported range (must be < 2^31)")]
    ModulusTooLarge(u64),

    #[error("linear system has no solution")]
    InconsistentSystem,

    #[error("rate too small: floor(n*R / log2 p) = 0")]
    RateTooSmall,

    #[error("enumeration of {required} items exceeds the cap of {cap}")]
    EnumerationTooLarge { required: u128, cap: u128 },

    #[error("exhaustive enumeration only supported up to dimension {max}, got {got}")]
    DimensionTooLarge { max: usize, got: usize },

    #[error("side information matrix has full rank {0}; receiver already knows every message")]
    FullRankSideInfo(usize),

    #[error("side information values are inconsistent with the matrix")]
    InconsistentSideInfo,

    #[error("subcode generator is rank deficient: rank {rank} < {expected}")]
    DegenerateSubcode { rank: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
