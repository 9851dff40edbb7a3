use crate::gf::Level;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size p^(s*m) = {p}^{exp} exceeds the 2^32 cap")]
    SizeCapExceeded { p: u64, exp: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element level mismatch: {left:?} vs {right:?}")]
    LevelMismatch { left: Level, right: Level },
    #[error("element code {code} out of range for field of size {size}")]
    CodeOutOfRange { code: u64, size: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("support entries must be pairwise distinct")]
    DuplicateSupport,
    #[error("multiplier entries must be nonzero")]
    ZeroMultiplier,
    #[error("generator matrix does not have full row rank")]
    RankDeficient,
    #[error("enumeration cap exceeded for {what}: needs {required}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },
    #[error("malformed code file: {0}")]
    MalformedCodeFile(String),
    #[error("the submatrix-rank form of lambda is undefined for m = 1; use the weight form")]
    NgFormUndefined,
    #[error("lambda value below the proven minimum q^(n-km); upstream computation is broken")]
    LambdaBelowMinimum,
    #[error("inconsistent weight distribution: {0}")]
    InconsistentDistribution(String),
    #[error("unsupported RNG algorithm {0:?}")]
    UnsupportedRngAlgorithm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
