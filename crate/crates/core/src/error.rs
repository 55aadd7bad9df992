use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("matrix is not monomial")]
    NotMonomial,
    #[error("unknown building family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what} {requested} exceeds the configured cap {cap}")]
    ResourceCap { what: &'static str, requested: usize, cap: usize },
    #[error("filtration profile of word {word:?}: exponents sum to {sum}, expected length {length}")]
    ProfileInconsistency { word: Vec<usize>, sum: i64, length: usize },
    #[error("chambers {a} and {b} label the same coset")]
    DuplicateCoset { a: usize, b: usize },
    #[error("chamber {to} is unreachable from chamber {from} inside the generated ball")]
    Unreachable { from: usize, to: usize },
    #[error("chamber id {0} out of range")]
    NoSuchChamber(usize),
    #[error("vertex identification conflict: merged footprints differ by {deviation:e}")]
    IdentificationConflict { deviation: f64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid scene: {0}")]
    Scene(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
