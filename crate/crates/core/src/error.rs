use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {d} is not prime (smallest factor {factor})")]
    NonPrimeDimension { d: usize, factor: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("sample count must be at least 1")]
    InvalidSampleCount,

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("family is already a Markovian semigroup")]
    AlreadySemigroup,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("operation not supported for {0}")]
    UnsupportedFamily(&'static str),

    #[error("invalid step: {0}")]
    InvalidStep(String),

    #[error("Laplace transform has a pole at s = {0}")]
    PoleAtS(f64),

    #[error("not a valid state: {0}")]
    NotAState(String),

    #[error("negative discriminant Z = {0}")]
    NegativeDiscriminant(f64),

    #[error("eigenvalue {0} yields output spectrum outside [0, 1]")]
    InvalidEigenvalue(f64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
