use crate::algebra::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("expected a field of pure level {expected}, found a term of level {found}")]
    NotPureLevel { expected: usize, found: usize },

    #[error("target level must be at least 1, got {0}")]
    InvalidLevel(usize),

    #[error("multi-index {0} is not resonant")]
    NonResonant(MultiIndex),

    #[error("the zero multi-index is not allowed here")]
    ZeroIndex,

    #[error("no value assigned to parameter `{0}`")]
    MissingAssignment(String),

    #[error("term {index} would expand with a negative exponent in component {component}")]
    NegativeExponent { index: MultiIndex, component: usize },

    #[error("linear part is not diagonal: {0}")]
    NonDiagonal(String),
}
