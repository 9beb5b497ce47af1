use thiserror::Error;

pub type Result<T> = std::result::Result<T, PolyError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("empty input")]
    EmptyInput,
    #[error("ambient dimension {dim} exceeds configured maximum {max}")]
    DimensionLimit { dim: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not full-dimensional (dim {dim} in ambient dimension {ambient})")]
    NotFullDimensional { dim: isize, ambient: usize },
    #[error("invalid scale factor {0}")]
    InvalidScale(String),
    #[error("invalid divisor {0}")]
    InvalidDivisor(String),
    #[error("hyperplane arrangement has {count} hyperplanes, limit is {limit}")]
    ArrangementTooLarge { count: usize, limit: usize },
    #[error("polytope is not simple")]
    NotSimple,
    #[error("term is not a weak Minkowski summand of the reference polytope")]
    NotInSubalgebra,
    #[error("element is not nilpotent (Euler characteristic {0})")]
    NotNilpotent(String),
    #[error("weight is missing a value for face {0}")]
    MissingFace(String),
    #[error("weight is not balanced")]
    NotBalanced,
    #[error("weight has a negative entry")]
    NegativeWeight,
    #[error("{count} edges exceed the limit of {limit}")]
    TooManyEdges { count: usize, limit: usize },
    #[error("expected {expected} bodies, got {found}")]
    ArityError { expected: usize, found: usize },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("polytope has non-integral vertices")]
    NotLattice,
    #[error("need at least {needed} samples, got {found}")]
    NeedMoreSamples { needed: usize, found: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}
