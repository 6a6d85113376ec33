use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("morphisms are not parallel: {0}")]
    NotParallel(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("morphism does not coequalize the pair (first difference at index {0})")]
    NotCoequalizing(usize),
    #[error("morphism does not factor through the epimorphism: {0}")]
    NoFactorization(String),
    #[error("operation not supported by this backend: {0}")]
    Unsupported(&'static str),
    #[error("monoid law violated: {0}")]
    LawViolation(String),
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeOverflow { degree: usize, truncation: usize },
    #[error("truncation degree must be at least 2, got {0}")]
    TruncationTooSmall(usize),
    #[error("group has positive free rank; the forgetful functor is only realized on finite groups")]
    InfiniteGroup,
    #[error("construction did not stabilize: {0}")]
    NotStabilized(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
