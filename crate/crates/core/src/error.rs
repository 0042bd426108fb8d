use thiserror::Error;

use crate::algebra::Signature;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q},{r}): dimension must be between 1 and {max}", max = crate::algebra::MAX_DIM)]
    InvalidSignature { p: usize, q: usize, r: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("malformed blade name {0:?}")]
    MalformedBladeName(String),

    #[error("blade name {0:?} is not in canonical ascending order")]
    NonCanonicalBladeName(String),

    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("grade {grade} out of range 0..={dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { got: usize, expected: usize },

    #[error("pseudoscalar of {0} is not invertible")]
    DegenerateSignature(Signature),

    #[error("null vector has no inverse")]
    NullVector,

    #[error("element is not invertible as a vector or versor")]
    NotInvertible,

    #[error("not a versor: {0}")]
    NotAVersor(&'static str),

    #[error("not a blade: {0}")]
    NotABlade(&'static str),

    #[error("zero blade")]
    ZeroBlade,

    #[error("expected a vector (grade 1 element)")]
    NotAVector,

    #[error("exponential series did not converge within {0} terms")]
    NoConvergence(usize),

    #[error("angle undefined for a zero vector")]
    ZeroVector,

    #[error("operation requires the conformal algebra Cl(4,1), got {0}")]
    NotConformal(Signature),

    #[error("point at infinity has no Euclidean position")]
    PointAtInfinity,

    #[error("squared distance {0} is negative: inputs are not points")]
    NegativeRadicand(f64),

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("function evaluated within {distance:e} of its singularity")]
    Singularity { distance: f64 },

    #[error("non-finite field value")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid JSON multivector: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
