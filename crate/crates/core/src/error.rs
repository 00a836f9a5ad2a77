use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different quasi-commutation matrices")]
    AmbientMismatch,
    #[error("elements do not quasi-commute")]
    NotQuasiCommuting,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("element is not homogeneous for the given grading")]
    Inhomogeneous,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is not skew-symmetric at ({0},{1})")]
    NotSkewSymmetric(usize, usize),
    #[error("B and L are not compatible at ({0},{1})")]
    Incompatible(usize, usize),
    #[error("vertex {0} is frozen")]
    Frozen(usize),
    #[error("vector {name:?} is not a grading: B_{row} . v = {value}")]
    NotAGrading { name: String, row: usize, value: i64 },
    #[error("enumeration reached depth {depth} without closing ({seeds} seeds, {variables} variables so far)")]
    DepthCapExceeded { depth: usize, seeds: usize, variables: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("bad index set: {0}")]
    BadIndices(String),
    #[error("theta became negative at vertex {0}")]
    NegativeTheta(usize),
    #[error("cluster variable at vertex {0} keeps a denominator")]
    DenominatorNotCleared(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
