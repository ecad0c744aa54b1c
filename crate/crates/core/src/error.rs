use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not in q(n) format")]
    NotQueerFormat,
    #[error("not a vector field")]
    NotAVectorField,
    #[error("grade {0} out of range")]
    BadGrade(i64),
    #[error("degenerate bilinear form")]
    DegenerateForm,
    #[error("no abelian 10-dimensional component in po_1(0|6)")]
    ComponentNotFound,
    #[error("minimal polynomial does not split over Q(i, sqrt2)")]
    SplitFailure,
    #[error("admissibility violated: {0}")]
    Admissibility(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("iteration cap {0} reached")]
    IterationCap(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
