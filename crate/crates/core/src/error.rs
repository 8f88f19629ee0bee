use thiserror::Error;

use crate::scalars::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("kind mismatch: {left} vs {right}")]
    KindMismatch { left: Kind, right: Kind },

    #[error("matrix has {got} entries, expected {expected}")]
    BadShape { expected: usize, got: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("matrix is not hermitian")]
    NotHermitian,

    #[error("matrix is not anti-hermitian")]
    NotAntiHermitian,

    #[error("scaling matrix is not symmetric")]
    NotSymmetric,

    #[error("I + S is singular")]
    SingularCayley,

    #[error("letter index {index} out of range for a {d}-tuple")]
    LetterOutOfRange { index: usize, d: usize },

    #[error("matrix tuple is empty")]
    EmptyTuple,

    #[error("tuples differ in shape: {0}")]
    ShapeMismatch(String),

    #[error("no invertible scaling solves the system")]
    NoSolution,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
