use thiserror::Error;

use crate::shape::LatticeBox;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed box {0}: lower corner exceeds upper corner")]
    MalformedBox(String),

    #[error("truncation degree {k} out of range for a {dim}-dimensional shape")]
    TruncationOutOfRange { k: usize, dim: usize },

    #[error("axis tuple {0:?} is not strictly increasing within the ambient directions")]
    BadAxes(Vec<usize>),

    #[error("vertex map is not total: {0} has no image")]
    NotTotal(String),

    #[error("map is invalid: {0}")]
    InvalidMap(String),

    #[error("witness does not match shape: {0}")]
    WitnessMismatch(String),

    #[error("invalid boxdot specification: {0}")]
    InvalidBoxdot(String),

    #[error("grid maps have disjoint images in direction {0}")]
    DisjointImages(usize),

    #[error("shape is empty")]
    EmptyShape,

    #[error("not a subshape: {0} is missing from the ambient shape")]
    NotSubshape(LatticeBox),

    #[error("shape is not closed: {0}")]
    NotClosed(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, ShapeError>;
