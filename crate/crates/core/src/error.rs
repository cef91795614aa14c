use thiserror::Error;

use crate::extent::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval [{low}, {high}): low must be strictly below high")]
    InvalidInterval { low: f64, high: f64 },

    #[error("invalid id {0}: ids are 1-based")]
    InvalidId(usize),

    #[error("{kind:?} extent at position {position} has id {id}, expected {expected}")]
    IdOutOfSequence {
        kind: Kind,
        position: usize,
        id: usize,
        expected: usize,
    },

    #[error("projection {dim} of extent {id} does not carry the extent's id and kind")]
    ProjectionMismatch { id: usize, dim: usize },

    #[error("{kind:?} extent {id} appears in the wrong set")]
    WrongKind { kind: Kind, id: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("extents must have at least one dimension")]
    ZeroDimensions,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("interval [{low}, {high}) lies outside the grid span [{span_low}, {span_high})")]
    OutsideGrid {
        low: f64,
        high: f64,
        span_low: f64,
        span_high: f64,
    },

    #[error("interval [{low}, {high}) with id {id} is not stored in the tree")]
    NotFound { low: f64, high: f64, id: usize },

    #[error("worker count must be at least 1")]
    ZeroWorkers,

    #[error("invalid workload: {0}")]
    InvalidWorkload(String),

    #[error("unknown algorithm `{0}` (expected one of bf, sbm, gb, itm, bf-par, itm-par)")]
    UnknownAlgorithm(String),

    #[error("the grid-based matcher needs a cell count (--grid-cells G)")]
    MissingGridCells,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("csv error: {0}")]
    Csv(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
