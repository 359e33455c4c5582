use std::path::PathBuf;

use crate::model::Space;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("point {point} has a non-finite coordinate in column {column}")]
    NonFiniteCoordinate { point: usize, column: usize },

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("coordinate buffer of length {len} is not a multiple of dimension {dim}")]
    RaggedCoordinates { len: usize, dim: usize },

    #[error("distance matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("distance ({i}, {j}) = {value} is negative or non-finite")]
    InvalidDistance { i: usize, j: usize, value: f64 },

    #[error("distance matrix is not symmetric at ({i}, {j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("distance matrix has non-zero diagonal at {i}: {value}")]
    NonZeroDiagonal { i: usize, value: f64 },

    #[error("kappa must be in 1..={max}, got {kappa}")]
    KappaOutOfRange { kappa: usize, max: usize },

    #[error("point index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point counts differ: {data} data points vs {embedding} embedding points")]
    SizeMismatch { data: usize, embedding: usize },

    #[error("neighbourhoods use different kappa: {data} (data) vs {embedding} (embedding)")]
    KappaMismatch { data: usize, embedding: usize },

    #[error("expected a rank matrix for the {expected:?} space, got {got:?}")]
    SpaceMismatch { expected: Space, got: Space },

    #[error("relation ({i}, {j}) is not penalized on this side")]
    NotPenalized { i: usize, j: usize },

    #[error("a point is never related to itself (i = j = {0})")]
    SelfRelation(usize),

    #[error("invalid rank matrix row {row}: {reason}")]
    InvalidRanks { row: usize, reason: String },

    #[error("invalid penalty bins: {0}")]
    InvalidBins(String),

    #[error("invalid render setting: {0}")]
    InvalidRender(String),

    #[error("vertex {0} has a non-finite position")]
    NonFinitePosition(usize),

    #[error("{path}: row {row}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        row: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
