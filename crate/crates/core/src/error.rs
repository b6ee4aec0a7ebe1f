use std::path::PathBuf;

use thiserror::Error;

use crate::cweno::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },

    #[error("track `{track}` has two samples at t = {time}")]
    DuplicateTimestamp { track: String, time: f64 },

    #[error("times must be strictly increasing (violated at index {index})")]
    NonMonotoneTimes { index: usize },

    #[error("a track needs at least 2 samples, got {0}")]
    TooShort(usize),

    #[error("sample {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("t = {t} lies outside [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },

    #[error("singular reconstruction system in cell {cell}")]
    SingularSystem { cell: usize },

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("cell {cell} has no {side:?} neighbor")]
    MissingNeighbor { cell: usize, side: Side },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
