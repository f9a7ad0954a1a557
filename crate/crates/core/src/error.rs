use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image must be at least 3x3, got {width}x{height}")]
    ImageTooSmall { width: usize, height: usize },

    #[error("sample buffer has {actual} values, expected {expected} ({width}x{height})")]
    BufferLength {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {expected:?} vs {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("at least {required} inputs required, got {actual}")]
    TooFewInputs { required: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{width}x{height} image is too small for a {levels}-level pyramid (needs at least {min}x{min})")]
    PyramidTooSmall {
        width: usize,
        height: usize,
        levels: usize,
        min: usize,
    },

    #[error("correlation undefined: input vector is constant")]
    UndefinedCorrelation,

    #[error("unknown {kind} id `{id}` (registered: {registered})")]
    UnknownId {
        kind: &'static str,
        id: String,
        registered: String,
    },

    #[error("unsupported image format in {path}: {reason}")]
    UnsupportedFormat { path: PathBuf, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to decode {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}
