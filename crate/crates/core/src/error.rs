use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a {expected}-channel image, got {found} channel(s)")]
    ChannelCount { expected: usize, found: usize },

    #[error("invalid image geometry: {0}")]
    Geometry(String),

    #[error("image is {width}x{height}, need at least {min}x{min}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },

    #[error("intensity histogram is empty")]
    EmptyHistogram,

    #[error("mask size must be odd and at least 3, got {0}")]
    InvalidMaskSize(usize),

    #[error("window of {0} cells is not an odd square of side >= 3")]
    InvalidWindow(usize),

    #[error("grain histogram has no windows")]
    EmptyGrainHistogram,

    #[error("co-occurrence offset ({dr},{dc}) has no pixel pairs in a {width}x{height} image")]
    DegenerateOffset {
        dr: isize,
        dc: isize,
        width: usize,
        height: usize,
    },

    #[error("feature dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("feature layout mismatch: model uses `{model}`, request uses `{requested}`")]
    LayoutMismatch { model: String, requested: String },

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error("invalid model file: {0}")]
    Model(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("failed to decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("malformed PNM data: {0}")]
    Pnm(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
