use thiserror::Error;

/// Errors produced by mechanism and experiment preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    #[error("dataset point ({x}, {y}) outside universe [1, {universe_size}]")]
    PointOutOfRange { x: u32, y: u8, universe_size: u32 },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("query point {x} outside universe [1, {universe_size}]")]
    QueryOutOfRange { x: u32, universe_size: u32 },

    #[error("cannot split {n} examples into {r} non-empty subsamples")]
    PartitionTooFine { n: usize, r: usize },

    #[error("audit size guard exceeded: {message}")]
    SizeGuardExceeded { message: String },

    #[error("loss {loss} is not smooth enough for this solver: {message}")]
    LossNotSmooth { loss: &'static str, message: String },

    #[error("solver did not reach tolerance {tolerance:e}; achieved gap {achieved:e}")]
    NoConvergence { tolerance: f64, achieved: f64 },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter { name, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
