use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid of size {n} cannot hold band {band} (need n >= {need})")]
    GridTooSmall { n: usize, band: usize, need: usize },

    #[error("pointwise square root of a field with grid minimum {min:e} (must be > 0)")]
    NotPositive { min: f64 },

    #[error("negative power Lambda^{s} applied to a field with mean {mean:e}")]
    NegativePowerOnMean { s: f64, mean: f64 },

    #[error("operator requires mean-zero input, found mean {mean:e}")]
    NonZeroMean { mean: f64 },

    #[error("band {band} is not below the modulation frequency lambda = {lambda}")]
    BandExceedsLambda { band: usize, lambda: i64 },

    #[error("frequency separation violated: 48 * {lambda_n} > {lambda_next}")]
    SeparationViolated { lambda_n: u64, lambda_next: u64 },

    #[error("grid of size {need} exceeds the configured cap {cap}")]
    GridBudgetExceeded { need: usize, cap: usize },

    #[error("scale lambda_{n} = lambda0^(b^{n}) overflows")]
    ScaleOverflow { n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("malformed field file {}: {message}", path.display())]
    Format { path: PathBuf, message: String },

    #[error("checkpoint mismatch: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GridTooSmall { .. } => "GridTooSmall",
            Error::NotPositive { .. } => "NotPositive",
            Error::NegativePowerOnMean { .. } => "NegativePowerOnMean",
            Error::NonZeroMean { .. } => "NonZeroMean",
            Error::BandExceedsLambda { .. } => "BandExceedsLambda",
            Error::SeparationViolated { .. } => "SeparationViolated",
            Error::GridBudgetExceeded { .. } => "GridBudgetExceeded",
            Error::ScaleOverflow { .. } => "ScaleOverflow",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::Format { .. } => "FormatError",
            Error::Checkpoint(_) => "CheckpointError",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
        }
    }

    /// Process exit code: 2 validation, 3 numeric, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation(_) | Error::InvalidArgument(_) => 2,
            Error::Io(_) | Error::Format { .. } | Error::Json(_) | Error::Checkpoint(_) => 4,
            _ => 3,
        }
    }
}
