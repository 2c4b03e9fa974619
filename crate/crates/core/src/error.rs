use thiserror::Error;

/// Errors raised across the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("input is not harmonic (laplacian residual {residual:.3e})")]
    NotHarmonic { residual: f64 },
    #[error("input is not a real harmonic: {0}")]
    NotReal(String),
    #[error("gradient is not isobaric of the required weight: {0}")]
    Weight(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("malformed input at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
