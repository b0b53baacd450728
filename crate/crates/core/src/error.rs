use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{field}` out of range: {value} ({reason})")]
    Range {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("postselection overlap vanishes at phi = {phi} (phi must lie in [0, pi))")]
    DegeneratePostselection { phi: f64 },

    #[error("truncation dimension {dim} too small: tail mass {tail:e} in the top levels exceeds {threshold:e}")]
    TruncationTooSmall { dim: usize, tail: f64, threshold: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("printed normalization expression is not positive: {value}")]
    NonPositiveNorm { value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    /// A sweep or grid row failed; carries the underlying error.
    #[error("row {index} ({label}): {inner}")]
    Row {
        index: usize,
        label: String,
        inner: Box<Error>,
    },
}

impl Error {
    /// Process exit code used by the command line front end.
    ///
    /// Invalid inputs map to 2, numerical or I/O failures to 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Range { .. }
            | Error::DegeneratePostselection { .. }
            | Error::InvalidArgument(_)
            | Error::Manifest(_) => 2,
            Error::TruncationTooSmall { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonPositiveNorm { .. }
            | Error::Io(_) => 3,
            Error::Row { inner, .. } => inner.exit_code(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
