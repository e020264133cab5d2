use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The inputs lie outside the domain where the quantity is defined
    /// (coincident points, non-decaying integrals).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition on the inputs is violated.
    #[error("validation error: {0}")]
    Validation(String),

    /// A numerical routine did not reach the requested accuracy.
    #[error("numerical error in {stage}: achieved residual {residual:e}")]
    Numerical { stage: String, residual: f64 },

    /// Experiment configuration could not be parsed or is inconsistent.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
