use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// shown to a user verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("non-hyperbolic input: {0}")]
    NonHyperbolic(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree {degree} exceeds the enumeration cap {cap}; raise the cap explicitly to proceed")]
    AboveCap { degree: usize, cap: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
