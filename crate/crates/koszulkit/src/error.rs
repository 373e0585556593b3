use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not finite-dimensional within path-length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    /// A consistency check that holds unconditionally has failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::linalg::LinalgError> for Error {
    fn from(e: crate::linalg::LinalgError) -> Self {
        Error::Input(e.to_string())
    }
}
