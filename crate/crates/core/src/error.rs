use thiserror::Error;

/// Errors produced by parsing, validation and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based; 0 means "whole file".
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The instance violates one of its structural invariants.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A configured size cap was exceeded; the instance is too large for the requested routine.
    #[error("{0}")]
    TooLarge(String),

    /// An operation was called with arguments violating its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A condition guaranteed by the underlying combinatorics did not hold.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
