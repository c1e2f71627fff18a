use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` and `column` are 1-based.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    /// The input is well formed but does not satisfy the requirements of the
    /// requested computation (wrong dimension, not in SL, ...).
    #[error("{0}")]
    Requirement(String),

    #[error("cyclotomic field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("group closure exceeded {cap} elements (group too large or infinite)")]
    CapExceeded { cap: usize },

    /// A property guaranteed by theory failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn requirement(msg: impl Into<String>) -> Self {
        Error::Requirement(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
