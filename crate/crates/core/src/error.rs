use thiserror::Error;

/// Errors raised by the library. Each variant maps onto a CLI exit status.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid job specification: {0}")]
    Spec(String),

    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("characteristic guard: char {characteristic} divides {value}")]
    Characteristic { characteristic: u64, value: u64 },

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("computation bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("classification table violation: {0}")]
    TableViolation(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Spec(_) | Error::RingMismatch => 2,
            Error::Hypothesis(_)
            | Error::Characteristic { .. }
            | Error::NotHomogeneous(_)
            | Error::TableViolation(_) => 1,
            Error::BoundExceeded(_) => 3,
            Error::Inconsistent(_) => 4,
        }
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
