use thiserror::Error;

use crate::johnson::RSet;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("unsupported matroid: {0}")]
    UnsupportedMatroid(String),

    #[error("corrupt encoding: {0}")]
    CorruptEncoding(String),

    #[error("capacity exceeded for {what}: needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("not a basis family: {0}")]
    NotMatroid(InvalidBases),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Why a candidate family fails to be the basis family of a matroid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidBases {
    #[error("the family is empty")]
    Empty,
    /// `b1 - x + y` is not in the family for every `y` in `b2 \ b1`.
    #[error("exchange fails for B1={b1}, B2={b2}, x={x}")]
    Exchange { b1: RSet, b2: RSet, x: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
