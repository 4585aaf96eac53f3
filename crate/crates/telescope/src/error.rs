//! Crate-wide error type.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Violated precondition (zero input, constant where nonconstant needed, ...).
    Domain(String),
    /// A solve step had no solution where one was required.
    NoSolution(String),
    /// Expression outside the supported hypergeometric shape.
    Unsupported(String),
    /// Parse failure with byte position in the input.
    Parse { pos: usize, msg: String },
    /// Recurrence unrolling hit a vanishing leading coefficient.
    SingularPoint { index: i64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn no_solution(msg: impl Into<String>) -> Self {
        Error::NoSolution(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {}", m),
            Error::NoSolution(m) => write!(f, "no solution: {}", m),
            Error::Unsupported(m) => write!(f, "unsupported expression: {}", m),
            Error::Parse { pos, msg } => write!(f, "parse error at position {}: {}", pos, msg),
            Error::SingularPoint { index } => {
                write!(f, "singular point: leading coefficient vanishes at index {}", index)
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
