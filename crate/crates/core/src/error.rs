use std::fmt;

use thiserror::Error;

/// Line/column position inside a specification document (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A morphism or structure is malformed (arity/sort mismatch, unmapped symbol, ...).
    #[error("validation error: {0}")]
    Validation(String),
    /// A sentence mentions symbols outside the signature it is checked against.
    #[error("typecheck error: {0}")]
    Typecheck(String),
    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// An enumeration would exceed a configured cap.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: u128, cap: u128 },
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: unresolved reference: {msg}")]
    Resolution { pos: Pos, msg: String },
    /// Any other error, located in a specification document.
    #[error("{pos}: {inner}")]
    At { pos: Pos, inner: Box<Error> },
    #[error("{0}")]
    Input(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn typecheck(msg: impl Into<String>) -> Self {
        Error::Typecheck(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn resource(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub fn is_resource(&self) -> bool {
        match self {
            Error::Resource { .. } => true,
            Error::At { inner, .. } => inner.is_resource(),
            _ => false,
        }
    }

    /// Attaches a document position, unless the error already carries one.
    pub fn at(self, pos: Pos) -> Self {
        match self {
            Error::Syntax { .. } | Error::Resolution { .. } | Error::At { .. } => self,
            other => Error::At {
                pos,
                inner: Box::new(other),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
