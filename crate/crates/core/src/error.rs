use std::fmt;

use thiserror::Error;

/// Errors raised by structure construction, tree evaluation, the reduction
/// and the file readers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ground sets are not disjoint: {0} occurs in both")]
    Disjointness(String),
    #[error("non-generic tree: d({z},{x}) = d({z},{y})")]
    GenericTie { z: String, x: String, y: String },
    #[error("interval endpoints are not edges of the tree topology: {0}")]
    Disconnected(String),
    #[error("edge {0} is not expressible in the tree topology")]
    UnalignedEdge(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("clause {clause} has {found} literals, expected 3")]
    ClauseArity { clause: usize, found: usize },
    #[error("clause {clause} repeats variable {var}")]
    DuplicateVariable { clause: usize, var: usize },
    #[error("size {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("assembled edge length is negative on {0}")]
    Nonnegativity(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse { line, msg: msg.to_string() }
    }

    /// Stable upper-case tag used by the command line and reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::Disjointness(_) => "DISJOINTNESS",
            Error::GenericTie { .. } => "GENERIC_TIE",
            Error::Disconnected(_) => "DISCONNECTED",
            Error::UnalignedEdge(_) => "UNALIGNED_EDGE",
            Error::Range(_) => "RANGE",
            Error::ClauseArity { .. } => "CLAUSE_ARITY",
            Error::DuplicateVariable { .. } => "DUPLICATE_VARIABLE",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::Nonnegativity(_) => "NONNEGATIVITY",
            Error::Parse { .. } => "PARSE",
            Error::Io(_) => "IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
