use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside its valid range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input matrix does not fit in the requested register.
    #[error("matrix of dimension {n} does not fit in {qubits} qubits (capacity {capacity})")]
    Dimension { n: usize, qubits: u32, capacity: usize },

    /// An operation was applied to a coordinate vector at the wrong stage.
    #[error("coordinate vector is at stage {found}, expected stage {expected}")]
    Stage { expected: u32, found: u32 },

    /// A size guard was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An iterative numerical method failed.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Malformed text input. Line numbers are 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
