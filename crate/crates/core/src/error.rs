use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant that reports a failed property carries a human-readable
/// witness (a morphism, a chain, a basis vector) naming where it failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {what}; witness: {witness}")]
    Precondition { what: String, witness: String },

    #[error("property failed: {what}; witness: {witness}")]
    Property { what: String, witness: String },

    #[error("limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition { what: what.into(), witness: witness.into() }
    }

    pub fn property(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Property { what: what.into(), witness: witness.into() }
    }

    /// Process exit code for this failure class: 1 for a failed property,
    /// 2 for malformed or unusable input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Property { .. } | Error::Precondition { .. } => 1,
            Error::Parse { .. } | Error::Input(_) | Error::Limit(_) => 2,
        }
    }

    /// The witness text, when the variant carries one.
    pub fn witness(&self) -> Option<&str> {
        match self {
            Error::Property { witness, .. } | Error::Precondition { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
