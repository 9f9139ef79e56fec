use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("symbol `{0}` is not in the signature")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected}, got {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("element {element} out of range for universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("size guard: {what} needs {needed} but the limit is {limit}")]
    SizeGuard { what: String, needed: u128, limit: u128 },
    #[error("partition is not compatible with operation `{0}`")]
    NotACongruence(String),
    #[error("values belong to different algebras")]
    AlgebraMismatch,
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),
    #[error("malformed witness scheme: {0}")]
    MalformedScheme(String),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
