use thiserror::Error;

/// Errors produced by the algebraic modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("leading term of the zero polynomial is undefined")]
    UndefinedLeadingTerm,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid pair ({0}, {1}): indices must differ")]
    InvalidPair(usize, usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
