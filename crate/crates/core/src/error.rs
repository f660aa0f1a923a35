use thiserror::Error;

/// Errors raised by the constructors and checked operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid singularity parameters: {0}")]
    InvalidInput(String),
    #[error("Y({n},{q}) is a hypersurface (q = n - 1); its versal base is irreducible")]
    Hypersurface { n: String, q: String },
    #[error("gcd({n},{q}) != 1")]
    NotCoprime { n: String, q: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("value does not fit the target integer type: {0}")]
    Overflow(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug or broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
