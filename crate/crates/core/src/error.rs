use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// The variants split along the line the command-line tool uses for its
/// exit codes: bad input on one side, numerical breakdown on the other.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter failed validation. `field` is the configuration key.
    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },

    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A linear system was singular to working precision.
    #[error("singular system (pivot ratio {pivot_ratio:.3e}): {context}")]
    Singular { context: String, pivot_ratio: f64 },

    /// A quantity diverges for the given inputs.
    #[error("unbounded result: {0}")]
    Unbounded(String),

    /// Any other numerical failure (invalid covariance matrix, broken identity, ...).
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by the caller's input rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation { .. } | Error::Domain(_) | Error::Config(_) | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
