use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family is empty")]
    EmptyFamily,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected ground set of size {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("guard exceeded: {what} needs {required}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("retry budget exhausted after {attempts} draws (family size {size}, ceiling {ceiling})")]
    RetryExhausted { attempts: u64, size: usize, ceiling: usize },

    #[error("construction produced an invalid result: {0}")]
    ConstructionBug(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for errors caused by configured limits rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

/// Fails with [`Error::GuardExceeded`] when `required > limit`.
pub(crate) fn guard(what: &'static str, required: u128, limit: u128) -> Result<()> {
    if required > limit {
        Err(Error::GuardExceeded { what, required, limit })
    } else {
        Ok(())
    }
}
