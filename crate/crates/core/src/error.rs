use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed function text {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("{what}: arity {arity} exceeds cap {cap}")]
    ArityAboveCap {
        what: &'static str,
        arity: usize,
        cap: usize,
    },

    #[error("index {index} out of range for {what} (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("bad parameters for family {family:?}: {reason}")]
    BadParams { family: String, reason: String },

    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(text: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            text: text.to_string(),
            reason: reason.into(),
        }
    }

    /// True for the cap-exceeded family of errors.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::ArityAboveCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::ArityAboveCap`] when `arity > cap`.
pub fn check_cap(what: &'static str, arity: usize, cap: usize) -> Result<()> {
    if arity > cap {
        Err(Error::ArityAboveCap { what, arity, cap })
    } else {
        Ok(())
    }
}
