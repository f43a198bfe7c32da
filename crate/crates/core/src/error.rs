use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected} digits, got {actual}")]
    Dimension { expected: u32, actual: u32 },

    #[error("capacity exceeded: {what}{}", hint.as_deref().map(|h| format!(" ({h})")).unwrap_or_default())]
    Capacity { what: String, hint: Option<String> },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>) -> Self {
        Error::Capacity {
            what: what.into(),
            hint: None,
        }
    }

    pub(crate) fn capacity_with_hint(what: impl Into<String>, hint: impl Into<String>) -> Self {
        Error::Capacity {
            what: what.into(),
            hint: Some(hint.into()),
        }
    }
}
