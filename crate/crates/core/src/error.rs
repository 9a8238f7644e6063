use thiserror::Error;

/// Errors raised by graph construction, parsing and the search routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph would have {0} vertices, the limit is {max}", max = crate::graph::MAX_VERTICES)]
    Capacity(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("colouring has {got} entries but the graph has {expected} edges")]
    Shape { expected: usize, got: usize },

    #[error("budget exhausted: {what} (partial count {partial})")]
    Budget { what: String, partial: u64 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
