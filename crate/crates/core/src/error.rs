use thiserror::Error;

use crate::algebra::MatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input document; `line` is 1-based when known.
    #[error("{}{msg}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Input { line: Option<usize>, msg: String },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid multiweb: {0}")]
    Multiweb(String),
    #[error("invalid connection: {0}")]
    Connection(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("skein reduction failed: {0}")]
    Skein(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl Error {
    pub(crate) fn input(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Input {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
