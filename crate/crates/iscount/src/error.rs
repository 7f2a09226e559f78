use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input error: {0}")]
    Input(String),
    #[error("size limit exceeded: {0}")]
    Size(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
