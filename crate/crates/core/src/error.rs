use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("sets already identified")]
    SetsOverlap,
    #[error("unseparable pair: both endpoints are {0}")]
    UnseparablePair(VertexId),
    #[error("infeasible by pigeonhole: k = {k} exceeds s + 1 = {}", .s + 1)]
    Pigeonhole { k: usize, s: usize },
    #[error("{got} terminals exceed the terminal capacity t = {capacity}")]
    TooManyTerminals { got: usize, capacity: usize },
    #[error("invalid constants profile: {0}")]
    InvalidProfile(String),
    #[error("profile/instance mismatch: {0}")]
    ProfileMismatch(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("not a valid planar embedding: {0}")]
    InvalidEmbedding(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
