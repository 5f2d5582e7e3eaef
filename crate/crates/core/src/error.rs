use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: EdgeId, m: usize },

    #[error("edge {0}-{1} joins two vertices on the same side of the bipartition")]
    NotBipartite(VertexId, VertexId),

    #[error("edge set belongs to a different graph")]
    TagMismatch,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("oracle limit exceeded: {size} {unit} > limit {limit}")]
    OracleLimit {
        size: usize,
        limit: usize,
        unit: &'static str,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
