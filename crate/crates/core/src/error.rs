use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} is not in a graph of {node_count} nodes")]
    UnknownNode { node: NodeId, node_count: usize },

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("core ladder is empty")]
    EmptyLadder,

    #[error("brute-force search refused: {nodes} nodes exceeds guard of {guard}")]
    GuardExceeded { nodes: usize, guard: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
