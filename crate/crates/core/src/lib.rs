//! Exact maximum clique for large sparse graphs.
//!
//! The solver prunes low-degree nodes against a cheap heuristic clique,
//! computes core numbers once, and searches at most two small induced
//! subgraphs (CUBIS, complete-upper-bound-induced subgraphs) selected by
//! core value. See [`solver`] for the pipeline.

pub mod bench;
pub mod cores;
pub mod error;
pub mod generate;
pub mod graph;
pub mod ingest;
pub mod search;
pub mod solver;

pub use cores::CoreDecomposition;
pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Subgraph};
pub use ingest::{load_graph, EdgeListSource, Format};
pub use search::{
    brute_force_max_clique, reference_bk_max_clique, search_max_clique, verify_clique, BoundMode,
    Clique, MaxCliqueSearch,
};
pub use solver::{solve, Exit, RunReport, Solution, SolveConfig};
