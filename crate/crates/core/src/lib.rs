//! Balanced graph reassembling.
//!
//! A reassembling tree merges the vertices of a graph pairwise until one
//! cluster remains. Its α-measure is the largest edge boundary of any
//! cluster and its β-measure the sum of all boundaries. This crate provides
//! the tree type and measures, exact optimizers over balanced trees for
//! small graphs, brute-force oracles for minimum bisection and 4-clique
//! covers, and the gadgets relating the two problems, each with a checker.

pub mod generate;
pub mod graph;
pub mod oracles;
pub mod reductions;
pub mod solvers;
pub mod tree;
pub mod vertex_set;

use thiserror::Error;

pub use graph::{parse_graph, Bisection, Edge, Graph, GraphError};
pub use oracles::OracleError;
pub use reductions::ReductionError;
pub use solvers::{Objective, Optimum, Sense, SolverError};
pub use tree::{MeasurePair, ReassemblingTree, TreeError};
pub use vertex_set::VertexSet;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}
