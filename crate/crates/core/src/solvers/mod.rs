//! Optimal balanced reassembling.
//!
//! A cluster's degree depends only on the cluster itself, so both measures
//! decompose over the tree: β sums per-cluster degrees, α takes their
//! maximum. [`optimize_balanced`] exploits this with a dynamic program over
//! vertex subsets of power-of-two size; [`naive_optimum`] enumerates every
//! balanced tree and serves as its cross-check.

mod dp;
mod enumerate;
mod greedy;
mod qp;

use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;
use crate::tree::{ReassemblingTree, TreeError};

pub use dp::{optimize_balanced, DP_CAP};
pub use enumerate::{balanced_tree_count, enumerate_balanced_trees, naive_optimum, ENUMERATION_CAP};
pub use greedy::greedy_balanced_heuristic;
pub use qp::{
    encode_beta_max_qp, maximize_qp_exhaustive, qp_objective, Assignment, QpConstraint, QpEvaluation, QpMaximum,
    QpModel, QpTerm, QP_EXHAUSTIVE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// True if `candidate` is strictly better than `incumbent`.
    pub(crate) fn improves(self, candidate: usize, incumbent: usize) -> bool {
        match self {
            Sense::Minimize => candidate < incumbent,
            Sense::Maximize => candidate > incumbent,
        }
    }
}

impl Objective {
    pub(crate) fn of(self, measures: crate::tree::MeasurePair) -> usize {
        match self {
            Objective::Alpha => measures.alpha,
            Objective::Beta => measures.beta,
        }
    }
}

/// A balanced tree together with its objective value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub value: usize,
    pub tree: ReassemblingTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("n = {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{what} is capped at n <= {cap}, got {n}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("the quadratic program needs n = 2^p with p >= 2, got n = {0}")]
    OrderTooSmall(usize),
    #[error("assignment violates constraint ({family}): {detail}")]
    Constraint { family: &'static str, detail: String },
    #[error("objective {direct} disagrees with 2pm - 2θ1 - 4θ2 = {identity}")]
    ThetaIdentity { direct: i64, identity: i64 },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `β(K_n, B)` for any balanced tree over `n = 2^p` vertices:
/// `(p − 1)·4^p + 2^p`.
pub fn beta_complete_closed_form(n: usize) -> Result<u64, SolverError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(SolverError::NotPowerOfTwo(n));
    }
    let p = n.trailing_zeros();
    Ok(u64::from(p - 1) * 4u64.pow(p) + 2u64.pow(p))
}

pub(crate) fn check_power_of_two(n: usize) -> Result<(), SolverError> {
    if !n.is_power_of_two() {
        return Err(SolverError::NotPowerOfTwo(n));
    }
    Ok(())
}
