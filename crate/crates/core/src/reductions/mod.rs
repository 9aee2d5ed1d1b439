//! Reduction gadgets and the extraction maps that read answers back out of
//! optimal trees.
//!
//! Each extraction both returns its answer and checks the conclusion it is
//! supposed to guarantee against an oracle, reporting a
//! [`ReductionError::LemmaViolation`] instead of returning a wrong answer.

mod lemmas;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Bisection, Graph, GraphError};
use crate::oracles::{self, OracleError};
use crate::solvers::{self, Objective, Sense, SolverError};
use crate::tree::{ReassemblingTree, TreeError};
use crate::vertex_set::VertexSet;

pub use lemmas::{verify_lemma, Counterexample, LemmaParams, LemmaReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the augmented graph needs an even order n >= 2, got {0}")]
    OddOrder(usize),
    #[error("block sizes {sizes:?} must be positive and sum to n = {n}")]
    BadSizes { sizes: [usize; 4], n: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("lemma {lemma} violated: {detail}")]
    LemmaViolation { lemma: u8, detail: String },
    #[error("no lemma numbered {0}; expected 1..=6")]
    UnknownLemma(u8),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn violation(lemma: u8, detail: String) -> ReductionError {
    ReductionError::LemmaViolation { lemma, detail }
}

/// `G` joined to two disjoint cliques `H` and `I` of size `q`.
///
/// Vertices `0..n` are `G`, then `H`, then `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedGraph {
    pub graph: Graph,
    #[serde(skip)]
    pub original: Graph,
    pub g_part: VertexSet,
    pub h_part: VertexSet,
    pub i_part: VertexSet,
    pub r: usize,
    pub q: usize,
}

pub fn augment(g: &Graph) -> Result<AugmentedGraph, ReductionError> {
    let n = g.n();
    if n < 2 || n % 2 == 1 {
        return Err(ReductionError::OddOrder(n));
    }
    // for even n this is also the smallest even padding
    let r = n.next_power_of_two() - n;
    let q = n / 2 + r;
    let h: Vec<usize> = (n..n + q).collect();
    let i: Vec<usize> = (n + q..n + 2 * q).collect();
    let mut edges = g.edges().to_vec();
    for side in [&h, &i] {
        for (a, &u) in side.iter().enumerate() {
            edges.extend(side[a + 1..].iter().map(|&v| (u, v)));
            edges.extend((0..n).map(|v| (v, u)));
        }
    }
    Ok(AugmentedGraph {
        graph: Graph::new(n + 2 * q, edges)?,
        original: g.clone(),
        g_part: VertexSet::full(n),
        h_part: h.into_iter().collect(),
        i_part: i.into_iter().collect(),
        r,
        q,
    })
}

/// A minimum bisection of `g` read off a minimum bisection of its augmented
/// graph, after checking every minimum bisection of the augmented graph
/// separates `H` from `I`.
pub fn min_bisection_via_augment(g: &Graph) -> Result<(usize, Bisection), ReductionError> {
    let ag = augment(g)?;
    let best = oracles::min_bisections(&ag.graph)?;
    for b in &best.optima {
        if !oracles::bisection_type(b, &ag.h_part, &ag.i_part)? {
            return Err(violation(
                1,
                format!("minimum bisection {:?} | {:?} does not separate H and I", b.a, b.b),
            ));
        }
    }
    let first = &best.optima[0];
    let a = first.a.intersection(&ag.g_part);
    let b = first.b.intersection(&ag.g_part);
    let restricted = Bisection::new(g.n(), a, b)?.normalized();
    Ok((restricted.value(g), restricted))
}

/// The root children of an α-optimal balanced tree of the augmented graph,
/// checked to be a minimum bisection of it with cut `n²/2 + C`, `C` the
/// minimum bisection value of `G`, and to restrict to a minimum bisection
/// of `G`.
pub fn min_bisection_from_alpha_optimal(
    ag: &AugmentedGraph,
    t: &ReassemblingTree,
) -> Result<Bisection, ReductionError> {
    let n = ag.original.n();
    if ag.r != 0 {
        return Err(ReductionError::Precondition(format!("n = {n} is not a power of two")));
    }
    if t.n() != ag.graph.n() {
        return Err(TreeError::SizeMismatch {
            tree: t.n(),
            graph: ag.graph.n(),
        }
        .into());
    }
    if !t.is_balanced() {
        return Err(TreeError::NotBalanced.into());
    }
    let (a, b) = t.root_children().expect("the augmented graph has at least 4 vertices");
    let root_split = Bisection::new(ag.graph.n(), a.clone(), b.clone())?.normalized();
    let cut = root_split.value(&ag.graph);
    let c = oracles::min_bisections(&ag.original)?.value;
    let expected = n * n / 2 + c;
    if cut != expected {
        return Err(violation(
            3,
            format!("root cut is {cut}, expected n²/2 + C = {expected}"),
        ));
    }
    let augmented_min = oracles::min_bisections(&ag.graph)?.value;
    if cut != augmented_min {
        return Err(violation(
            3,
            format!("root cut {cut} is not the minimum bisection value {augmented_min}"),
        ));
    }
    let restricted = Bisection::new(
        n,
        root_split.a.intersection(&ag.g_part),
        root_split.b.intersection(&ag.g_part),
    )
    .map_err(|e| violation(3, format!("root children do not restrict to a bisection of G: {e}")))?;
    if restricted.value(&ag.original) != c {
        return Err(violation(
            3,
            format!("restriction has cut {}, minimum is {c}", restricted.value(&ag.original)),
        ));
    }
    Ok(root_split)
}

/// `G'`: `G` plus mutually non-adjacent cliques `A_i` of size `n - n_i`,
/// each joined to every vertex of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualSizeGadget {
    pub graph: Graph,
    pub added: Vec<VertexSet>,
}

pub fn equal_size_gadget(g: &Graph, sizes: [usize; 4]) -> Result<EqualSizeGadget, ReductionError> {
    let n = g.n();
    if sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
        return Err(ReductionError::BadSizes { sizes, n });
    }
    let mut edges = g.edges().to_vec();
    let mut added = Vec::with_capacity(4);
    let mut next = n;
    for s in sizes {
        let block: Vec<usize> = (next..next + n - s).collect();
        for (a, &u) in block.iter().enumerate() {
            edges.extend(block[a + 1..].iter().map(|&v| (u, v)));
            edges.extend((0..n).map(|v| (v, u)));
        }
        next += n - s;
        added.push(block.into_iter().collect());
    }
    Ok(EqualSizeGadget {
        graph: Graph::new(next, edges)?,
        added,
    })
}

/// Result of an extraction whose hypothesis may not hold for the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Checked<T> {
    Verified(T),
    Skipped(String),
}

fn grandchildren_of_optimum(g: &Graph, t: &ReassemblingTree, sense: Sense) -> Result<Vec<VertexSet>, ReductionError> {
    let n = g.n();
    if !n.is_power_of_two() || n < 4 {
        return Err(ReductionError::Precondition(format!(
            "n = {n} is not a power of two >= 4"
        )));
    }
    if t.n() != n {
        return Err(TreeError::SizeMismatch { tree: t.n(), graph: n }.into());
    }
    if !t.is_balanced() {
        return Err(TreeError::NotBalanced.into());
    }
    let optimum = solvers::optimize_balanced(g, Objective::Beta, sense)?.value;
    let beta = t.measures(g)?.beta;
    if beta != optimum {
        return Err(ReductionError::Precondition(format!(
            "tree has β = {beta}, optimum is {optimum}"
        )));
    }
    Ok(t.grandchildren().into_iter().cloned().collect())
}

/// The grandchildren of a β-minimal balanced tree of a graph with an
/// equal-size 4-clique cover, checked to be such a cover.
pub fn clique_cover_from_beta_optimal(
    g: &Graph,
    t: &ReassemblingTree,
) -> Result<Checked<Vec<VertexSet>>, ReductionError> {
    if oracles::equal_size_clique_cover4(g)?.is_none() {
        return Ok(Checked::Skipped("no equal-size 4-clique cover".into()));
    }
    let blocks = grandchildren_of_optimum(g, t, Sense::Minimize)?;
    let quarter = g.n() / 4;
    if !oracles::verify_clique_cover(g, &blocks, Some(&[quarter; 4])) {
        let bad = blocks
            .iter()
            .find(|b| !g.is_clique(b))
            .expect("some block is not a clique");
        return Err(violation(6, format!("grandchild {bad:?} is not a clique")));
    }
    Ok(Checked::Verified(blocks))
}

/// The grandchildren of a β-maximal balanced tree of a graph with four
/// disjoint independent sets of size `n/4`, checked to be independent.
pub fn independent_grandchildren_from_beta_max(
    g: &Graph,
    t: &ReassemblingTree,
) -> Result<Checked<Vec<VertexSet>>, ReductionError> {
    if oracles::equal_size_clique_cover4(&g.complement())?.is_none() {
        return Ok(Checked::Skipped("no four disjoint independent sets of size n/4".into()));
    }
    let blocks = grandchildren_of_optimum(g, t, Sense::Maximize)?;
    if let Some(bad) = blocks.iter().find(|b| !g.is_independent(b)) {
        return Err(violation(5, format!("grandchild {bad:?} is not independent")));
    }
    Ok(Checked::Verified(blocks))
}
