//! The 0-1 quadratic program whose maximum tracks the largest β over
//! balanced trees, with the grandchildren of the root as the decision.
//!
//! Variable `x[i][k]` says vertex `i` lies in grandchild `X_k` (`k = 1..4`),
//! where `X_1 ⊎ X_2` and `X_3 ⊎ X_4` are the two children of the root.
//! Per edge, the objective credits `2p` when the endpoints sit in opposite
//! children, `2(p-1)` when they sit in sibling grandchildren, and `2(p-2)`
//! when they share a grandchild. The last credit is the largest height an
//! edge inside a grandchild can have, so the program relaxes β from above
//! when `n > 8`; for `n <= 8` it is exact.

use serde::Serialize;

use super::{check_power_of_two, SolverError};
use crate::generate::balanced_tree_from_order;
use crate::graph::{Edge, Graph};
use crate::tree::ReassemblingTree;

/// Largest vertex count for [`maximize_qp_exhaustive`].
pub const QP_EXHAUSTIVE_CAP: usize = 8;

/// Block pairs in opposite children of the root.
const CROSS: [(u8, u8); 4] = [(1, 3), (1, 4), (2, 3), (2, 4)];
/// Sibling grandchildren.
const SIBLING: [(u8, u8); 2] = [(1, 2), (3, 4)];

/// One monomial `coeff · x[i][k] · x[j][l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QpTerm {
    pub i: usize,
    pub k: u8,
    pub j: usize,
    pub l: u8,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum QpConstraint {
    /// (i) every `x[i][k]` is 0 or 1.
    Binary,
    /// (ii) `Σ_i x[i][k] = rhs`.
    BlockSize { k: u8, rhs: usize },
    /// (iii) `Σ_k x[i][k] = rhs`.
    OneBlock { i: usize, rhs: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QpModel {
    pub n: usize,
    pub p: u32,
    pub m: usize,
    /// `(i, k)` for each variable `x[i][k]`.
    pub variables: Vec<(usize, u8)>,
    pub terms: Vec<QpTerm>,
    pub constraints: Vec<QpConstraint>,
    #[serde(skip)]
    edges: Vec<Edge>,
}

/// Which grandchild (1..=4) each vertex belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Assignment {
    pub block_of: Vec<u8>,
}

impl Assignment {
    /// Reads the grandchildren of a balanced tree over `n = 2^p >= 4`
    /// vertices: the first child of the root is split into `X_1, X_2`.
    pub fn from_tree(tree: &ReassemblingTree) -> Option<Self> {
        let (left, right) = tree.root_children()?;
        let mut block_of = vec![0u8; tree.n()];
        let mut k = 1;
        for child in [left, right] {
            let (a, b) = tree.children(child).ok()??;
            for grandchild in [a, b] {
                for v in grandchild {
                    block_of[v] = k;
                }
                k += 1;
            }
        }
        Some(Self { block_of })
    }

    /// The balanced tree with grandchildren `X_1..X_4`, children
    /// `X_1 ⊎ X_2` and `X_3 ⊎ X_4`, and each grandchild split in ascending
    /// vertex order below that.
    pub fn to_tree(&self) -> ReassemblingTree {
        let mut order: Vec<usize> = (0..self.block_of.len()).collect();
        order.sort_by_key(|&v| (self.block_of[v], v));
        balanced_tree_from_order(&order)
    }
}

/// θ for one assignment, with its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QpEvaluation {
    pub theta: i64,
    pub m: usize,
    /// Edges between sibling grandchildren.
    pub theta1: usize,
    /// Edges inside a grandchild.
    pub theta2: usize,
    /// `2(m − θ1 − θ2) − 2θ2`.
    pub theta_prime: i64,
}

/// Builds the program for `g`, which must have `n = 2^p` vertices, `p >= 2`.
/// Each edge `{i, j}` (with `i < j`) contributes sixteen monomials: both
/// orientations of the four cross pairs and two sibling pairs, plus the four
/// same-block products.
pub fn encode_beta_max_qp(g: &Graph) -> Result<QpModel, SolverError> {
    let n = g.n();
    check_power_of_two(n)?;
    if n < 4 {
        return Err(SolverError::OrderTooSmall(n));
    }
    let p = n.trailing_zeros();
    let pi = i64::from(p);
    let mut terms = Vec::with_capacity(16 * g.m());
    for &(i, j) in g.edges() {
        for (classes, coeff) in [(&CROSS[..], 2 * pi), (&SIBLING[..], 2 * (pi - 1))] {
            for &(k, l) in classes {
                terms.push(QpTerm { i, k, j, l, coeff });
                terms.push(QpTerm {
                    i,
                    k: l,
                    j,
                    l: k,
                    coeff,
                });
            }
        }
        for k in 1..=4 {
            terms.push(QpTerm {
                i,
                k,
                j,
                l: k,
                coeff: 2 * (pi - 2),
            });
        }
    }
    let mut constraints = vec![QpConstraint::Binary];
    constraints.extend((1..=4).map(|k| QpConstraint::BlockSize { k, rhs: n / 4 }));
    constraints.extend((0..n).map(|i| QpConstraint::OneBlock { i, rhs: 1 }));
    Ok(QpModel {
        n,
        p,
        m: g.m(),
        variables: (0..n).flat_map(|i| (1..=4).map(move |k| (i, k))).collect(),
        terms,
        constraints,
        edges: g.edges().to_vec(),
    })
}

fn check_assignment(model: &QpModel, a: &Assignment) -> Result<(), SolverError> {
    if a.block_of.len() != model.n {
        return Err(SolverError::Constraint {
            family: "iii",
            detail: format!("{} vertices assigned, expected {}", a.block_of.len(), model.n),
        });
    }
    if let Some(i) = a.block_of.iter().position(|b| !(1..=4).contains(b)) {
        return Err(SolverError::Constraint {
            family: "iii",
            detail: format!("vertex {i} is in no block (label {})", a.block_of[i]),
        });
    }
    for k in 1..=4u8 {
        let count = a.block_of.iter().filter(|&&b| b == k).count();
        if count != model.n / 4 {
            return Err(SolverError::Constraint {
                family: "ii",
                detail: format!("block {k} has {count} vertices, expected {}", model.n / 4),
            });
        }
    }
    Ok(())
}

/// Evaluates θ term by term and checks it against `2pm − 2θ1 − 4θ2`.
pub fn qp_objective(model: &QpModel, a: &Assignment) -> Result<QpEvaluation, SolverError> {
    check_assignment(model, a)?;
    let x = |i: usize, k: u8| a.block_of[i] == k;
    let theta: i64 = model
        .terms
        .iter()
        .filter(|t| x(t.i, t.k) && x(t.j, t.l))
        .map(|t| t.coeff)
        .sum();

    let sibling = |u: u8, v: u8| SIBLING.iter().any(|&(k, l)| (u, v) == (k, l) || (u, v) == (l, k));
    let (mut theta1, mut theta2) = (0usize, 0usize);
    for &(i, j) in &model.edges {
        let (u, v) = (a.block_of[i], a.block_of[j]);
        if u == v {
            theta2 += 1;
        } else if sibling(u, v) {
            theta1 += 1;
        }
    }
    let m = model.m as i64;
    let p = i64::from(model.p);
    let (t1, t2) = (theta1 as i64, theta2 as i64);
    let identity = 2 * p * m - 2 * t1 - 4 * t2;
    if identity != theta {
        return Err(SolverError::ThetaIdentity {
            direct: theta,
            identity,
        });
    }
    Ok(QpEvaluation {
        theta,
        m: model.m,
        theta1,
        theta2,
        theta_prime: 2 * (m - t1 - t2) - 2 * t2,
    })
}

#[derive(Debug, Clone)]
pub struct QpMaximum {
    pub theta: i64,
    /// Every assignment attaining the maximum, in enumeration order.
    pub maximizers: Vec<(Assignment, QpEvaluation)>,
}

fn each_assignment(n: usize, f: &mut impl FnMut(&Assignment)) {
    fn fill(a: &mut Assignment, v: usize, counts: &mut [usize; 5], quota: usize, f: &mut impl FnMut(&Assignment)) {
        if v == a.block_of.len() {
            f(a);
            return;
        }
        for k in 1..=4u8 {
            if counts[k as usize] < quota {
                counts[k as usize] += 1;
                a.block_of[v] = k;
                fill(a, v + 1, counts, quota, f);
                counts[k as usize] -= 1;
            }
        }
    }
    let mut a = Assignment { block_of: vec![0; n] };
    fill(&mut a, 0, &mut [0; 5], n / 4, f);
}

/// Maximizes θ over every feasible assignment.
pub fn maximize_qp_exhaustive(model: &QpModel) -> Result<QpMaximum, SolverError> {
    if model.n > QP_EXHAUSTIVE_CAP {
        return Err(SolverError::TooLarge {
            what: "exhaustive QP maximization",
            n: model.n,
            cap: QP_EXHAUSTIVE_CAP,
        });
    }
    let mut best = i64::MIN;
    let mut maximizers = Vec::new();
    let mut failure = None;
    each_assignment(model.n, &mut |a| {
        if failure.is_some() {
            return;
        }
        match qp_objective(model, a) {
            Ok(eval) => {
                if eval.theta > best {
                    best = eval.theta;
                    maximizers.clear();
                }
                if eval.theta == best {
                    maximizers.push((a.clone(), eval));
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(QpMaximum {
            theta: best,
            maximizers,
        }),
    }
}
