//! Batch checkers: generate seeded instances, run one extraction or
//! identity per instance, and aggregate into a [`LemmaReport`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    augment, clique_cover_from_beta_optimal, independent_grandchildren_from_beta_max, min_bisection_from_alpha_optimal,
    min_bisection_via_augment, violation, Checked, ReductionError,
};
use crate::generate;
use crate::graph::Graph;
use crate::oracles;
use crate::solvers::{self, Objective, Sense, ENUMERATION_CAP, QP_EXHAUSTIVE_CAP};
use crate::tree::ReassemblingTree;

/// Cross-edge probability for random and planted instances.
const EDGE_P: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaParams {
    pub instances: usize,
    pub seed: u64,
    /// Orders to cycle through; empty means the lemma's default.
    pub n: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub graph: Graph,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: u8,
    pub tried: usize,
    pub passed: bool,
    /// Instances whose hypothesis failed.
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

struct Instance {
    graph: Graph,
    tree: Option<ReassemblingTree>,
}

fn default_orders(lemma: u8) -> Vec<usize> {
    match lemma {
        1..=3 => vec![4],
        _ => vec![8],
    }
}

fn generate(lemma: u8, params: &LemmaParams, orders: &[usize]) -> Result<Vec<Instance>, ReductionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.instances)
        .map(|i| {
            let n = orders[i % orders.len()];
            Ok(match lemma {
                1..=3 => Instance {
                    graph: generate::random_connected_graph(&mut rng, n, EDGE_P),
                    tree: None,
                },
                4 => {
                    let graph = generate::random_graph(&mut rng, n, EDGE_P);
                    let tree = Some(generate::random_balanced_tree(&mut rng, n)?);
                    Instance { graph, tree }
                }
                5 => Instance {
                    graph: generate::planted_independent_sets(&mut rng, n, EDGE_P).0,
                    tree: None,
                },
                _ => Instance {
                    graph: generate::planted_clique_cover(&mut rng, n, EDGE_P).0,
                    tree: None,
                },
            })
        })
        .collect()
}

fn check_orders(lemma: u8, orders: &[usize]) -> Result<(), ReductionError> {
    for &n in orders {
        let ok = match lemma {
            1 | 2 => n >= 2 && n % 2 == 0,
            3 => n >= 2 && n.is_power_of_two(),
            4 => n >= 1 && n.is_power_of_two(),
            _ => n >= 4 && n.is_power_of_two(),
        };
        if !ok {
            return Err(ReductionError::Precondition(format!(
                "lemma {lemma} cannot be checked at n = {n}"
            )));
        }
    }
    Ok(())
}

/// Confirms the DP optimum against full enumeration when that is feasible.
fn cross_check(
    lemma: u8,
    g: &Graph,
    objective: Objective,
    sense: Sense,
    dp_value: usize,
) -> Result<(), ReductionError> {
    if g.n() <= ENUMERATION_CAP {
        let (naive, _) = solvers::naive_optimum(g, objective, sense)?;
        if naive != dp_value {
            return Err(violation(
                lemma,
                format!("DP optimum {dp_value} differs from enumeration {naive}"),
            ));
        }
    }
    Ok(())
}

enum Outcome {
    Passed,
    Skipped,
}

fn check(lemma: u8, instance: &Instance) -> Result<Outcome, ReductionError> {
    let g = &instance.graph;
    match lemma {
        1 => {
            // every minimum bisection of the augmented graph is checked inside
            min_bisection_via_augment(g)?;
        }
        2 => {
            let (value, b) = min_bisection_via_augment(g)?;
            let direct = oracles::min_bisections(g)?.value;
            if value != direct || b.value(g) != direct {
                return Err(violation(2, format!("pipeline gives {value}, direct oracle {direct}")));
            }
        }
        3 => {
            let ag = augment(g)?;
            let best = solvers::optimize_balanced(&ag.graph, Objective::Alpha, Sense::Minimize)?;
            cross_check(3, &ag.graph, Objective::Alpha, Sense::Minimize, best.value)?;
            min_bisection_from_alpha_optimal(&ag, &best.tree)?;
        }
        4 => {
            let t = instance.tree.as_ref().expect("lemma 4 instances carry a tree");
            let direct = t.measures(g)?.beta;
            let via_heights = t.beta_via_edge_heights(g)?;
            if direct != via_heights {
                return Err(violation(4, format!("β = {direct} but 2·Σ heights = {via_heights}")));
            }
        }
        5 => {
            let best = solvers::optimize_balanced(g, Objective::Beta, Sense::Maximize)?;
            cross_check(5, g, Objective::Beta, Sense::Maximize, best.value)?;
            if let Checked::Skipped(_) = independent_grandchildren_from_beta_max(g, &best.tree)? {
                return Ok(Outcome::Skipped);
            }
            if g.n() <= QP_EXHAUSTIVE_CAP {
                let model = solvers::encode_beta_max_qp(g)?;
                let qp = solvers::maximize_qp_exhaustive(&model)?;
                if !qp.maximizers.iter().any(|(_, e)| e.theta2 == 0) {
                    return Err(violation(5, format!("no θ-maximizer (θ = {}) has θ2 = 0", qp.theta)));
                }
            }
        }
        _ => {
            let best = solvers::optimize_balanced(g, Objective::Beta, Sense::Minimize)?;
            cross_check(6, g, Objective::Beta, Sense::Minimize, best.value)?;
            if let Checked::Skipped(_) = clique_cover_from_beta_optimal(g, &best.tree)? {
                return Ok(Outcome::Skipped);
            }
        }
    }
    Ok(Outcome::Passed)
}

/// Checks lemma `id` on `params.instances` seeded instances. Instances are
/// generated sequentially from the seed and checked in parallel; the first
/// violation by index becomes the counterexample. Errors other than
/// violations (caps, bad orders) abort the run.
pub fn verify_lemma(id: u8, params: &LemmaParams) -> Result<LemmaReport, ReductionError> {
    if !(1..=6).contains(&id) {
        return Err(ReductionError::UnknownLemma(id));
    }
    let orders = if params.n.is_empty() {
        default_orders(id)
    } else {
        params.n.clone()
    };
    check_orders(id, &orders)?;
    let instances = generate(id, params, &orders)?;
    let outcomes: Vec<Result<Outcome, ReductionError>> = instances.par_iter().map(|inst| check(id, inst)).collect();

    let mut skipped = 0;
    let mut counterexample = None;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(Outcome::Passed) => {}
            Ok(Outcome::Skipped) => skipped += 1,
            Err(ReductionError::LemmaViolation { detail, .. }) => {
                if counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        index,
                        graph: instances[index].graph.clone(),
                        witness: detail,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LemmaReport {
        lemma: id,
        tried: instances.len(),
        passed: counterexample.is_none(),
        skipped,
        counterexample,
    })
}
