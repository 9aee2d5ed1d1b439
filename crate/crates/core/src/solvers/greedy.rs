use super::{check_power_of_two, Objective, Optimum, SolverError};
use crate::graph::Graph;
use crate::oracles::for_each_subset;
use crate::tree::ReassemblingTree;
use crate::vertex_set::VertexSet;

/// Clusters up to this size are halved by trying every split.
const EXHAUSTIVE_SPLIT: usize = 8;

/// Split score, smaller is better. For β the children's degree sum equals
/// `d(X) + 2·cut`, so the cut alone decides; for α the larger child degree
/// comes first.
fn score(g: &Graph, objective: Objective, a: &VertexSet, b: &VertexSet) -> (usize, usize) {
    let cut = g.bridge_count(a, b);
    match objective {
        Objective::Beta => (cut, 0),
        Objective::Alpha => (g.boundary_degree(a).max(g.boundary_degree(b)), cut),
    }
}

fn exhaustive_split(g: &Graph, objective: Objective, members: &[usize]) -> VertexSet {
    let width = members.len();
    let mut best: Option<((usize, usize), VertexSet)> = None;
    for_each_subset((1u64 << width) - 2, width / 2 - 1, |sub| {
        let a: VertexSet = (0..width)
            .filter(|&i| i == 0 || sub >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let b: VertexSet = members.iter().copied().filter(|&v| !a.contains(v)).collect();
        let s = score(g, objective, &a, &b);
        if best.as_ref().is_none_or(|(incumbent, _)| s < *incumbent) {
            best = Some((s, a));
        }
    });
    best.expect("width >= 2").1
}

/// Best-swap hill climbing from the split into lower and upper halves.
fn local_search_split(g: &Graph, objective: Objective, members: &[usize]) -> VertexSet {
    let half = members.len() / 2;
    let mut a: VertexSet = members[..half].iter().copied().collect();
    let mut b: VertexSet = members[half..].iter().copied().collect();
    let mut current = score(g, objective, &a, &b);
    loop {
        let mut best: Option<((usize, usize), usize, usize)> = None;
        for u in a.iter() {
            for v in b.iter() {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2.remove(u);
                a2.insert(v);
                b2.remove(v);
                b2.insert(u);
                let s = score(g, objective, &a2, &b2);
                if s < current && best.is_none_or(|(incumbent, _, _)| s < incumbent) {
                    best = Some((s, u, v));
                }
            }
        }
        let Some((s, u, v)) = best else { break };
        a.remove(u);
        a.insert(v);
        b.remove(v);
        b.insert(u);
        current = s;
    }
    a
}

/// Balanced tree built by recursive top-down halving: small clusters are
/// split exhaustively, larger ones by swap-based local search on the cut.
/// The value is an upper bound on the minimum of `objective`.
pub fn greedy_balanced_heuristic(g: &Graph, objective: Objective) -> Result<Optimum, SolverError> {
    let n = g.n();
    check_power_of_two(n)?;
    let mut clusters = Vec::with_capacity(2 * n - 1);
    let mut stack = vec![g.vertices()];
    while let Some(x) = stack.pop() {
        if x.len() > 1 {
            let members = x.to_vec();
            let a = if members.len() <= EXHAUSTIVE_SPLIT {
                exhaustive_split(g, objective, &members)
            } else {
                local_search_split(g, objective, &members)
            };
            stack.push(x.difference(&a));
            stack.push(a);
        }
        clusters.push(x);
    }
    let tree = ReassemblingTree::new(n, clusters)?;
    let value = objective.of(tree.measures(g)?);
    Ok(Optimum { value, tree })
}
