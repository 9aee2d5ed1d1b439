use super::{check_power_of_two, Objective, Sense, SolverError};
use crate::graph::Graph;
use crate::oracles::for_each_subset;
use crate::tree::ReassemblingTree;
use crate::vertex_set::VertexSet;

/// Largest vertex count for explicit balanced-tree enumeration.
pub const ENUMERATION_CAP: usize = 8;

/// `T(1) = 1`, `T(n) = C(n, n/2)/2 · T(n/2)²`.
pub fn balanced_tree_count(n: usize) -> Result<u128, SolverError> {
    check_power_of_two(n)?;
    if n == 1 {
        return Ok(1);
    }
    let half = balanced_tree_count(n / 2)?;
    let binom = (1..=n as u128 / 2).fold(1u128, |acc, i| acc * (n as u128 / 2 + i) / i);
    Ok(binom / 2 * half * half)
}

/// Cluster lists (as masks) of every balanced tree over `mask`.
fn trees_over(mask: u64) -> Vec<Vec<u64>> {
    let width = mask.count_ones() as usize;
    if width == 1 {
        return vec![vec![mask]];
    }
    let low = mask & mask.wrapping_neg();
    let mut halves = Vec::new();
    for_each_subset(mask ^ low, width / 2 - 1, |sub| halves.push(sub | low));
    // lexicographic order of the block holding the lowest vertex
    halves.sort_by_key(|&h| VertexSet::from_mask(h));
    let mut out = Vec::new();
    for left in halves {
        let right = mask ^ left;
        let lefts = trees_over(left);
        let rights = trees_over(right);
        for l in &lefts {
            for r in &rights {
                let mut clusters = Vec::with_capacity(2 * width - 1);
                clusters.push(mask);
                clusters.extend_from_slice(l);
                clusters.extend_from_slice(r);
                out.push(clusters);
            }
        }
    }
    out
}

/// Every balanced tree over `0..n`, each exactly once, in a fixed order.
pub fn enumerate_balanced_trees(n: usize) -> Result<impl Iterator<Item = ReassemblingTree>, SolverError> {
    check_power_of_two(n)?;
    if n > ENUMERATION_CAP {
        return Err(SolverError::TooLarge {
            what: "balanced-tree enumeration",
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let full = (1u64 << n) - 1;
    Ok(trees_over(full).into_iter().map(move |clusters| {
        ReassemblingTree::new(n, clusters.into_iter().map(VertexSet::from_mask))
            .expect("recursive halving yields a tree")
    }))
}

/// Optimal value over all balanced trees by brute force, with every tree
/// attaining it.
pub fn naive_optimum(
    g: &Graph,
    objective: Objective,
    sense: Sense,
) -> Result<(usize, Vec<ReassemblingTree>), SolverError> {
    let mut best: Option<usize> = None;
    let mut optima = Vec::new();
    for tree in enumerate_balanced_trees(g.n())? {
        let value = objective.of(tree.measures(g)?);
        match best {
            Some(b) if value == b => optima.push(tree),
            Some(b) if !sense.improves(value, b) => {}
            _ => {
                best = Some(value);
                optima = vec![tree];
            }
        }
    }
    Ok((best.expect("at least one balanced tree"), optima))
}
