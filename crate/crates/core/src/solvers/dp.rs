use super::{check_power_of_two, Objective, Optimum, Sense, SolverError};
use crate::graph::Graph;
use crate::oracles::for_each_subset;
use crate::tree::ReassemblingTree;
use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by the subset DP.
pub const DP_CAP: usize = 16;

/// True if `a` precedes `b` in lexicographic member order. Both masks must
/// have the same popcount.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

/// Optimum of `objective` over all balanced trees on `V(g)`.
///
/// Cost tables are filled bottom-up by subset size `1, 2, 4, .., n`. For a
/// cluster `X`, every halving `{X1, X2}` is tried; among equally good
/// halvings the one whose block containing `min X` is lexicographically
/// least wins, which makes the returned tree deterministic.
pub fn optimize_balanced(g: &Graph, objective: Objective, sense: Sense) -> Result<Optimum, SolverError> {
    let n = g.n();
    check_power_of_two(n)?;
    if n > DP_CAP {
        return Err(SolverError::TooLarge {
            what: "balanced DP",
            n,
            cap: DP_CAP,
        });
    }
    let adj = g.adjacency_masks().expect("n <= 16");
    let degree = |mask: u64| -> usize {
        let mut rest = mask;
        let mut d = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            d += (adj[v] & !mask).count_ones() as usize;
            rest &= rest - 1;
        }
        d
    };

    let size = 1usize << n;
    let mut cost = vec![0usize; size];
    let mut split = vec![0u64; size];
    for v in 0..n {
        cost[1 << v] = degree(1 << v);
    }

    let mut width = 2;
    while width <= n {
        for mask in 0..size as u64 {
            if mask.count_ones() as usize != width {
                continue;
            }
            let low = mask & mask.wrapping_neg();
            let mut best: Option<(usize, u64)> = None;
            for_each_subset(mask ^ low, width / 2 - 1, |sub| {
                let left = sub | low;
                let right = mask ^ left;
                let (a, b) = (cost[left as usize], cost[right as usize]);
                let combined = match objective {
                    Objective::Beta => a + b,
                    Objective::Alpha => a.max(b),
                };
                let better = match best {
                    None => true,
                    Some((value, incumbent)) => {
                        sense.improves(combined, value) || (combined == value && lex_less(left, incumbent))
                    }
                };
                if better {
                    best = Some((combined, left));
                }
            });
            let (children, left) = best.expect("every cluster of size >= 2 has a halving");
            let own = degree(mask);
            cost[mask as usize] = match objective {
                Objective::Beta => own + children,
                Objective::Alpha => own.max(children),
            };
            split[mask as usize] = left;
        }
        width *= 2;
    }

    let full = (1u64 << n) - 1;
    let mut clusters = Vec::with_capacity(2 * n - 1);
    let mut stack = vec![full];
    while let Some(mask) = stack.pop() {
        clusters.push(VertexSet::from_mask(mask));
        if mask.count_ones() > 1 {
            let left = split[mask as usize];
            stack.push(left);
            stack.push(mask ^ left);
        }
    }
    let tree = ReassemblingTree::new(n, clusters)?;
    Ok(Optimum {
        value: cost[full as usize],
        tree,
    })
}
