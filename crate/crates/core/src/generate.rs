//! Seeded instance generators used by the lemma checkers, tests and CLI.
//!
//! All generators draw only from the supplied RNG, so a fixed seed gives a
//! fixed instance stream.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::solvers::Assignment;
use crate::tree::{ReassemblingTree, TreeError};
use crate::vertex_set::VertexSet;

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("distinct pairs")
}

/// `G(n, p)` conditioned on connectivity, by rejection.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// A random reassembling tree (not necessarily balanced) built by merging
/// two random top clusters until one remains.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> ReassemblingTree {
    let mut tops: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    let mut all = tops.clone();
    while tops.len() > 1 {
        let a = tops.swap_remove(rng.gen_range(0..tops.len()));
        let b = tops.swap_remove(rng.gen_range(0..tops.len()));
        let joined = a.union(&b);
        tops.push(joined.clone());
        all.push(joined);
    }
    ReassemblingTree::new(n, all).expect("merging tops yields a tree")
}

/// A uniformly random balanced tree over a power-of-two vertex count:
/// shuffle the vertices, then merge consecutive blocks level by level.
pub fn random_balanced_tree<R: Rng>(rng: &mut R, n: usize) -> Result<ReassemblingTree, TreeError> {
    if !n.is_power_of_two() {
        return Err(TreeError::NotPowerOfTwo(n));
    }
    let order = random_permutation(rng, n);
    Ok(balanced_tree_from_order(&order))
}

/// The balanced tree whose clusters are aligned consecutive blocks of `order`.
pub fn balanced_tree_from_order(order: &[usize]) -> ReassemblingTree {
    let n = order.len();
    assert!(n.is_power_of_two(), "order length must be a power of two");
    let mut clusters = Vec::with_capacity(2 * n - 1);
    let mut width = 1;
    while width <= n {
        for block in order.chunks(width) {
            clusters.push(block.iter().copied().collect::<VertexSet>());
        }
        width *= 2;
    }
    ReassemblingTree::new(n, clusters).expect("aligned blocks form a tree")
}

/// Random partition of `0..n` into four blocks of size `n/4`, as vertex
/// lists.
fn random_quarters<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    assert!(n.is_multiple_of(4), "n must be divisible by 4");
    random_permutation(rng, n).chunks(n / 4).map(|c| c.to_vec()).collect()
}

fn planted<R: Rng>(rng: &mut R, n: usize, cross_p: f64, cliques: bool) -> (Graph, Vec<VertexSet>) {
    let blocks = random_quarters(rng, n);
    let mut block_of = vec![0; n];
    for (k, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v] = k;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same = block_of[u] == block_of[v];
            if (same && cliques) || (!same && rng.gen_bool(cross_p)) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, edges).expect("distinct pairs");
    let sets = blocks.into_iter().map(|b| b.into_iter().collect()).collect();
    (graph, sets)
}

/// Four disjoint cliques of size `n/4` plus random cross edges: always a
/// positive equal-size 4-clique-cover instance. Returns the planted blocks.
pub fn planted_clique_cover<R: Rng>(rng: &mut R, n: usize, cross_p: f64) -> (Graph, Vec<VertexSet>) {
    planted(rng, n, cross_p, true)
}

/// Four disjoint independent sets of size `n/4` with random cross edges.
pub fn planted_independent_sets<R: Rng>(rng: &mut R, n: usize, cross_p: f64) -> (Graph, Vec<VertexSet>) {
    planted(rng, n, cross_p, false)
}

/// A uniformly random assignment of `n` vertices to four blocks of `n/4`.
pub fn random_assignment<R: Rng>(rng: &mut R, n: usize) -> Assignment {
    let mut block_of = vec![0u8; n];
    for (k, block) in random_quarters(rng, n).into_iter().enumerate() {
        for v in block {
            block_of[v] = k as u8 + 1;
        }
    }
    Assignment { block_of }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_instances_satisfy_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (g, blocks) = planted_clique_cover(&mut rng, 8, 0.5);
            assert!(blocks.iter().all(|b| b.len() == 2 && g.is_clique(b)));
            let (h, blocks) = planted_independent_sets(&mut rng, 8, 0.5);
            assert!(blocks.iter().all(|b| b.len() == 2 && h.is_independent(b)));
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_graph(&mut ChaCha8Rng::seed_from_u64(9), 10, 0.4);
        let b = random_graph(&mut ChaCha8Rng::seed_from_u64(9), 10, 0.4);
        assert_eq!(a, b);
        let g = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(9), 6, 0.3);
        assert!(g.is_connected());
    }

    #[test]
    fn balanced_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 2, 4, 8, 16, 32] {
            let t = random_balanced_tree(&mut rng, n).unwrap();
            assert!(t.is_balanced());
            assert_eq!(t.len(), 2 * n - 1);
        }
        assert!(random_balanced_tree(&mut rng, 6).is_err());
        let a = random_assignment(&mut rng, 8);
        for k in 1..=4u8 {
            assert_eq!(a.block_of.iter().filter(|&&b| b == k).count(), 2);
        }
    }
}
