//! Exhaustive ground-truth solvers.
//!
//! Everything here enumerates its whole search space (with symmetry pruning
//! only) and refuses instances above a fixed size cap instead of falling back
//! to a heuristic.

use thiserror::Error;

use crate::graph::{Bisection, Graph, GraphError};
use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by [`min_bisections`].
pub const BISECTION_CAP: usize = 16;
/// Largest vertex count accepted by the clique-cover oracles.
pub const CLIQUE_COVER_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("bisection needs an even vertex count >= 2, got {0}")]
    OddOrder(usize),
    #[error("{what} is capped at n <= {cap}, got {n}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("type sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("block sizes {sizes:?} must be positive and sum to n = {n}")]
    BadSizes { sizes: [usize; 4], n: usize },
    #[error("equal-size 4-clique cover needs n divisible by 4 and positive, got {0}")]
    NotDivisibleByFour(usize),
    #[error("a clique cover needs k >= 1")]
    ZeroBlocks,
    #[error("partitions into four positive parts need n >= 4, got {0}")]
    PartitionTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        return Err(OracleError::TooLarge { what, n, cap });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u64> {
    g.adjacency_masks().expect("callers enforce caps below 64")
}

/// Calls `f` for every `k`-subset of the bits in `pool`, in increasing
/// order of the compressed index pattern.
pub(crate) fn for_each_subset(pool: u64, k: usize, mut f: impl FnMut(u64)) {
    let positions: Vec<u32> = (0..64).filter(|&b| pool >> b & 1 == 1).collect();
    let r = positions.len();
    if k > r {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let expand = |pattern: u64| {
        let mut out = 0u64;
        let mut rest = pattern;
        while rest != 0 {
            out |= 1 << positions[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    };
    let mut pattern: u64 = (1 << k) - 1;
    let limit: u64 = 1 << r;
    while pattern < limit {
        f(expand(pattern));
        // Gosper's hack: next integer with the same popcount
        let c = pattern & pattern.wrapping_neg();
        let s = pattern + c;
        pattern = (((s ^ pattern) >> 2) / c) | s;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinBisections {
    pub value: usize,
    /// Every optimal bisection, with the block containing vertex 0 first,
    /// sorted by that block.
    pub optima: Vec<Bisection>,
}

/// All minimum bisections of `g` by full enumeration.
pub fn min_bisections(g: &Graph) -> Result<MinBisections, OracleError> {
    let n = g.n();
    if n < 2 || n % 2 == 1 {
        return Err(OracleError::OddOrder(n));
    }
    check_cap("minimum bisection", n, BISECTION_CAP)?;
    let adj = masks(g);
    let full = (1u64 << n) - 1;
    let mut best = usize::MAX;
    let mut optima = Vec::new();
    for_each_subset(full & !1, n / 2 - 1, |rest| {
        let a = rest | 1;
        let b = full & !a;
        let cut: usize = (0..n)
            .filter(|&v| a >> v & 1 == 1)
            .map(|v| (adj[v] & b).count_ones() as usize)
            .sum();
        if cut < best {
            best = cut;
            optima.clear();
        }
        if cut == best {
            optima.push(a);
        }
    });
    let mut optima: Vec<Bisection> = optima
        .into_iter()
        .map(|a| Bisection {
            a: VertexSet::from_mask(a),
            b: VertexSet::from_mask(full & !a),
        })
        .collect();
    optima.sort_by(|x, y| x.a.cmp(&y.a));
    Ok(MinBisections { value: best, optima })
}

/// True iff `x` and `y` lie wholly inside opposite blocks of `b`.
pub fn bisection_type(b: &Bisection, x: &VertexSet, y: &VertexSet) -> Result<bool, OracleError> {
    if let Some(v) = x.intersection(y).first() {
        return Err(OracleError::Overlap(v));
    }
    Ok((x.is_subset(&b.a) && y.is_subset(&b.b)) || (x.is_subset(&b.b) && y.is_subset(&b.a)))
}

/// Polynomial-time check of a clique-cover witness: blocks are disjoint,
/// cover `V(g)`, induce complete graphs, and (optionally) have the given
/// sizes in order.
pub fn verify_clique_cover(g: &Graph, blocks: &[VertexSet], sizes: Option<&[usize]>) -> bool {
    let mut seen = VertexSet::new();
    for b in blocks {
        if !b.is_disjoint(&seen) || g.check_subset(b).is_err() || !g.is_clique(b) {
            return false;
        }
        seen = seen.union(b);
    }
    let sizes_ok = sizes.is_none_or(|s| s.len() == blocks.len() && s.iter().zip(blocks).all(|(&k, b)| b.len() == k));
    seen == g.vertices() && sizes_ok
}

/// Decides whether `V(g)` splits into at most `k` cliques, returning a
/// witness partition when it does.
pub fn clique_cover_exists(g: &Graph, k: usize) -> Result<Option<Vec<VertexSet>>, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroBlocks);
    }
    check_cap("clique cover", g.n(), CLIQUE_COVER_CAP)?;
    let adj = masks(g);
    let mut blocks: Vec<u64> = Vec::new();
    let found = cover_any(&adj, 0, k, &mut blocks);
    Ok(found.then(|| blocks.iter().map(|&b| VertexSet::from_mask(b)).collect()))
}

fn cover_any(adj: &[u64], v: usize, k: usize, blocks: &mut Vec<u64>) -> bool {
    if v == adj.len() {
        return true;
    }
    for i in 0..blocks.len() {
        if blocks[i] & !adj[v] == 0 {
            blocks[i] |= 1 << v;
            if cover_any(adj, v + 1, k, blocks) {
                return true;
            }
            blocks[i] &= !(1 << v);
        }
    }
    if blocks.len() < k {
        blocks.push(1 << v);
        if cover_any(adj, v + 1, k, blocks) {
            return true;
        }
        blocks.pop();
    }
    false
}

struct FixedCover<'a> {
    adj: &'a [u64],
    sizes: [usize; 4],
}

#[derive(Clone, Copy)]
struct CoverState {
    blocks: [u64; 4],
    counts: [usize; 4],
    /// Vertices adjacent to every member of each block.
    common: [u64; 4],
}

impl FixedCover<'_> {
    fn search(&self, v: usize, state: CoverState) -> Option<[u64; 4]> {
        let n = self.adj.len();
        if v == n {
            return Some(state.blocks);
        }
        let later: u64 = if v + 1 >= 64 {
            0
        } else {
            !((1u64 << (v + 1)) - 1) & ((1u64 << n) - 1)
        };
        for b in 0..4 {
            if state.counts[b] == self.sizes[b] || state.common[b] >> v & 1 == 0 {
                continue;
            }
            // blocks of equal size are interchangeable while empty
            if state.counts[b] == 0 && (0..b).any(|c| state.counts[c] == 0 && self.sizes[c] == self.sizes[b]) {
                continue;
            }
            let mut next = state;
            next.blocks[b] |= 1 << v;
            next.counts[b] += 1;
            next.common[b] &= self.adj[v];
            let feasible = (0..4).all(|c| {
                let need = self.sizes[c] - next.counts[c];
                need == 0 || (next.common[c] & later).count_ones() as usize >= need
            });
            if feasible {
                if let Some(found) = self.search(v + 1, next) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// A partition into cliques `A_1..A_4` with `|A_i| = sizes[i]`, if one exists.
pub fn fixed_size_clique_cover4(g: &Graph, sizes: [usize; 4]) -> Result<Option<Vec<VertexSet>>, OracleError> {
    let n = g.n();
    if sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
        return Err(OracleError::BadSizes { sizes, n });
    }
    check_cap("clique cover", n, CLIQUE_COVER_CAP)?;
    let adj = masks(g);
    let full = (1u64 << n) - 1;
    let search = FixedCover { adj: &adj, sizes };
    let start = CoverState {
        blocks: [0; 4],
        counts: [0; 4],
        common: [full; 4],
    };
    Ok(search
        .search(0, start)
        .map(|blocks| blocks.iter().map(|&b| VertexSet::from_mask(b)).collect()))
}

/// A partition into four cliques of size `n/4`, if one exists.
pub fn equal_size_clique_cover4(g: &Graph) -> Result<Option<Vec<VertexSet>>, OracleError> {
    let n = g.n();
    if n == 0 || !n.is_multiple_of(4) {
        return Err(OracleError::NotDivisibleByFour(n));
    }
    fixed_size_clique_cover4(g, [n / 4; 4])
}

/// All partitions of `n` into four positive parts `n1 >= n2 >= n3 >= n4`,
/// in descending lexicographic order.
pub fn partitions4(n: usize) -> Result<Vec<[usize; 4]>, OracleError> {
    if n < 4 {
        return Err(OracleError::PartitionTooSmall(n));
    }
    let mut out = Vec::new();
    for a in (1..=n - 3).rev() {
        for b in (1..=a.min(n - a - 2)).rev() {
            for c in (1..=b.min(n - a - b - 1)).rev() {
                let d = n - a - b - c;
                if d >= 1 && d <= c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    Ok(out)
}

/// The nearest-integer cubic for the number of partitions of `n` into four
/// positive parts: `[(n+1)³/144 − (n+1)/48]` for even `n`,
/// `[(n+1)³/144 − (n+1)/12]` for odd `n`. Evaluated exactly in integers.
pub fn p4_closed_form(n: usize) -> Result<u64, OracleError> {
    if n < 4 {
        return Err(OracleError::PartitionTooSmall(n));
    }
    let x = n as i128 + 1;
    // numerator over 144: 1/48 = 3/144, 1/12 = 12/144
    let linear = if n.is_multiple_of(2) { 3 } else { 12 };
    let numerator = x * x * x - linear * x;
    // round half away from zero; numerator is positive for n >= 4
    let rounded = (2 * numerator + 144).div_euclid(288);
    Ok(rounded as u64)
}
