//! Reassembling trees: unordered binary trees given as laminar cluster
//! collections over `0..n`, together with their α/β measures.
//!
//! A collection is a tree when it contains every singleton, the full vertex
//! set, and every non-root cluster `X` has exactly one disjoint partner `Y`
//! with `X ∪ Y` also in the collection. Such a collection has `2n - 1`
//! clusters. [`ReassemblingTree::new`] checks all of this and reports every
//! violation it finds; on success the parent/child relations and heights are
//! materialized once.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{check_permutation, Edge, Graph, GraphError};
use crate::vertex_set::{canonical_cmp, VertexSet};

/// Largest ground set accepted by the exhaustive isomorphism search.
pub const ISOMORPHISM_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    EmptyGround,
    EmptyCluster,
    OutOfRange {
        cluster: VertexSet,
        vertex: usize,
    },
    Duplicate(VertexSet),
    MissingSingleton(usize),
    MissingRoot,
    NoPartner(VertexSet),
    AmbiguousPartner {
        cluster: VertexSet,
        partners: Vec<VertexSet>,
    },
    Crossing(VertexSet, VertexSet),
    WrongCount {
        found: usize,
        expected: usize,
    },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyGround => write!(f, "tree over an empty vertex set"),
            Self::EmptyCluster => write!(f, "empty cluster"),
            Self::OutOfRange { cluster, vertex } => {
                write!(f, "cluster {cluster:?} contains out-of-range vertex {vertex}")
            }
            Self::Duplicate(c) => write!(f, "cluster {c:?} listed more than once"),
            Self::MissingSingleton(v) => write!(f, "missing leaf {{{v}}}"),
            Self::MissingRoot => write!(f, "missing root cluster"),
            Self::NoPartner(c) => write!(f, "cluster {c:?} has no sibling whose union is a cluster"),
            Self::AmbiguousPartner { cluster, partners } => {
                write!(f, "cluster {cluster:?} has several siblings {partners:?}")
            }
            Self::Crossing(a, b) => write!(f, "clusters {a:?} and {b:?} overlap without nesting"),
            Self::WrongCount { found, expected } => {
                write!(f, "{found} clusters, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid tree: {}", .0.iter().map(|v| v.to_string()).join("; "))]
    Invalid(Vec<TreeViolation>),
    #[error("{0:?} is not a cluster of the tree")]
    NotACluster(VertexSet),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("tree is over {tree} vertices but the graph has {graph}")]
    SizeMismatch { tree: usize, graph: usize },
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("n = {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("tree is not balanced")]
    NotBalanced,
    #[error("isomorphism search is capped at n <= {ISOMORPHISM_CAP}, got {0}")]
    TooLarge(usize),
    #[error("merge {0}: {1}")]
    BadMerge(usize, String),
    #[error("tree JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// α (maximum cluster degree) and β (sum of cluster degrees) of a reassembling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasurePair {
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Clone)]
pub struct ReassemblingTree {
    n: usize,
    /// Sorted by size, then lexicographically. Leaves `{0}..{n-1}` come first
    /// and the root last.
    clusters: Vec<VertexSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Option<(usize, usize)>>,
    height: Vec<usize>,
    index: HashMap<VertexSet, usize>,
}

impl ReassemblingTree {
    /// Validates a cluster collection over `0..n`.
    pub fn new(n: usize, clusters: impl IntoIterator<Item = VertexSet>) -> Result<Self, TreeError> {
        let mut clusters: Vec<VertexSet> = clusters.into_iter().collect();
        clusters.sort_by(canonical_cmp);
        let violations = collect_violations(n, &clusters);
        if !violations.is_empty() {
            return Err(TreeError::Invalid(violations));
        }

        let index: HashMap<VertexSet, usize> = clusters.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let k = clusters.len();
        let mut parent = vec![None; k];
        let mut children = vec![None; k];
        for i in 0..k - 1 {
            if parent[i].is_some() {
                continue;
            }
            let (j, p) = partner_of(&clusters, &index, i)
                .into_iter()
                .next()
                .expect("partner existence already validated");
            parent[i] = Some(p);
            parent[j] = Some(p);
            children[p] = Some((i.min(j), i.max(j)));
        }
        let mut height = vec![0; k];
        for i in 0..k {
            if let Some((a, b)) = children[i] {
                height[i] = 1 + height[a].max(height[b]);
            }
        }
        Ok(Self {
            n,
            clusters,
            parent,
            children,
            height,
            index,
        })
    }

    /// Validates a cluster collection against the vertex set of `g`.
    pub fn validate(g: &Graph, clusters: impl IntoIterator<Item = VertexSet>) -> Result<Self, TreeError> {
        Self::new(g.n(), clusters)
    }

    /// Builds a tree bottom-up from a merge script. Each step joins two
    /// clusters that are currently tops of the forest.
    pub fn from_merges(n: usize, merges: &[(VertexSet, VertexSet)]) -> Result<Self, TreeError> {
        let mut tops: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
        let mut all = tops.clone();
        for (step, (x, y)) in merges.iter().enumerate() {
            let mut take = |c: &VertexSet| match tops.iter().position(|t| t == c) {
                Some(p) => Ok(tops.swap_remove(p)),
                None => Err(TreeError::BadMerge(step, format!("{c:?} is not a current top cluster"))),
            };
            let x = take(x)?;
            let y = take(y)?;
            let joined = x.union(&y);
            tops.push(joined.clone());
            all.push(joined);
        }
        Self::new(n, all)
    }

    /// Parses the JSON form: an array of clusters, each an array of ids.
    pub fn from_json(n: usize, text: &str) -> Result<Self, TreeError> {
        let raw: Vec<Vec<usize>> = serde_json::from_str(text).map_err(|e| TreeError::Json(e.to_string()))?;
        Self::new(n, raw.into_iter().map(|c| c.into_iter().collect()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("clusters serialize")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clusters(&self) -> &[VertexSet] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn root(&self) -> &VertexSet {
        self.clusters.last().expect("a valid tree has a root")
    }

    pub fn contains(&self, x: &VertexSet) -> bool {
        self.index.contains_key(x)
    }

    fn index_of(&self, x: &VertexSet) -> Result<usize, TreeError> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| TreeError::NotACluster(x.clone()))
    }

    pub fn parent(&self, x: &VertexSet) -> Result<Option<&VertexSet>, TreeError> {
        Ok(self.parent[self.index_of(x)?].map(|p| &self.clusters[p]))
    }

    pub fn children(&self, x: &VertexSet) -> Result<Option<(&VertexSet, &VertexSet)>, TreeError> {
        Ok(self.children[self.index_of(x)?].map(|(a, b)| (&self.clusters[a], &self.clusters[b])))
    }

    pub fn sibling(&self, x: &VertexSet) -> Result<Option<&VertexSet>, TreeError> {
        let i = self.index_of(x)?;
        Ok(self.parent[i].map(|p| {
            let (a, b) = self.children[p].expect("parents have children");
            &self.clusters[if a == i { b } else { a }]
        }))
    }

    /// The two children of the root, or `None` for a single-leaf tree.
    pub fn root_children(&self) -> Option<(&VertexSet, &VertexSet)> {
        self.children[self.clusters.len() - 1].map(|(a, b)| (&self.clusters[a], &self.clusters[b]))
    }

    /// The clusters two levels below the root, in canonical order.
    pub fn grandchildren(&self) -> Vec<&VertexSet> {
        let root = self.clusters.len() - 1;
        let mut out: Vec<&VertexSet> = self.children[root]
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .filter_map(|c| self.children[c])
            .flat_map(|(a, b)| [&self.clusters[a], &self.clusters[b]])
            .collect();
        out.sort_by(|a, b| canonical_cmp(a, b));
        out
    }

    pub fn height(&self) -> usize {
        *self.height.last().expect("a valid tree has a root")
    }

    /// Height of the subtree rooted at `x`.
    pub fn cluster_height(&self, x: &VertexSet) -> Result<usize, TreeError> {
        Ok(self.height[self.index_of(x)?])
    }

    /// True iff the height equals `⌈log₂ n⌉`.
    pub fn is_balanced(&self) -> bool {
        self.height() == ceil_log2(self.n)
    }

    /// The chain of clusters from leaf `{v}` up to the root.
    pub fn leaf_path(&self, v: usize) -> Result<Vec<&VertexSet>, TreeError> {
        if v >= self.n {
            return Err(TreeError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut path = Vec::new();
        // leaves occupy the first n canonical slots
        let mut at = Some(v);
        while let Some(i) = at {
            path.push(&self.clusters[i]);
            at = self.parent[i];
        }
        Ok(path)
    }

    fn check_graph(&self, g: &Graph) -> Result<(), TreeError> {
        if g.n() != self.n {
            return Err(TreeError::SizeMismatch {
                tree: self.n,
                graph: g.n(),
            });
        }
        Ok(())
    }

    /// `|∂(x)|` for a cluster `x` of this tree.
    pub fn cluster_degree(&self, g: &Graph, x: &VertexSet) -> Result<usize, TreeError> {
        self.check_graph(g)?;
        self.index_of(x)?;
        Ok(g.boundary_degree(x))
    }

    /// Degrees of every cluster, in canonical order.
    pub fn degrees(&self, g: &Graph) -> Result<Vec<usize>, TreeError> {
        self.check_graph(g)?;
        Ok(self.clusters.iter().map(|c| g.boundary_degree(c)).collect())
    }

    pub fn measures(&self, g: &Graph) -> Result<MeasurePair, TreeError> {
        let degrees = self.degrees(g)?;
        Ok(MeasurePair {
            alpha: degrees.iter().copied().max().unwrap_or(0),
            beta: degrees.iter().sum(),
        })
    }

    /// Height of the least cluster containing both endpoints of `e`.
    pub fn edge_height(&self, g: &Graph, e: Edge) -> Result<usize, TreeError> {
        self.check_graph(g)?;
        let (u, v) = e;
        if !g.has_edge(u, v) {
            return Err(TreeError::NotAnEdge(u, v));
        }
        let mut at = u;
        while !self.clusters[at].contains(v) {
            at = self.parent[at].expect("the root contains every vertex");
        }
        Ok(self.height[at])
    }

    /// `2 · Σ_e height(e)`, which equals β on balanced trees over a
    /// power-of-two vertex count. Refuses any other input.
    pub fn beta_via_edge_heights(&self, g: &Graph) -> Result<usize, TreeError> {
        self.check_graph(g)?;
        if !self.n.is_power_of_two() {
            return Err(TreeError::NotPowerOfTwo(self.n));
        }
        if !self.is_balanced() {
            return Err(TreeError::NotBalanced);
        }
        let mut sum = 0;
        for &e in g.edges() {
            sum += self.edge_height(g, e)?;
        }
        Ok(2 * sum)
    }

    /// The image tree `{θ(X) : X ∈ B}` under a vertex permutation.
    pub fn apply_bijection(&self, theta: &[usize]) -> Result<Self, TreeError> {
        check_permutation(theta, self.n)?;
        Self::new(self.n, self.clusters.iter().map(|c| c.map(|v| theta[v])))
    }

    /// Searches for a permutation θ with `θ(self) = other` that preserves
    /// every cluster degree in `g`. Exhaustive; capped at
    /// [`ISOMORPHISM_CAP`] vertices.
    pub fn isomorphic_reassembling(&self, g: &Graph, other: &Self) -> Result<Option<Vec<usize>>, TreeError> {
        self.check_graph(g)?;
        other.check_graph(g)?;
        if self.n > ISOMORPHISM_CAP {
            return Err(TreeError::TooLarge(self.n));
        }
        let profile = |t: &Self| -> Vec<(usize, usize)> {
            t.clusters
                .iter()
                .map(|c| (c.len(), g.boundary_degree(c)))
                .sorted()
                .collect()
        };
        if profile(self) != profile(other) {
            return Ok(None);
        }
        let degree_of: HashMap<&VertexSet, usize> = other.clusters.iter().map(|c| (c, g.boundary_degree(c))).collect();
        let found = (0..self.n).permutations(self.n).find(|theta| {
            self.clusters
                .iter()
                .all(|c| degree_of.get(&c.map(|v| theta[v])) == Some(&g.boundary_degree(c)))
        });
        Ok(found)
    }
}

impl fmt::Debug for ReassemblingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.clusters).finish()
    }
}

impl PartialEq for ReassemblingTree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.clusters == other.clusters
    }
}

impl Eq for ReassemblingTree {}

impl Serialize for ReassemblingTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.clusters)
    }
}

/// `⌈log₂ n⌉`, with `ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Partners `(j, parent)` of cluster `i`: disjoint clusters whose union is a cluster.
fn partner_of(clusters: &[VertexSet], index: &HashMap<VertexSet, usize>, i: usize) -> Vec<(usize, usize)> {
    let x = &clusters[i];
    clusters
        .iter()
        .enumerate()
        .filter(|(j, y)| *j != i && x.is_disjoint(y))
        .filter_map(|(j, y)| index.get(&x.union(y)).map(|&p| (j, p)))
        .collect()
}

fn collect_violations(n: usize, clusters: &[VertexSet]) -> Vec<TreeViolation> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(TreeViolation::EmptyGround);
        return out;
    }
    let mut index = HashMap::new();
    for (i, c) in clusters.iter().enumerate() {
        if c.is_empty() {
            out.push(TreeViolation::EmptyCluster);
        } else if let Some(vertex) = c.last().filter(|&v| v >= n) {
            out.push(TreeViolation::OutOfRange {
                cluster: c.clone(),
                vertex,
            });
        }
        if index.insert(c.clone(), i).is_some() {
            out.push(TreeViolation::Duplicate(c.clone()));
        }
    }
    for v in 0..n {
        if !index.contains_key(&VertexSet::singleton(v)) {
            out.push(TreeViolation::MissingSingleton(v));
        }
    }
    let root = VertexSet::full(n);
    if !index.contains_key(&root) {
        out.push(TreeViolation::MissingRoot);
    }
    let distinct: Vec<VertexSet> = clusters.iter().cloned().unique().collect();
    let distinct_index: HashMap<VertexSet, usize> = distinct.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    for (i, x) in distinct.iter().enumerate() {
        if *x == root || x.is_empty() {
            continue;
        }
        let partners = partner_of(&distinct, &distinct_index, i);
        match partners.len() {
            0 => out.push(TreeViolation::NoPartner(x.clone())),
            1 => {}
            _ => out.push(TreeViolation::AmbiguousPartner {
                cluster: x.clone(),
                partners: partners.iter().map(|&(j, _)| distinct[j].clone()).collect(),
            }),
        }
    }
    for (a, b) in distinct.iter().tuple_combinations() {
        if !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a) {
            out.push(TreeViolation::Crossing(a.clone(), b.clone()));
        }
    }
    if clusters.len() != 2 * n - 1 {
        out.push(TreeViolation::WrongCount {
            found: clusters.len(),
            expected: 2 * n - 1,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    fn tree(n: usize, clusters: &[&[usize]]) -> Result<ReassemblingTree, TreeError> {
        ReassemblingTree::new(n, clusters.iter().map(|c| set(c)))
    }

    fn pairing(a: [usize; 2], b: [usize; 2]) -> ReassemblingTree {
        tree(4, &[&[0], &[1], &[2], &[3], &a, &b, &[0, 1, 2, 3]]).unwrap()
    }

    fn balanced4() -> ReassemblingTree {
        pairing([0, 1], [2, 3])
    }

    fn caterpillar4() -> ReassemblingTree {
        tree(4, &[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2], &[0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = balanced4();
        assert_eq!(t.len(), 7);
        assert_eq!(t.to_json(), "[[0],[1],[2],[3],[0,1],[2,3],[0,1,2,3]]");

        let err = tree(4, &[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2, 3]]).unwrap_err();
        let TreeError::Invalid(v) = err else {
            panic!("expected violations")
        };
        assert!(v.contains(&TreeViolation::NoPartner(set(&[0, 1]))));
        assert!(v.contains(&TreeViolation::WrongCount { found: 6, expected: 7 }));

        let c = caterpillar4();
        assert_eq!(c.height(), 3);
    }

    #[test]
    fn more_violations() {
        let TreeError::Invalid(v) = tree(3, &[&[0], &[1], &[0, 1], &[0, 1, 2]]).unwrap_err() else {
            panic!()
        };
        assert!(v.contains(&TreeViolation::MissingSingleton(2)));
        let TreeError::Invalid(v) = tree(2, &[&[0], &[1], &[0, 1], &[0, 1]]).unwrap_err() else {
            panic!()
        };
        assert!(v.contains(&TreeViolation::Duplicate(set(&[0, 1]))));
        let TreeError::Invalid(v) = tree(2, &[&[0], &[1], &[2]]).unwrap_err() else {
            panic!()
        };
        assert!(v.contains(&TreeViolation::MissingRoot));
        assert!(v
            .iter()
            .any(|x| matches!(x, TreeViolation::OutOfRange { vertex: 2, .. })));
        // {0} pairs with both {1} and {2}
        let TreeError::Invalid(v) = tree(3, &[&[0], &[1], &[2], &[0, 1], &[0, 2], &[0, 1, 2]]).unwrap_err() else {
            panic!()
        };
        assert!(v.iter().any(|x| matches!(x, TreeViolation::AmbiguousPartner { .. })));
        assert!(v.contains(&TreeViolation::Crossing(set(&[0, 1]), set(&[0, 2]))));
        assert!(matches!(ReassemblingTree::new(0, []), Err(TreeError::Invalid(_))));
    }

    #[test]
    fn heights_and_balance() {
        assert_eq!(balanced4().height(), 2);
        assert!(balanced4().is_balanced());
        assert!(!caterpillar4().is_balanced());
        let single = tree(1, &[&[0]]).unwrap();
        assert!(single.is_balanced());
        assert_eq!(single.height(), 0);
        for v in 0..4 {
            assert_eq!(balanced4().cluster_height(&set(&[v])).unwrap(), 0);
        }
        assert_eq!(caterpillar4().cluster_height(&set(&[0, 1, 2])).unwrap(), 2);
        assert!(matches!(
            balanced4().cluster_height(&set(&[0, 2])),
            Err(TreeError::NotACluster(_))
        ));
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
    }

    #[test]
    fn leaf_paths() {
        let t = balanced4();
        let p = t.leaf_path(0).unwrap();
        assert_eq!(p, vec![&set(&[0]), &set(&[0, 1]), &set(&[0, 1, 2, 3])]);
        let t = caterpillar4();
        let p = t.leaf_path(3).unwrap();
        assert_eq!(p, vec![&set(&[3]), &set(&[0, 1, 2, 3])]);
        assert_eq!(tree(1, &[&[0]]).unwrap().leaf_path(0).unwrap().len(), 1);
        assert!(balanced4().leaf_path(4).is_err());
    }

    #[test]
    fn relations() {
        let t = balanced4();
        assert_eq!(t.sibling(&set(&[0, 1])).unwrap(), Some(&set(&[2, 3])));
        assert_eq!(t.parent(&set(&[2])).unwrap(), Some(&set(&[2, 3])));
        assert_eq!(t.sibling(t.root()).unwrap(), None);
        assert_eq!(t.children(&set(&[0, 1])).unwrap(), Some((&set(&[0]), &set(&[1]))));
        assert_eq!(t.grandchildren().len(), 4);
    }

    #[test]
    fn degrees_and_measures() {
        let k4 = Graph::complete(4).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let t = balanced4();
        assert_eq!(t.cluster_degree(&k4, &set(&[0, 1])).unwrap(), 4);
        assert_eq!(t.cluster_degree(&c4, &set(&[0, 1])).unwrap(), 2);
        assert_eq!(t.cluster_degree(&c4, t.root()).unwrap(), 0);
        assert!(t.cluster_degree(&c4, &set(&[0, 2])).is_err());

        assert_eq!(t.measures(&k4).unwrap(), MeasurePair { alpha: 4, beta: 20 });
        assert_eq!(t.measures(&c4).unwrap(), MeasurePair { alpha: 2, beta: 12 });
        assert_eq!(
            pairing([0, 2], [1, 3]).measures(&c4).unwrap(),
            MeasurePair { alpha: 4, beta: 16 }
        );
        assert!(matches!(
            t.measures(&Graph::empty(5)),
            Err(TreeError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn edge_heights() {
        let c4 = Graph::cycle(4).unwrap();
        let t = balanced4();
        assert_eq!(t.edge_height(&c4, (0, 1)).unwrap(), 1);
        assert_eq!(t.edge_height(&c4, (1, 2)).unwrap(), 2);
        assert!(matches!(t.edge_height(&c4, (0, 2)), Err(TreeError::NotAnEdge(0, 2))));
        let k2 = Graph::complete(2).unwrap();
        let t2 = tree(2, &[&[0], &[1], &[0, 1]]).unwrap();
        assert_eq!(t2.edge_height(&k2, (0, 1)).unwrap(), 1);

        assert_eq!(t.beta_via_edge_heights(&c4).unwrap(), 12);
        assert_eq!(t.beta_via_edge_heights(&Graph::complete(4).unwrap()).unwrap(), 20);
        assert_eq!(t.beta_via_edge_heights(&Graph::empty(4)).unwrap(), 0);
        assert!(matches!(
            caterpillar4().beta_via_edge_heights(&c4),
            Err(TreeError::NotBalanced)
        ));
        let t3 = tree(3, &[&[0], &[1], &[2], &[0, 1], &[0, 1, 2]]).unwrap();
        assert!(matches!(
            t3.beta_via_edge_heights(&Graph::path(3)),
            Err(TreeError::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn bijection_examples() {
        let t = balanced4();
        assert_eq!(t.apply_bijection(&[0, 1, 2, 3]).unwrap(), t);
        assert_eq!(t.apply_bijection(&[2, 3, 0, 1]).unwrap(), t);
        let shifted = caterpillar4().apply_bijection(&[3, 0, 1, 2]).unwrap();
        assert!(shifted.contains(&set(&[0, 3])));
        assert!(shifted.contains(&set(&[0, 1, 3])));
        assert_eq!(shifted.height(), 3);
        assert!(t.apply_bijection(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn merge_script() {
        let t = ReassemblingTree::from_merges(
            4,
            &[
                (set(&[0]), set(&[1])),
                (set(&[2]), set(&[3])),
                (set(&[0, 1]), set(&[2, 3])),
            ],
        )
        .unwrap();
        assert_eq!(t, balanced4());
        let bad = ReassemblingTree::from_merges(4, &[(set(&[0]), set(&[1])), (set(&[0]), set(&[2]))]);
        assert!(matches!(bad, Err(TreeError::BadMerge(1, _))));
        let short = ReassemblingTree::from_merges(4, &[(set(&[0]), set(&[1]))]);
        assert!(matches!(short, Err(TreeError::Invalid(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = ReassemblingTree::from_json(4, "[[0,1],[3],[2],[1],[0],[2,3],[0,1,2,3]]").unwrap();
        assert_eq!(t, balanced4());
        assert!(matches!(
            ReassemblingTree::from_json(4, "[[0]"),
            Err(TreeError::Json(_))
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let k4 = Graph::complete(4).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let a = pairing([0, 1], [2, 3]);
        let b = pairing([0, 2], [1, 3]);
        let theta = a.isomorphic_reassembling(&k4, &b).unwrap().expect("clique symmetry");
        assert_eq!(a.apply_bijection(&theta).unwrap(), b);
        assert_eq!(a.isomorphic_reassembling(&c4, &b).unwrap(), None);
        assert_eq!(a.isomorphic_reassembling(&c4, &a).unwrap(), Some(vec![0, 1, 2, 3]));
        let big = generate::random_balanced_tree(&mut ChaCha8Rng::seed_from_u64(1), 16).unwrap();
        assert!(matches!(
            big.isomorphic_reassembling(&Graph::empty(16), &big),
            Err(TreeError::TooLarge(16))
        ));
    }

    proptest! {
        #[test]
        fn random_trees_validate_and_mutations_fail(seed in any::<u64>(), n in 1usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = generate::random_tree(&mut rng, n);
            prop_assert_eq!(t.len(), 2 * n - 1);
            for v in 0..n {
                let path = t.leaf_path(v).unwrap();
                prop_assert!(path.len() - 1 <= t.height());
                for c in t.clusters().iter().filter(|c| c.contains(v)) {
                    prop_assert!(path.contains(&c));
                }
            }
            if n > 1 {
                let drop = (seed as usize) % t.len();
                let fewer: Vec<VertexSet> = t.clusters().iter().enumerate()
                    .filter(|(i, _)| *i != drop).map(|(_, c)| c.clone()).collect();
                prop_assert!(ReassemblingTree::new(n, fewer).is_err());
                let extra: VertexSet = (0..n).filter(|v| v % 2 == 0).collect();
                if !t.contains(&extra) {
                    let more = t.clusters().iter().cloned().chain([extra]);
                    prop_assert!(ReassemblingTree::new(n, more).is_err());
                }
            }
        }

        #[test]
        fn measures_invariant_under_relabeling(seed in any::<u64>(), n in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generate::random_graph(&mut rng, n, 0.5);
            let t = generate::random_tree(&mut rng, n);
            let theta = generate::random_permutation(&mut rng, n);
            let image = t.apply_bijection(&theta).unwrap();
            let relabeled = g.relabel(&theta).unwrap();
            prop_assert_eq!(image.measures(&relabeled).unwrap(), t.measures(&g).unwrap());
            let m = t.measures(&g).unwrap();
            if n >= 2 { prop_assert!(m.alpha <= m.beta); }
        }

        #[test]
        fn beta_equals_twice_edge_heights(seed in any::<u64>(), p in 0u32..5) {
            let n = 1usize << p;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generate::random_graph(&mut rng, n, 0.5);
            let t = generate::random_balanced_tree(&mut rng, n).unwrap();
            prop_assert_eq!(t.beta_via_edge_heights(&g).unwrap(), t.measures(&g).unwrap().beta);
        }
    }
}
