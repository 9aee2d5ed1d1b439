//! Simple undirected graphs over dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Every construction (induced
//! subgraph, complement, relabeling) returns a fresh graph, so graphs can be
//! shared freely between solver threads.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("{0}")]
    Invalid(String),
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair `(u, v)` with `u < v`.
    edges: Vec<Edge>,
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; self-loops, duplicates and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut adjacency = vec![VertexSet::new(); n];
        let mut list = Vec::new();
        for (index, (a, b)) in edges.into_iter().enumerate() {
            let line = index + 1;
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { line, vertex: a });
            }
            let (u, v) = (a.min(b), a.max(b));
            if !adjacency[u].insert(v) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            adjacency[v].insert(u);
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Self {
            n,
            edges: list,
            adjacency,
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![VertexSet::new(); n],
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Invalid("complete graph needs at least one vertex".into()));
        }
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges)
    }

    /// The cycle `C_n` with edges `{i, i+1 mod n}`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Invalid(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Adjacency rows as single words, for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(self.adjacency.iter().map(|row| row.to_mask().unwrap_or(0)).collect())
    }

    pub fn check_subset(&self, a: &VertexSet) -> Result<(), GraphError> {
        match a.last() {
            Some(vertex) if vertex >= self.n => Err(GraphError::OutOfRange { vertex, n: self.n }),
            _ => Ok(()),
        }
    }

    /// `G[a]`, relabeled to `0..|a|` in ascending order of the original ids.
    pub fn induced_subgraph(&self, a: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        self.check_subset(a)?;
        let labels = a.to_vec();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| a.contains(u) && a.contains(v))
            .map(|&(u, v)| (new_id[u], new_id[v]));
        let graph = Graph::new(labels.len(), edges)?;
        Ok(InducedSubgraph { graph, labels })
    }

    /// Edges with one endpoint in `a` and the other in `b`.
    pub fn bridges(&self, a: &VertexSet, b: &VertexSet) -> Result<Vec<Edge>, GraphError> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        if let Some(v) = a.intersection(b).first() {
            return Err(GraphError::Overlap(v));
        }
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u)))
            .collect())
    }

    /// Number of edges between two disjoint sets (not checked).
    pub fn bridge_count(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.adjacency[v].intersection_len(b)).sum()
    }

    /// Edge-boundary degree `|∂(a)|`: edges with exactly one endpoint in `a`.
    pub fn boundary_degree(&self, a: &VertexSet) -> usize {
        a.iter().map(|v| self.adjacency[v].difference_len(a)).sum()
    }

    /// Number of edges with both endpoints in `a`.
    pub fn internal_edges(&self, a: &VertexSet) -> usize {
        a.iter().map(|v| self.adjacency[v].intersection_len(a)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, a: &VertexSet) -> bool {
        let k = a.len();
        self.internal_edges(a) == k * k.saturating_sub(1) / 2
    }

    pub fn is_independent(&self, a: &VertexSet) -> bool {
        self.internal_edges(a) == 0
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::new(n, edges).expect("complement of a simple graph is simple")
    }

    /// The graph with every vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        check_permutation(perm, self.n)?;
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union: vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union of simple graphs is simple")
    }

    /// A copy with extra edges added; existing edges in `extra` are an error.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied().chain(extra))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in &self.adjacency[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.n
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), GraphError> {
    if perm.len() != n {
        return Err(GraphError::Invalid(format!(
            "permutation has length {} but n = {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(GraphError::Invalid(format!("not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the edge-list text format.
///
/// Lines starting with `#` and blank lines are skipped. The first data line
/// is `n m`, followed by exactly `m` lines `u v`. Errors carry the 1-based
/// line number of the offending line.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        message: "missing header line \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(line, header)?;

    let mut adjacency = vec![VertexSet::new(); n];
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [a, b] = parse_pair(line, text)?;
        for vertex in [a, b] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { line, vertex, n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop { line, vertex: a });
        }
        let (u, v) = (a.min(b), a.max(b));
        if !adjacency[u].insert(v) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        adjacency[v].insert(u);
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    edges.sort_unstable();
    Ok(Graph { n, edges, adjacency })
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], GraphError> {
    let malformed = |message: String| GraphError::Malformed { line, message };
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(malformed(format!("expected two integers, found {:?}", text)));
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| malformed(format!("not a non-negative integer: {field:?}")))?;
    }
    Ok(out)
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<Edge>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphDoc {
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(deserializer)?;
        Graph::new(doc.n, doc.edges).map_err(serde::de::Error::custom)
    }
}

/// An induced subgraph together with its new-to-old label map.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `labels[new] = old`.
    pub labels: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, set: &VertexSet) -> VertexSet {
        set.map(|v| self.labels[v])
    }
}

/// An equal-size two-block partition of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bisection {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Bisection {
    /// Checks the blocks are disjoint, equal-sized and cover `0..n`.
    pub fn new(n: usize, a: VertexSet, b: VertexSet) -> Result<Self, GraphError> {
        if let Some(v) = a.intersection(&b).first() {
            return Err(GraphError::Overlap(v));
        }
        if a.union(&b) != VertexSet::full(n) || a.len() != b.len() {
            return Err(GraphError::Invalid(format!(
                "blocks of sizes {} and {} do not bisect 0..{n}",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a, b })
    }

    /// The bisection whose first block is `a`.
    pub fn from_block(n: usize, a: VertexSet) -> Result<Self, GraphError> {
        let b = VertexSet::full(n).difference(&a);
        Self::new(n, a, b)
    }

    /// Number of bridges between the two blocks.
    pub fn value(&self, g: &Graph) -> usize {
        g.bridge_count(&self.a, &self.b)
    }

    /// Same partition with the block containing the smallest vertex first.
    pub fn normalized(self) -> Self {
        if self.b < self.a {
            Self { a: self.b, b: self.a }
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn parse_cycle_and_k2() {
        let c4 = parse_graph("4 4\n0 1\n1 2\n2 3\n0 3").unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert_eq!(c4, Graph::cycle(4).unwrap());
        let k2 = parse_graph("2 1\n0 1").unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("3 1\n0 0").unwrap_err(),
            GraphError::SelfLoop { line: 2, vertex: 0 }
        );
        assert_eq!(
            parse_graph("# c\n3 2\n0 1\n1 0\n").unwrap_err(),
            GraphError::DuplicateEdge { line: 4, u: 0, v: 1 }
        );
        assert_eq!(
            parse_graph("3 1\n0 3\n").unwrap_err(),
            GraphError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 3
            }
        );
        assert!(matches!(
            parse_graph("3 1\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(parse_graph("3\n"), Err(GraphError::Malformed { line: 1, .. })));
        assert_eq!(
            parse_graph("3 2\n0 1\n").unwrap_err(),
            GraphError::EdgeCount { declared: 2, found: 1 }
        );
        assert!(matches!(parse_graph(""), Err(GraphError::Malformed { .. })));
    }

    #[test]
    fn serializer_sorts_edges() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.to_edge_list(), "3 2\n0 1\n1 2\n");
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let s = c4.induced_subgraph(&set(&[0, 1])).unwrap();
        assert_eq!((s.graph.n(), s.graph.m()), (2, 1));
        let s = c4.induced_subgraph(&set(&[0, 2])).unwrap();
        assert_eq!((s.graph.n(), s.graph.m()), (2, 0));
        let k4 = Graph::complete(4).unwrap();
        let s = k4.induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(s.graph, Graph::complete(3).unwrap());
        let s = k4.induced_subgraph(&set(&[1, 3])).unwrap();
        assert_eq!(s.labels, vec![1, 3]);
        assert_eq!(s.to_original(&set(&[1])), set(&[3]));
        assert!(matches!(
            k4.induced_subgraph(&set(&[4])),
            Err(GraphError::OutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn bridge_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let b = c4.bridges(&set(&[0, 1]), &set(&[2, 3])).unwrap();
        assert_eq!(b, vec![(0, 3), (1, 2)]);
        let p3 = Graph::path(3);
        assert_eq!(p3.bridges(&set(&[1]), &set(&[0, 2])).unwrap().len(), 2);
        assert!(c4.bridges(&c4.vertices(), &VertexSet::new()).unwrap().is_empty());
        assert_eq!(c4.boundary_degree(&c4.vertices()), 0);
        assert_eq!(
            c4.bridges(&set(&[0, 1]), &set(&[1])).unwrap_err(),
            GraphError::Overlap(1)
        );
    }

    #[test]
    fn complement_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4));
        assert_eq!(Graph::empty(3).complement(), Graph::complete(3).unwrap());
        assert_eq!(Graph::cycle(4).unwrap().complement().edges(), &[(0, 2), (1, 3)]);
    }

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(Graph::complete(1).unwrap().m(), 0);
        assert_eq!(Graph::complete(4).unwrap().m(), 6);
        assert_eq!(Graph::complete(8).unwrap().m(), 28);
        assert!(Graph::complete(0).is_err());
    }

    #[test]
    fn bisection_validation() {
        assert!(Bisection::new(4, set(&[0, 1]), set(&[2, 3])).is_ok());
        assert!(Bisection::new(4, set(&[0]), set(&[1, 2, 3])).is_err());
        assert!(Bisection::new(4, set(&[0, 1]), set(&[1, 2])).is_err());
        let b = Bisection::from_block(4, set(&[2, 3])).unwrap().normalized();
        assert_eq!(b.a, set(&[0, 1]));
        assert_eq!(b.value(&Graph::cycle(4).unwrap()), 2);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    fn arb_sets(n: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..3, n)
    }

    proptest! {
        #[test]
        fn bridges_are_additive((g, labels) in arb_graph().prop_flat_map(|g| { let n = g.n(); (Just(g), arb_sets(n)) })) {
            let part = |k| labels.iter().enumerate().filter(|(_, &l)| l == k).map(|(v, _)| v).collect::<VertexSet>();
            let (a, b, c) = (part(0), part(1), part(2));
            let whole = g.bridges(&a, &b.union(&c)).unwrap().len();
            prop_assert_eq!(whole, g.bridges(&a, &b).unwrap().len() + g.bridges(&a, &c).unwrap().len());
            let rest = g.vertices().difference(&a);
            let degree_sum: usize = a.iter().map(|v| g.degree(v)).sum();
            let inner = g.induced_subgraph(&a).unwrap().graph.m();
            prop_assert_eq!(g.bridges(&a, &rest).unwrap().len(), degree_sum - 2 * inner);
            prop_assert_eq!(g.boundary_degree(&a), degree_sum - 2 * inner);
        }

        #[test]
        fn complement_is_involution(g in arb_graph()) {
            let c = g.complement();
            prop_assert_eq!(g.m() + c.m(), g.n() * (g.n() - 1) / 2);
            prop_assert_eq!(c.complement(), g.clone());
            let whole = g.induced_subgraph(&g.vertices()).unwrap();
            prop_assert_eq!(&whole.graph, &g);
            prop_assert_eq!(whole.labels, (0..g.n()).collect::<Vec<_>>());
            prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
        }
    }
}
