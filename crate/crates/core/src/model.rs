//! Ordered graphs, conflict specifications and the conflict graph `M_p(G)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Largest admissible absolute value of a vertex coordinate.
pub const COORD_LIMIT: i64 = 1 << 31;
/// Largest admissible absolute value of a matrix entry.
pub const ENTRY_LIMIT: i64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(i64),
    #[error("edge ({0}, {1}) has an endpoint that is not a vertex")]
    UnknownEndpoint(i64, i64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(i64),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(i64, i64),
    #[error("graph has no edges")]
    NoEdges,
    #[error("coordinate {0} exceeds the admissible range ±2^31")]
    CoordinateOutOfRange(i64),
    #[error("conflict matrix needs at least one row")]
    EmptyMatrix,
    #[error("matrix entry {0} exceeds the admissible range ±2^31")]
    EntryOutOfRange(i64),
}

/// An edge `(u, v)` of an ordered graph, always with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: i64,
    pub v: i64,
}

impl Edge {
    /// Orients the pair so that the smaller endpoint comes first.
    pub fn new(a: i64, b: i64) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    #[inline]
    pub fn length(&self) -> i64 {
        self.v - self.u
    }

    /// Twice the midpoint; keeps midpoint comparisons in integers.
    #[inline]
    pub fn midpoint2(&self) -> i64 {
        self.u + self.v
    }

    /// The corresponding edge of the mirrored graph `-G`.
    #[inline]
    pub fn mirrored(&self) -> Edge {
        Edge {
            u: -self.v,
            v: -self.u,
        }
    }

    #[inline]
    pub fn span_contains(&self, x: i64) -> bool {
        self.u <= x && x <= self.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Finite simple graph whose vertices are distinct integers.
///
/// Vertices are kept strictly increasing and edges sorted lexicographically;
/// the position of an edge in [`OrderedGraph::edges`] is its node index in
/// every conflict graph built from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    vertices: Vec<i64>,
    edges: Vec<Edge>,
}

impl OrderedGraph {
    /// Validates raw input and canonicalizes it. An empty edge set is allowed.
    pub fn new(vertices: Vec<i64>, edges: Vec<(i64, i64)>) -> Result<Self, ModelError> {
        let mut vs = vertices;
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::DuplicateVertex(w[0]));
            }
        }
        if let Some(&bad) = vs.iter().find(|x| x.abs() > COORD_LIMIT) {
            return Err(ModelError::CoordinateOutOfRange(bad));
        }
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ModelError::SelfLoop(a));
            }
            if vs.binary_search(&a).is_err() || vs.binary_search(&b).is_err() {
                return Err(ModelError::UnknownEndpoint(a, b));
            }
            let e = Edge::new(a, b);
            if !es.insert(e) {
                return Err(ModelError::DuplicateEdge(e.u, e.v));
            }
        }
        Ok(OrderedGraph {
            vertices: vs,
            edges: es.into_iter().collect(),
        })
    }

    /// Complete graph on the given coordinates.
    pub fn complete(vertices: Vec<i64>) -> Result<Self, ModelError> {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                edges.push((a, b));
            }
        }
        OrderedGraph::new(vertices, edges)
    }

    /// Places vertex `i` of `g` at `positions[i]`.
    pub fn from_graph(g: &Graph, positions: &[i64]) -> Result<Self, ModelError> {
        let edges = g
            .edges()
            .into_iter()
            .map(|(a, b)| (positions[a], positions[b]))
            .collect();
        OrderedGraph::new(positions.to_vec(), edges)
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn vertex_index(&self, x: i64) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    /// Underlying unordered graph; vertex `i` is the `i`-th smallest coordinate.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::empty(self.order());
        for e in &self.edges {
            let a = self.vertices.binary_search(&e.u).expect("endpoint");
            let b = self.vertices.binary_search(&e.v).expect("endpoint");
            g.add_edge(a, b);
        }
        g
    }

    /// Re-embeds the graph through an injective map on coordinates.
    pub fn map_vertices<F: Fn(i64) -> i64>(&self, f: F) -> Result<Self, ModelError> {
        OrderedGraph::new(
            self.vertices.iter().map(|&x| f(x)).collect(),
            self.edges.iter().map(|e| (f(e.u), f(e.v))).collect(),
        )
    }

    /// `G_t`: every vertex moved by `t`.
    pub fn shifted(&self, t: i64) -> Result<Self, ModelError> {
        self.map_vertices(|x| x + t)
    }

    /// `-G`: left and right exchanged.
    pub fn mirrored(&self) -> Self {
        self.map_vertices(|x| -x).expect("negation keeps validity")
    }

    /// Order-preserving re-embedding of the `i`-th vertex onto `positions[i]`.
    pub fn reembed(&self, positions: &[i64]) -> Result<Self, ModelError> {
        assert_eq!(positions.len(), self.order());
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let vs = &self.vertices;
        self.map_vertices(|x| positions[vs.binary_search(&x).expect("vertex")])
    }

    /// Re-embedding onto consecutive integers `1..=n`.
    pub fn compacted(&self) -> Self {
        let pos: Vec<i64> = (1..=self.order() as i64).collect();
        self.reembed(&pos).expect("compaction stays in range")
    }

    pub fn without_vertex(&self, x: i64) -> Self {
        OrderedGraph {
            vertices: self.vertices.iter().copied().filter(|&y| y != x).collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| e.u != x && e.v != x)
                .collect(),
        }
    }

    pub fn without_edge(&self, e: Edge) -> Self {
        OrderedGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|&f| f != e).collect(),
        }
    }

    /// Subgraph induced by the vertices satisfying `keep`.
    pub fn induced<F: Fn(i64) -> bool>(&self, keep: F) -> Self {
        OrderedGraph {
            vertices: self.vertices.iter().copied().filter(|&x| keep(x)).collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| keep(e.u) && keep(e.v))
                .collect(),
        }
    }

    pub fn degree(&self, x: i64) -> usize {
        self.edges.iter().filter(|e| e.u == x || e.v == x).count()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size() == n * n.saturating_sub(1) / 2
    }
}

/// An `s x 4` integer matrix, one row per linear constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConflictMatrix(Vec<[i64; 4]>);

impl ConflictMatrix {
    pub fn new(rows: Vec<[i64; 4]>) -> Result<Self, ModelError> {
        if rows.is_empty() {
            return Err(ModelError::EmptyMatrix);
        }
        if let Some(&bad) = rows.iter().flatten().find(|m| m.abs() > ENTRY_LIMIT) {
            return Err(ModelError::EntryOutOfRange(bad));
        }
        Ok(ConflictMatrix(rows))
    }

    pub fn row(r: [i64; 4]) -> Self {
        ConflictMatrix(vec![r])
    }

    pub fn rows(&self) -> &[[i64; 4]] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.0.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn is_sign_matrix(&self) -> bool {
        self.0.iter().flatten().all(|m| (-1..=1).contains(m))
    }

    /// Rows sorted; two matrices with equal canonical forms define the same conflicts.
    pub fn canonical_rows(&self) -> Vec<[i64; 4]> {
        let mut rows = self.0.clone();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    /// `M (u1, v1, u2, v2)^T >= p` componentwise.
    #[inline]
    pub fn dominates(&self, x: [i64; 4], p: i64) -> bool {
        self.0.iter().all(|r| linear_form(r, x) >= p as i128)
    }
}

impl fmt::Display for ConflictMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| {
                let cells: Vec<String> = r
                    .iter()
                    .map(|&m| match m {
                        1 => "+".to_string(),
                        -1 => "-".to_string(),
                        0 => "0".to_string(),
                        x => x.to_string(),
                    })
                    .collect();
                format!("({})", cells.join(","))
            })
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

/// Evaluates one row of the matrix on an endpoint 4-tuple.
///
/// With coordinates and entries bounded by 2^31 each product fits in 62 bits
/// and the four-term sum fits comfortably in `i128`.
#[inline]
pub fn linear_form(row: &[i64; 4], x: [i64; 4]) -> i128 {
    row.iter()
        .zip(x)
        .map(|(&m, xi)| m as i128 * xi as i128)
        .sum()
}

/// Matrix `M` together with the threshold `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConflictSpec {
    pub matrix: ConflictMatrix,
    pub p: i64,
}

impl ConflictSpec {
    pub fn new(matrix: ConflictMatrix, p: i64) -> Self {
        ConflictSpec { matrix, p }
    }

    pub fn single(row: [i64; 4], p: i64) -> Self {
        ConflictSpec::new(ConflictMatrix::row(row), p)
    }
}

/// The crossing matrix: `u1 < u2 < v1 < v2` at threshold 1.
pub fn cross_matrix() -> ConflictMatrix {
    ConflictMatrix(vec![[-1, 0, 1, 0], [0, 1, -1, 0], [0, -1, 0, 1]])
}

/// The nesting matrix: `(u1, v1)` nested under `(u2, v2)` at threshold 1.
pub fn nest_matrix() -> ConflictMatrix {
    ConflictMatrix(vec![[1, 0, -1, 0], [0, -1, 0, 1]])
}

/// The shift matrix: one edge is the other moved right by at least `p` at both ends.
pub fn shift_matrix() -> ConflictMatrix {
    ConflictMatrix(vec![[1, 0, -1, 0], [0, 1, 0, -1]])
}

/// True iff `M(e1, e2)^T >= p` or `M(e2, e1)^T >= p` componentwise.
pub fn is_conflicting(e1: Edge, e2: Edge, spec: &ConflictSpec) -> bool {
    spec.matrix.dominates([e1.u, e1.v, e2.u, e2.v], spec.p)
        || spec.matrix.dominates([e2.u, e2.v, e1.u, e1.v], spec.p)
}

/// The conflict graph: one node per edge of the source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    nodes: Vec<Edge>,
    adjacency: Graph,
}

impl ConflictGraph {
    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn graph(&self) -> &Graph {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.adjacency.has_edge(i, j)
    }

    /// Conflicting pairs as node-index pairs `(i, j)` with `i < j`.
    pub fn conflict_pairs(&self) -> Vec<(usize, usize)> {
        self.adjacency.edges()
    }
}

/// Builds `M_p(G)`. Rows are computed in parallel for larger graphs; the
/// result does not depend on scheduling.
pub fn build_conflict_graph(g: &OrderedGraph, spec: &ConflictSpec) -> Result<ConflictGraph, ModelError> {
    if g.size() == 0 {
        return Err(ModelError::NoEdges);
    }
    Ok(conflict_graph_unchecked(g, spec))
}

/// Same as [`build_conflict_graph`] but allows an empty edge set.
pub(crate) fn conflict_graph_unchecked(g: &OrderedGraph, spec: &ConflictSpec) -> ConflictGraph {
    use rayon::prelude::*;

    let edges = g.edges();
    let m = edges.len();
    let build_row = |i: usize| -> Vec<usize> {
        (i + 1..m)
            .filter(|&j| is_conflicting(edges[i], edges[j], spec))
            .collect()
    };
    let rows: Vec<Vec<usize>> = if m >= 256 {
        (0..m).into_par_iter().map(build_row).collect()
    } else {
        (0..m).map(build_row).collect()
    };
    let mut adjacency = Graph::empty(m);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            adjacency.add_edge(i, j);
        }
    }
    ConflictGraph {
        nodes: edges.to_vec(),
        adjacency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: i64, v: i64) -> Edge {
        Edge::new(u, v)
    }

    #[test]
    fn canonicalizes_vertices_and_edges() {
        let g = OrderedGraph::new(vec![3, 1, 2], vec![(2, 1)]).unwrap();
        assert_eq!(g.vertices(), &[1, 2, 3]);
        assert_eq!(g.edges(), &[e(1, 2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            OrderedGraph::new(vec![1, 1, 2], vec![]),
            Err(ModelError::DuplicateVertex(1))
        );
        assert_eq!(
            OrderedGraph::new(vec![1, 2], vec![(1, 3)]),
            Err(ModelError::UnknownEndpoint(1, 3))
        );
        assert_eq!(
            OrderedGraph::new(vec![1, 2], vec![(2, 2)]),
            Err(ModelError::SelfLoop(2))
        );
        assert_eq!(
            OrderedGraph::new(vec![1, 2], vec![(1, 2), (2, 1)]),
            Err(ModelError::DuplicateEdge(1, 2))
        );
        assert!(matches!(
            OrderedGraph::new(vec![1 << 40], vec![]),
            Err(ModelError::CoordinateOutOfRange(_))
        ));
        assert_eq!(ConflictMatrix::new(vec![]), Err(ModelError::EmptyMatrix));
    }

    #[test]
    fn single_long_edge() {
        let g = OrderedGraph::new(vec![1, 5], vec![(1, 5)]).unwrap();
        assert_eq!(g.edges()[0].length(), 4);
    }

    #[test]
    fn empty_edge_set_is_representable_but_has_no_conflict_graph() {
        let g = OrderedGraph::new(vec![1, 2], vec![]).unwrap();
        let spec = ConflictSpec::single([1, 0, -1, 0], 1);
        assert_eq!(build_conflict_graph(&g, &spec), Err(ModelError::NoEdges));
    }

    #[test]
    fn conflict_examples() {
        let left = ConflictSpec::single([1, 0, -1, 0], 1);
        assert!(is_conflicting(e(1, 2), e(2, 3), &left));
        assert!(!is_conflicting(e(1, 2), e(1, 3), &left));
        let nest = ConflictSpec::new(nest_matrix(), 1);
        assert!(is_conflicting(e(2, 3), e(1, 4), &nest));
        assert!(!is_conflicting(e(1, 3), e(2, 4), &nest));
        let cross = ConflictSpec::new(cross_matrix(), 1);
        assert!(is_conflicting(e(1, 3), e(2, 4), &cross));
        assert!(!is_conflicting(e(1, 4), e(2, 3), &cross));
        assert!(!is_conflicting(e(1, 2), e(2, 3), &cross));
    }

    #[test]
    fn k3_left_endpoint_conflicts() {
        let g = OrderedGraph::complete(vec![1, 2, 3]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::single([1, 0, -1, 0], 1)).unwrap();
        assert_eq!(cg.len(), 3);
        // nodes: (1,2), (1,3), (2,3)
        assert_eq!(cg.conflict_pairs(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn k4_nest_has_one_conflict() {
        let g = OrderedGraph::complete(vec![1, 2, 3, 4]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::new(nest_matrix(), 1)).unwrap();
        let pairs: Vec<_> = cg
            .conflict_pairs()
            .into_iter()
            .map(|(i, j)| (cg.nodes()[i], cg.nodes()[j]))
            .collect();
        assert_eq!(pairs, vec![(e(1, 4), e(2, 3))]);
    }

    #[test]
    fn zero_matrix_never_conflicts_at_positive_threshold() {
        let g = OrderedGraph::complete(vec![-3, 0, 4, 9]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::single([0, 0, 0, 0], 1)).unwrap();
        assert!(cg.conflict_pairs().is_empty());
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let big = COORD_LIMIT;
        let g = OrderedGraph::complete(vec![-big, 0, big]).unwrap();
        let spec = ConflictSpec::single([ENTRY_LIMIT, ENTRY_LIMIT, ENTRY_LIMIT, ENTRY_LIMIT], 0);
        let cg = build_conflict_graph(&g, &spec).unwrap();
        assert!(cg.graph().is_symmetric_irreflexive());
    }
}
