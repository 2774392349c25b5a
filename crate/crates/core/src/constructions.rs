//! Explicit ordered graphs: extremal complete-graph embeddings, shift and
//! power re-embeddings, critical subgraphs, long-edge sets, interval
//! witnesses for independent sets, and the two directions of the
//! almost-coloring correspondence for `(+,0,0,-)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::Quantity;
use crate::graph::Graph;
use crate::model::{
    is_conflicting, linear_form, ConflictSpec, Edge, ModelError, OrderedGraph, COORD_LIMIT,
};
use crate::solvers::{chromatic_at_least, color_with, leftof_layers, SolveBudget, SolveError};
use crate::transforms::{classify_matrix, MatrixTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("no proven construction for this matrix and threshold")]
    Unclassifiable,
    #[error("matrix does not match the requested case: {0}")]
    CaseMismatch(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("edges ({}, {}) and ({}, {}) conflict", .0.u, .0.v, .1.u, .1.v)]
    NotIndependent(Edge, Edge),
    #[error("invalid almost-coloring: {0}")]
    InvalidColoring(String),
}

type Result<T> = std::result::Result<T, ConstructionError>;

/// `{c, 2c, ..., kc}`.
fn scaled(k: u64, c: i64) -> Result<OrderedGraph> {
    Ok(OrderedGraph::complete((1..=k as i64).map(|i| i * c).collect())?)
}

fn unit(k: u64) -> Result<OrderedGraph> {
    scaled(k, 1)
}

/// `{q, q^2, ..., q^n}`, failing if the coordinates leave the admissible range.
fn power_positions(n: usize, q: i64) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(n);
    let mut x: i64 = 1;
    for _ in 0..n {
        x = x
            .checked_mul(q)
            .filter(|&y| y <= COORD_LIMIT)
            .ok_or(ModelError::CoordinateOutOfRange(i64::MAX))?;
        out.push(x);
    }
    Ok(out)
}

fn powers(k: u64, q: i64) -> Result<OrderedGraph> {
    Ok(OrderedGraph::complete(power_positions(k as usize, q)?)?)
}

/// Complete ordered graph on `k` vertices attaining `A` (side `A`) or `W`
/// (side `W`) for the given spec.
pub fn extremal_complete_graph(spec: &ConflictSpec, k: u64, side: Quantity) -> Result<OrderedGraph> {
    if k < 2 {
        return Err(ConstructionError::Precondition(format!("k must be at least 2, got {k}")));
    }
    let class = classify_matrix(&spec.matrix);
    let p = spec.p;
    let row = match class.tag {
        MatrixTag::NonInvariantPositive
        | MatrixTag::NonInvariantNegative
        | MatrixTag::NonInvariantMixed
        | MatrixTag::GeneralInvariant => {
            let base = unit(k)?;
            return match invariant_case(spec) {
                // the conflict graph of every ordered graph is complete / empty
                Some(Theorem1Case::AllConflict) | Some(Theorem1Case::NoConflict) => Ok(base),
                _ => theorem1_witness(spec, &base, side).map_err(|e| match e {
                    ConstructionError::CaseMismatch(_) => ConstructionError::Unclassifiable,
                    e => e,
                }),
            };
        }
        tag => tag.table_row().expect("table family"),
    };
    use Quantity::*;
    let pos = p.max(2);
    let g = match (row, side) {
        (2, _) => unit(k)?,
        (3, A) if p >= 1 => scaled(k, p)?,
        (3, _) => unit(k)?,
        (4, A) if p >= 2 => powers(k, pos)?,
        (4, _) => unit(k)?,
        (5, W) if p < 0 => scaled(k, 1 - p)?,
        (5, _) => unit(k)?,
        (6, A) if p >= 3 => powers(k, pos)?,
        (6, _) => unit(k)?,
        (7, W) if p <= -2 => powers(k, (-p).max(2))?,
        (7, _) => unit(k)?,
        (8 | 9, A) if p >= 1 => powers(k, pos)?,
        (8 | 9, _) => unit(k)?,
        (10, A) if p >= 1 => scaled(k, p)?,
        (10, W) if p < 0 => scaled(k, 1 - p)?,
        (10, _) => unit(k)?,
        (11, A) if p >= 2 => powers(k, pos)?,
        (11, _) => unit(k)?,
        (12, A) if p >= 1 => scaled(k, p)?,
        (12, W) if p <= 0 => scaled(k, 1 - p)?,
        (12, _) => unit(k)?,
        (13, A) if p >= 1 => scaled(k, p)?,
        (13, W) if p <= 0 => scaled(k, 1 - p)?,
        (13, _) => unit(k)?,
        _ => return Err(ConstructionError::Unclassifiable),
    };
    // The representative is reached through reverse-negate an odd number of
    // times: its extremal graph lifts back mirrored.
    Ok(if class.mirrors() { g.mirrored() } else { g })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Theorem1Case {
    /// `m2 + m4 >= max(p, 0)`: every pair of edges conflicts.
    AllConflict,
    /// `m1 + m2 = m3 + m4 = 0`, `m2, m4 <= 0`, `p > m2 + m4`: no pair conflicts.
    NoConflict,
}

fn single_invariant_row(spec: &ConflictSpec) -> Option<[i64; 4]> {
    let rows = spec.matrix.canonical_rows();
    (rows.len() == 1 && rows[0].iter().sum::<i64>() == 0).then(|| rows[0])
}

fn invariant_case(spec: &ConflictSpec) -> Option<Theorem1Case> {
    let [m1, m2, m3, m4] = single_invariant_row(spec)?;
    let s = m2 + m4;
    if s >= spec.p.max(0) {
        Some(Theorem1Case::AllConflict)
    } else if m1 + m2 == 0 && m3 + m4 == 0 && m2 <= 0 && m4 <= 0 && spec.p > s {
        Some(Theorem1Case::NoConflict)
    } else {
        None
    }
}

/// Extreme values of `row . x` over `x` in `V^4`.
fn form_range(row: &[i64; 4], vs: &[i64]) -> (i128, i128) {
    let (lo, hi) = (i128::from(vs[0]), i128::from(*vs.last().expect("vertex")));
    let mut min = 0;
    let mut max = 0;
    for &m in row {
        let m = i128::from(m);
        min += (m * lo).min(m * hi);
        max += (m * lo).max(m * hi);
    }
    (min, max)
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - i128::from(b < 0 && a.rem_euclid(b) != 0)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn shift_by(g: &OrderedGraph, t: i128) -> Result<OrderedGraph> {
    let t = i64::try_from(t).map_err(|_| ModelError::CoordinateOutOfRange(i64::MAX))?;
    Ok(g.shifted(t)?)
}

/// Smallest `q >= 2` with the proof's side conditions for the power embedding.
fn base_for_complete(row: [i64; 4], p: i64) -> i64 {
    let [m1, m2, _, m4] = row;
    let mut q = p.max(2);
    if m2 + m4 == 0 {
        while m1 % q == 0 || m2 % q == 0 {
            q += 1;
        }
    }
    q
}

fn base_for_empty(row: [i64; 4], p: i64) -> i64 {
    let [m1, m2, m3, m4] = row;
    // m1 + m2 q <= -1 and m3 + m4 q <= -1 with m2, m4 < 0
    let need = |m_odd: i64, m_even: i64| {
        ceil_div(1 + i128::from(m_odd), i128::from(-m_even)) as i64
    };
    2.max(-p).max(need(m1, m2)).max(need(m3, m4))
}

/// Re-embedding of `g` whose conflict graph is complete (side `A`) or
/// empty (side `W`), following the constructive cases of the general theorem.
///
/// Non-invariant matrices are handled by a translation `G_t`; invariant
/// single rows by the identity (when every embedding works) or an
/// order-preserving remap onto powers of a base `q`.
pub fn theorem1_witness(spec: &ConflictSpec, g: &OrderedGraph, side: Quantity) -> Result<OrderedGraph> {
    if g.order() == 0 {
        return Err(ConstructionError::Precondition("graph has no vertices".into()));
    }
    let rows = spec.matrix.rows();
    let sums = spec.matrix.row_sums();
    let p = i128::from(spec.p);
    let vs = g.vertices();

    if sums.iter().any(|&s| s != 0) {
        return match side {
            Quantity::W => {
                let (r, &sigma) = sums
                    .iter()
                    .enumerate()
                    .find(|(_, &s)| s != 0)
                    .expect("nonzero row sum");
                let sigma = i128::from(sigma);
                let (_, maxv) = form_range(&rows[r], vs);
                // maxv + t sigma <= p - 1
                let t = if sigma > 0 {
                    floor_div(p - 1 - maxv, sigma)
                } else {
                    ceil_div(p - 1 - maxv, sigma)
                };
                shift_by(g, t)
            }
            Quantity::A => {
                let positive = sums.iter().all(|&s| s > 0);
                if !positive && !sums.iter().all(|&s| s < 0) {
                    return Err(ConstructionError::CaseMismatch("row sums are not of one strict sign"));
                }
                // minv_r + t sigma_r >= p for every row r
                let bounds = rows.iter().zip(&sums).map(|(row, &s)| {
                    let (minv, _) = form_range(row, vs);
                    let s = i128::from(s);
                    if positive {
                        ceil_div(p - minv, s)
                    } else {
                        floor_div(p - minv, s)
                    }
                });
                let t = if positive { bounds.max() } else { bounds.min() }.expect("rows");
                shift_by(g, t)
            }
        };
    }

    let row = single_invariant_row(spec)
        .ok_or(ConstructionError::CaseMismatch("invariant matrix with more than one row"))?;
    let [m1, m2, _, m4] = row;
    let case = invariant_case(spec);
    match side {
        Quantity::A if case == Some(Theorem1Case::AllConflict) => Ok(g.clone()),
        Quantity::A if m2 + m4 > 0 || (m2 + m4 == 0 && m1 != 0 && m2 != 0) => {
            let q = base_for_complete(row, spec.p);
            Ok(g.reembed(&power_positions(g.order(), q)?)?)
        }
        Quantity::W if case == Some(Theorem1Case::NoConflict) => Ok(g.clone()),
        Quantity::W if m2 < 0 && m4 < 0 => {
            let q = base_for_empty(row, spec.p);
            Ok(g.reembed(&power_positions(g.order(), q)?)?)
        }
        Quantity::A => Err(ConstructionError::CaseMismatch("no case forces a complete conflict graph")),
        Quantity::W => Err(ConstructionError::CaseMismatch("no case forces an empty conflict graph")),
    }
}

/// Deletes vertices, then edges, in increasing order while `chi >= k` survives,
/// until nothing more can go.
pub fn k_critical_subgraph(g: &OrderedGraph, k: usize, budget: SolveBudget) -> Result<OrderedGraph> {
    let at_least = |h: &OrderedGraph| chromatic_at_least(&h.underlying(), k, budget);
    if !at_least(g)? {
        return Err(ConstructionError::Precondition(format!("chromatic number below {k}")));
    }
    let mut cur = g.clone();
    loop {
        let mut changed = false;
        for &x in g.vertices() {
            if cur.vertex_index(x).is_none() {
                continue;
            }
            let cand = cur.without_vertex(x);
            if at_least(&cand)? {
                cur = cand;
                changed = true;
            }
        }
        for &e in g.edges() {
            if cur.edge_index(e).is_none() {
                continue;
            }
            let cand = cur.without_edge(e);
            if at_least(&cand)? {
                cur = cand;
                changed = true;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// Result of [`long_edge_set`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongEdges {
    /// `C(k-q+1, 2)` edges of length at least `q`.
    pub edges: Vec<Edge>,
    /// An edge of length at least `q - 1` outside `edges`, when one exists.
    pub extra: Option<Edge>,
}

/// Long edges in a graph with `chi >= k`, taken from a `k`-critical subgraph
/// `v_1 < ... < v_t`: vertex `v_i` (`i <= k - q`) contributes `k - q - i + 1`
/// of its rightward edges of length `>= q`.
///
/// For `q >= 2` and `k >= 3` the extra edge always exists; for `q = 1` every
/// edge qualifies, so it exists exactly when the graph has more edges than
/// the set.
pub fn long_edge_set(g: &OrderedGraph, k: usize, q: i64, budget: SolveBudget) -> Result<LongEdges> {
    if q < 1 || (k as i64) <= q {
        return Err(ConstructionError::Precondition(format!("need k > q >= 1, got k={k}, q={q}")));
    }
    let crit = k_critical_subgraph(g, k, budget)?;
    let vs = crit.vertices();
    let take = k - q as usize;
    let mut edges = Vec::new();
    for (i, &v) in vs.iter().enumerate().take(take) {
        let want = take - i;
        let long: Vec<Edge> = crit
            .edges()
            .iter()
            .copied()
            .filter(|e| e.u == v && e.length() >= q)
            .take(want)
            .collect();
        if long.len() < want {
            return Err(ConstructionError::Precondition(format!(
                "vertex {v} has only {} long edges; the critical subgraph is inconsistent",
                long.len()
            )));
        }
        edges.extend(long);
    }
    let mut extra = None;
    if k >= 3 {
        let outside = |e: &&Edge| e.length() >= q - 1 && !edges.contains(e);
        let v1 = vs[0];
        extra = crit
            .edges()
            .iter()
            .filter(outside)
            .find(|e| e.u == v1)
            .or_else(|| g.edges().iter().find(outside))
            .copied();
    }
    Ok(LongEdges { edges, extra })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `p >= 1`: an interval of length `<= p - 1` meeting every span.
    MeetsAllSpans,
    /// `p <= 0`: an interval of length `>= |p| + 1` inside every span.
    ContainedInAllSpans,
    /// `p <= -1`: one short edge `e = (x, y)` plus an interval `[X, Y]`,
    /// `X <= y + p - 1`, `Y >= x - p + 1`, inside every other span.
    ShortEdgeException,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalWitness {
    pub kind: WitnessKind,
    pub interval: (i64, i64),
    pub exceptional_edge: Option<Edge>,
}

fn leftof(p: i64) -> ConflictSpec {
    ConflictSpec::single([1, 0, 0, -1], p)
}

/// Interval certificate that `f` is independent in `M_p(G)` for `M = (+,0,0,-)`.
///
/// With `x` the largest left endpoint and `y` the smallest right endpoint in
/// `f`, the certificate is read off directly: `[y, x]` (or the point `x`
/// when `x <= y`) for `p >= 1`, `[x, y]` when it is long enough, otherwise the edge `(x, y)`
/// itself is the exception.
pub fn independent_set_witness(p: i64, f: &[Edge]) -> Result<IntervalWitness> {
    if f.is_empty() {
        return Err(ConstructionError::Precondition("empty edge set".into()));
    }
    let spec = leftof(p);
    for (i, &a) in f.iter().enumerate() {
        for &b in &f[i + 1..] {
            if a != b && is_conflicting(a, b, &spec) {
                return Err(ConstructionError::NotIndependent(a, b));
            }
        }
    }
    let x = f.iter().map(|e| e.u).max().expect("nonempty");
    let y = f.iter().map(|e| e.v).min().expect("nonempty");
    let w = if p >= 1 {
        IntervalWitness {
            kind: WitnessKind::MeetsAllSpans,
            interval: if x <= y { (x, x) } else { (y, x) },
            exceptional_edge: None,
        }
    } else if y - x >= 1 - p {
        IntervalWitness {
            kind: WitnessKind::ContainedInAllSpans,
            interval: (x, y),
            exceptional_edge: None,
        }
    } else {
        // independence forces the edges attaining x and y to coincide
        let e = Edge::new(x, y);
        debug_assert!(f.contains(&e));
        IntervalWitness {
            kind: WitnessKind::ShortEdgeException,
            interval: (y + p - 1, x - p + 1),
            exceptional_edge: Some(e),
        }
    };
    Ok(w)
}

/// Checks the geometric conditions of a witness against `f` (without
/// consulting the conflict relation).
pub fn witness_holds(p: i64, f: &[Edge], w: &IntervalWitness) -> bool {
    let (a, b) = w.interval;
    let inside = |e: &Edge| e.u <= a && b <= e.v;
    match w.kind {
        WitnessKind::MeetsAllSpans => {
            p >= 1 && a <= b && b - a < p && f.iter().all(|e| e.u <= b && a <= e.v)
        }
        WitnessKind::ContainedInAllSpans => p <= 0 && b - a >= 1 - p && f.iter().all(inside),
        WitnessKind::ShortEdgeException => {
            let Some(e) = w.exceptional_edge else {
                return false;
            };
            p <= 0
                && f.contains(&e)
                && e.length() <= -p
                && a < e.v + p
                && b > e.u - p
                && f.iter().filter(|&&g| g != e).all(inside)
        }
    }
}

/// A proper coloring of `F - S` together with the removed set `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAlmostColoring {
    pub removed: Vec<usize>,
    /// `None` exactly on removed vertices.
    pub coloring: Vec<Option<usize>>,
    /// Number of colors `t`.
    pub colors: usize,
}

impl PAlmostColoring {
    /// `|S| <= p (t - 1)` and the coloring is proper on `F - S`.
    pub fn validate(&self, f: &Graph, p: i64) -> std::result::Result<(), String> {
        let n = f.order();
        if self.coloring.len() != n {
            return Err(format!("coloring has {} entries for {n} vertices", self.coloring.len()));
        }
        let mut removed = self.removed.clone();
        removed.sort_unstable();
        removed.dedup();
        if removed.len() != self.removed.len() {
            return Err("removed set has duplicates".into());
        }
        let budget = p.max(0) as i128 * (self.colors as i128 - 1);
        if removed.len() as i128 > budget.max(0) {
            return Err(format!("removed {} vertices, allowed {}", removed.len(), budget.max(0)));
        }
        for (v, c) in self.coloring.iter().enumerate() {
            match (c, removed.binary_search(&v).is_ok()) {
                (None, false) => return Err(format!("vertex {v} neither colored nor removed")),
                (Some(_), true) => return Err(format!("removed vertex {v} is colored")),
                (Some(c), false) if *c >= self.colors => {
                    return Err(format!("vertex {v} has color {c} >= {}", self.colors))
                }
                _ => {}
            }
        }
        for (a, b) in f.edges() {
            if let (Some(x), Some(y)) = (self.coloring[a], self.coloring[b]) {
                if x == y {
                    return Err(format!("edge ({a}, {b}) is monochromatic"));
                }
            }
        }
        Ok(())
    }
}

/// Interval layout of an almost-coloring with `t + 1` colors and
/// `|S| <= p t`: class `C_i` followed by a chunk `S_i` of at most `p`
/// removed vertices occupies the `i`-th block, the last class the final block.
/// The result has `omega(M_p) <= t` for `M = (+,0,0,-)`.
pub fn coloring_to_embedding(f: &Graph, pac: &PAlmostColoring, p: i64) -> Result<OrderedGraph> {
    if p < 0 {
        return Err(ConstructionError::Precondition("p must be nonnegative".into()));
    }
    pac.validate(f, p).map_err(ConstructionError::InvalidColoring)?;
    let n = f.order();
    let colors = pac.colors.max(1);
    let t = colors - 1;
    let mut removed = pac.removed.clone();
    removed.sort_unstable();
    let mut chunks: Vec<&[usize]> = if p == 0 { Vec::new() } else { removed.chunks(p as usize).collect() };
    chunks.resize(t, &[]);

    let mut positions = vec![0i64; n];
    let mut next = 1i64;
    for c in 0..colors {
        for (pos, col) in positions.iter_mut().zip(&pac.coloring) {
            if *col == Some(c) {
                *pos = next;
                next += 1;
            }
        }
        if let Some(chunk) = chunks.get(c) {
            for &v in *chunk {
                positions[v] = next;
                next += 1;
            }
        }
    }
    Ok(OrderedGraph::from_graph(f, &positions)?)
}

/// The backward direction: from the height decomposition of `M_p(G)` into
/// `t = omega` antichains, one short interval per antichain; vertices inside
/// an interval are removed and every other vertex is colored by how many
/// intervals lie entirely to its left.
///
/// Colors and removed indices refer to positions in `G.vertices()`.
pub fn embedding_to_coloring(g: &OrderedGraph, p: i64) -> Result<PAlmostColoring> {
    if p < 0 {
        return Err(ConstructionError::Precondition("p must be nonnegative".into()));
    }
    let layers = leftof_layers(g, p);
    let t = layers.iter().copied().max().unwrap_or(0);
    let edges = g.edges();
    // intervals in doubled coordinates
    let mut intervals = Vec::with_capacity(t);
    for layer in 1..=t {
        let class: Vec<Edge> = edges
            .iter()
            .zip(&layers)
            .filter(|(_, &l)| l == layer)
            .map(|(e, _)| *e)
            .collect();
        let w = independent_set_witness(p, &class)?;
        let (a, b) = w.interval;
        intervals.push(match w.kind {
            WitnessKind::MeetsAllSpans => (2 * a, 2 * b),
            // p = 0: a non-integral point strictly inside every span
            _ => (2 * a + 1, 2 * a + 1),
        });
    }
    let mut removed = Vec::new();
    let mut coloring = Vec::with_capacity(g.order());
    for (i, &x) in g.vertices().iter().enumerate() {
        let x2 = 2 * x;
        if intervals.iter().any(|&(a, b)| a <= x2 && x2 <= b) {
            removed.push(i);
            coloring.push(None);
        } else {
            coloring.push(Some(intervals.iter().filter(|&&(_, b)| b < x2).count()));
        }
    }
    Ok(PAlmostColoring {
        removed,
        coloring,
        colors: t + 1,
    })
}

/// Searches for a `p`-almost `colors`-coloring by trying removal sets in
/// lexicographic order of size. Exponential; for small test graphs.
pub fn find_almost_coloring(f: &Graph, p: i64, colors: usize, budget: SolveBudget) -> Result<Option<PAlmostColoring>> {
    let n = f.order();
    let max_removed = (p.max(0) as usize).saturating_mul(colors.saturating_sub(1)).min(n);
    for size in 0..=max_removed {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let keep: Vec<usize> = (0..n).filter(|v| !subset.contains(v)).collect();
            if let Some(col) = color_with(&f.induced(&keep), colors, budget)? {
                let mut coloring = vec![None; n];
                for (i, &v) in keep.iter().enumerate() {
                    coloring[v] = Some(col[i]);
                }
                return Ok(Some(PAlmostColoring {
                    removed: subset,
                    coloring,
                    colors,
                }));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `c` to the next `|c|`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Largest `row . x` over edge pairs, used to sanity-check witnesses.
pub fn max_form_over_pairs(g: &OrderedGraph, row: &[i64; 4]) -> Option<i128> {
    let es = g.edges();
    let mut best = None;
    for a in es {
        for b in es {
            if a != b {
                let v = linear_form(row, [a.u, a.v, b.u, b.v]);
                best = Some(best.map_or(v, |m: i128| m.max(v)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_conflict_graph, nest_matrix};
    use crate::solvers::{clique_number, independence_number};

    fn alpha(g: &OrderedGraph, spec: &ConflictSpec) -> usize {
        independence_number(build_conflict_graph(g, spec).unwrap().graph(), SolveBudget::default()).unwrap()
    }

    fn omega(g: &OrderedGraph, spec: &ConflictSpec) -> usize {
        clique_number(build_conflict_graph(g, spec).unwrap().graph(), SolveBudget::default()).unwrap()
    }

    #[test]
    fn extremal_examples() {
        let spec = ConflictSpec::single([1, 0, -1, 0], 2);
        let g = extremal_complete_graph(&spec, 4, Quantity::A).unwrap();
        assert_eq!(g.vertices(), &[2, 4, 6, 8]);
        assert_eq!(alpha(&g, &spec), 3);

        // spacing |p| + 1 turns the p = -2 relation into the p = 0 one
        let spec = ConflictSpec::single([1, 0, 0, -1], -2);
        let g = extremal_complete_graph(&spec, 5, Quantity::W).unwrap();
        assert_eq!(g.vertices(), &[3, 6, 9, 12, 15]);
        assert_eq!(omega(&g, &spec), 4);
        let spaced2 = OrderedGraph::complete(vec![2, 4, 6, 8, 10]).unwrap();
        assert!(omega(&spaced2, &spec) > 4);

        let spec = ConflictSpec::single([-1, 1, -1, 1], 4);
        let g = extremal_complete_graph(&spec, 5, Quantity::W).unwrap();
        assert_eq!(g.vertices(), &[1, 2, 3, 4, 5]);
        assert_eq!(omega(&g, &spec), 6);

        let nest = ConflictSpec::new(nest_matrix(), 1);
        let g = extremal_complete_graph(&nest, 5, Quantity::A).unwrap();
        assert_eq!(alpha(&g, &nest), 7);
    }

    #[test]
    fn theorem1_shift_examples() {
        let k3 = OrderedGraph::complete(vec![1, 2, 3]).unwrap();
        let spec = ConflictSpec::single([1, 1, 1, 1], 0);
        let g = theorem1_witness(&spec, &k3, Quantity::W).unwrap();
        assert!(build_conflict_graph(&g, &spec).unwrap().conflict_pairs().is_empty());
        assert!(g.vertices()[2] < 0);
        let g = theorem1_witness(&spec, &k3, Quantity::A).unwrap();
        assert_eq!(alpha(&g, &spec), 1);

        let spec = ConflictSpec::single([1, 1, -1, 0], 3);
        let k5 = OrderedGraph::complete((1..=5).collect()).unwrap();
        let g = theorem1_witness(&spec, &k5, Quantity::A).unwrap();
        assert_eq!(alpha(&g, &spec), 1);

        let mixed = ConflictSpec::new(crate::model::ConflictMatrix::new(vec![[1, 0, 0, 0], [-1, 0, 0, 0]]).unwrap(), 0);
        assert!(matches!(
            theorem1_witness(&mixed, &k3, Quantity::A),
            Err(ConstructionError::CaseMismatch(_))
        ));
    }

    #[test]
    fn theorem1_power_examples() {
        let k4 = OrderedGraph::complete((1..=4).collect()).unwrap();
        // m2 + m4 = 0 with m1, m2 nonzero: the base must avoid divisors of 2
        let spec = ConflictSpec::single([2, -2, -2, 2], 3);
        let g = theorem1_witness(&spec, &k4, Quantity::A).unwrap();
        assert_eq!(g.vertices(), &[3, 9, 27, 81]);
        assert_eq!(alpha(&g, &spec), 1);

        let spec = ConflictSpec::single([3, -2, 1, -2], -1);
        let g = theorem1_witness(&spec, &k4, Quantity::W).unwrap();
        assert_eq!(omega(&g, &spec), 1);
        assert!(max_form_over_pairs(&g, &[3, -2, 1, -2]).unwrap() < -1);
    }

    #[test]
    fn critical_subgraph_examples() {
        let b = SolveBudget::default();
        let mut edges: Vec<(i64, i64)> = Vec::new();
        for a in 1..=4 {
            for c in a + 1..=4 {
                edges.push((a, c));
            }
        }
        edges.push((4, 5));
        let g = OrderedGraph::new(vec![1, 2, 3, 4, 5], edges).unwrap();
        let c = k_critical_subgraph(&g, 4, b).unwrap();
        assert_eq!(c.vertices(), &[1, 2, 3, 4]);
        assert_eq!(c.size(), 6);

        let c5 = OrderedGraph::from_graph(&Graph::cycle(5), &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(k_critical_subgraph(&c5, 3, b).unwrap(), c5);

        let mut k5e = OrderedGraph::complete((1..=5).collect()).unwrap();
        k5e = k5e.without_edge(Edge::new(1, 2));
        let c = k_critical_subgraph(&k5e, 4, b).unwrap();
        let u = c.underlying();
        assert!((0..u.order()).all(|v| u.degree(v) >= 3));
        assert!(chromatic_at_least(&u, 4, b).unwrap());
        assert!(k_critical_subgraph(&c5, 4, b).is_err());
    }

    #[test]
    fn long_edge_examples() {
        let b = SolveBudget::default();
        let k5 = OrderedGraph::complete((1..=5).collect()).unwrap();
        let s = long_edge_set(&k5, 5, 2, b).unwrap();
        assert_eq!(s.edges.len(), 6);
        assert!(s.edges.iter().all(|e| e.length() >= 2));
        let extra = s.extra.unwrap();
        assert!(extra.length() >= 1 && !s.edges.contains(&extra));

        let k3 = OrderedGraph::complete(vec![1, 2, 3]).unwrap();
        let s = long_edge_set(&k3, 3, 1, b).unwrap();
        assert_eq!(s.edges.len(), 3);
        assert_eq!(s.extra, None);
        assert!(long_edge_set(&k3, 3, 3, b).is_err());
    }

    #[test]
    fn witness_examples() {
        let through5: Vec<Edge> = [(1, 5), (3, 5), (5, 7), (5, 9)].iter().map(|&(a, b)| Edge::new(a, b)).collect();
        let w = independent_set_witness(1, &through5).unwrap();
        assert_eq!(w.kind, WitnessKind::MeetsAllSpans);
        assert_eq!(w.interval, (5, 5));
        assert!(witness_holds(1, &through5, &w));

        let f = vec![Edge::new(1, 5), Edge::new(2, 4)];
        let w = independent_set_witness(-1, &f).unwrap();
        assert_eq!(w.kind, WitnessKind::ContainedInAllSpans);
        assert_eq!(w.interval, (2, 4));

        let f = vec![Edge::new(3, 5), Edge::new(0, 8), Edge::new(1, 7)];
        let w = independent_set_witness(-2, &f).unwrap();
        assert_eq!(w.kind, WitnessKind::ShortEdgeException);
        assert_eq!(w.exceptional_edge, Some(Edge::new(3, 5)));
        assert!(witness_holds(-2, &f, &w));

        let bad = vec![Edge::new(1, 2), Edge::new(5, 6)];
        assert!(matches!(
            independent_set_witness(1, &bad),
            Err(ConstructionError::NotIndependent(_, _))
        ));
    }

    #[test]
    fn almost_coloring_examples() {
        let spec0 = leftof(0);
        // bipartite, t = 1, p = 0
        let f = Graph::cycle(4);
        let pac = PAlmostColoring {
            removed: vec![],
            coloring: vec![Some(0), Some(1), Some(0), Some(1)],
            colors: 2,
        };
        let g = coloring_to_embedding(&f, &pac, 0).unwrap();
        assert_eq!(g.underlying().size(), 4);
        assert!(omega(&g, &spec0) <= 1);

        let k4 = Graph::complete(4);
        let pac = PAlmostColoring {
            removed: vec![3],
            coloring: vec![Some(0), Some(1), Some(2), None],
            colors: 3,
        };
        let g = coloring_to_embedding(&k4, &pac, 1).unwrap();
        assert!(omega(&g, &leftof(1)) <= 2);

        let c5 = Graph::cycle(5);
        let pac = PAlmostColoring {
            removed: vec![],
            coloring: vec![Some(0), Some(1), Some(0), Some(1), Some(2)],
            colors: 3,
        };
        let g = coloring_to_embedding(&c5, &pac, 0).unwrap();
        assert!(omega(&g, &spec0) <= 2);

        let bad = PAlmostColoring {
            removed: vec![0, 1],
            coloring: vec![None, None, Some(0), Some(1)],
            colors: 2,
        };
        assert!(coloring_to_embedding(&k4, &bad, 1).is_err());
    }

    #[test]
    fn embedding_to_coloring_examples() {
        let g = OrderedGraph::new(vec![1, 2, 5, 6], vec![(1, 2), (5, 6)]).unwrap();
        let pac = embedding_to_coloring(&g, 1).unwrap();
        assert_eq!(pac.colors, 3);
        pac.validate(&g.underlying(), 1).unwrap();

        let k4 = OrderedGraph::complete(vec![1, 2, 3, 4]).unwrap();
        let pac = embedding_to_coloring(&k4, 1).unwrap();
        assert_eq!(pac.colors, 3);
        pac.validate(&k4.underlying(), 1).unwrap();

        let k6 = OrderedGraph::complete((1..=6).collect()).unwrap();
        let pac = embedding_to_coloring(&k6, 0).unwrap();
        assert!(pac.removed.is_empty());
        pac.validate(&k6.underlying(), 0).unwrap();
        assert_eq!(pac.colors, 6);
    }

    #[test]
    fn almost_coloring_search() {
        let b = SolveBudget::default();
        let k4 = Graph::complete(4);
        assert!(find_almost_coloring(&k4, 1, 2, b).unwrap().is_none());
        let pac = find_almost_coloring(&k4, 2, 2, b).unwrap().unwrap();
        pac.validate(&k4, 2).unwrap();
        assert_eq!(pac.removed.len(), 2);
        let pac = find_almost_coloring(&k4, 1, 3, b).unwrap().unwrap();
        pac.validate(&k4, 1).unwrap();
    }
}
