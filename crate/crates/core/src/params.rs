//! Classic layout parameters of unordered graphs expressed as minima of
//! conflict-graph invariants over vertex orderings, plus the classical
//! algorithms they are cross-checked against.
//!
//! Orderings are searched exhaustively on `1..=n`. Every objective here is
//! monotone under appending vertices on the right, so the value on a prefix
//! is a lower bound for all its completions.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::model::{build_conflict_graph, cross_matrix, nest_matrix, ConflictMatrix, ConflictSpec, OrderedGraph};
use crate::solvers::{chromatic_number, clique_number, omega_leftof_fast, SolveBudget, SolveError};

/// Largest vertex count accepted by the ordering search.
pub const MAX_SEARCH_VERTICES: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("ordering search supports at most {MAX_SEARCH_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameter {
    PageNumber,
    QueueNumber,
    Degeneracy,
    BandWidth,
    IntervalChromatic,
    ArchNumber,
}

impl Parameter {
    pub const ALL: [Parameter; 6] = [
        Parameter::PageNumber,
        Parameter::QueueNumber,
        Parameter::Degeneracy,
        Parameter::BandWidth,
        Parameter::IntervalChromatic,
        Parameter::ArchNumber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::PageNumber => "page-number",
            Parameter::QueueNumber => "queue-number",
            Parameter::Degeneracy => "degeneracy",
            Parameter::BandWidth => "band-width",
            Parameter::IntervalChromatic => "interval-chromatic",
            Parameter::ArchNumber => "arch-number",
        }
    }
}

/// Conflict spec whose clique number, minimized over orderings, is the degeneracy:
/// two edges conflict iff they share their right endpoint.
pub fn degeneracy_spec() -> ConflictSpec {
    ConflictSpec::new(
        ConflictMatrix::new(vec![[0, 1, 0, -1], [0, -1, 0, 1]]).expect("valid"),
        0,
    )
}

pub fn page_spec() -> ConflictSpec {
    ConflictSpec::new(cross_matrix(), 1)
}

pub fn queue_spec() -> ConflictSpec {
    ConflictSpec::new(nest_matrix(), 1)
}

/// Ordered graph with vertex `order[i]` of `f` placed at `i + 1`.
fn place(f: &Graph, order: &[usize]) -> OrderedGraph {
    let mut pos = vec![None; f.order()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = Some(i as i64 + 1);
    }
    let edges = f
        .edges()
        .into_iter()
        .filter_map(|(a, b)| Some((pos[a]?, pos[b]?)))
        .collect();
    OrderedGraph::new((1..=order.len() as i64).collect(), edges).expect("consecutive placement")
}

struct Search<'a, F> {
    f: &'a Graph,
    objective: &'a F,
    best: &'a AtomicUsize,
    /// Best prefix value seen per placed vertex set, for objectives whose
    /// completion cost depends only on that set.
    memo: Option<&'a Mutex<HashMap<u32, usize>>>,
}

impl<F> Search<'_, F>
where
    F: Fn(&OrderedGraph) -> Result<usize, SolveError> + Sync,
{
    fn fresh(&self, prefix: &[usize], value: usize) -> bool {
        let Some(memo) = self.memo else {
            return true;
        };
        let key = prefix.iter().fold(0u32, |m, &v| m | 1 << v);
        let mut memo = memo.lock().expect("memo lock");
        match memo.get(&key) {
            Some(&seen) if seen <= value => false,
            _ => {
                memo.insert(key, value);
                true
            }
        }
    }

    fn extend(&self, prefix: &mut Vec<usize>, used: &mut [bool]) -> Result<(), SolveError> {
        let n = self.f.order();
        if prefix.len() == n {
            let v = (self.objective)(&place(self.f, prefix))?;
            self.best.fetch_min(v, Ordering::Relaxed);
            return Ok(());
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            prefix.push(w);
            let lb = (self.objective)(&place(self.f, prefix))?;
            if lb < self.best.load(Ordering::Relaxed) && self.fresh(prefix, lb) {
                used[w] = true;
                let r = self.extend(prefix, used);
                used[w] = false;
                r?;
            }
            prefix.pop();
        }
        Ok(())
    }
}

/// Minimum of `objective` over all placements of `f` on `1..=n`.
///
/// `objective` must be monotone under adding vertices to the right end.
pub fn min_over_orderings<F>(f: &Graph, objective: F) -> Result<usize, ParamError>
where
    F: Fn(&OrderedGraph) -> Result<usize, SolveError> + Sync,
{
    search_orderings(f, objective, false)
}

/// [`min_over_orderings`] for objectives of the form `max(prefix value, cost
/// of the rest given the placed set)`; prefixes reaching an already seen set
/// with no better value are pruned.
pub fn min_over_orderings_by_sets<F>(f: &Graph, objective: F) -> Result<usize, ParamError>
where
    F: Fn(&OrderedGraph) -> Result<usize, SolveError> + Sync,
{
    search_orderings(f, objective, true)
}

fn search_orderings<F>(f: &Graph, objective: F, by_sets: bool) -> Result<usize, ParamError>
where
    F: Fn(&OrderedGraph) -> Result<usize, SolveError> + Sync,
{
    let n = f.order();
    if n > MAX_SEARCH_VERTICES {
        return Err(ParamError::TooLarge(n));
    }
    if f.size() == 0 {
        return Err(ParamError::NoEdges);
    }
    let identity: Vec<usize> = (0..n).collect();
    let best = AtomicUsize::new(objective(&place(f, &identity))?);
    let memo = Mutex::new(HashMap::new());
    (0..n).into_par_iter().try_for_each(|first| {
        let search = Search {
            f,
            objective: &objective,
            best: &best,
            memo: by_sets.then_some(&memo),
        };
        let mut used = vec![false; n];
        used[first] = true;
        search.extend(&mut vec![first], &mut used)
    })?;
    Ok(best.into_inner())
}

fn conflict_chi(g: &OrderedGraph, spec: &ConflictSpec, budget: SolveBudget) -> Result<usize, SolveError> {
    if g.size() == 0 {
        return Ok(0);
    }
    let cg = build_conflict_graph(g, spec).expect("edges present");
    chromatic_number(cg.graph(), budget)
}

fn conflict_omega(g: &OrderedGraph, spec: &ConflictSpec, budget: SolveBudget) -> Result<usize, SolveError> {
    if g.size() == 0 {
        return Ok(0);
    }
    let cg = build_conflict_graph(g, spec).expect("edges present");
    clique_number(cg.graph(), budget)
}

/// Minimum number of pages of a book embedding.
pub fn page_number(f: &Graph, budget: SolveBudget) -> Result<usize, ParamError> {
    let spec = page_spec();
    min_over_orderings(f, |g| conflict_chi(g, &spec, budget))
}

/// Minimum number of queues; nesting conflict graphs are perfect, so
/// `chi` is computed as `omega`.
pub fn queue_number(f: &Graph, budget: SolveBudget) -> Result<usize, ParamError> {
    let spec = queue_spec();
    min_over_orderings(f, |g| conflict_omega(g, &spec, budget))
}

/// Degeneracy as the minimum over orderings of the largest number of edges
/// sharing a right endpoint.
pub fn degeneracy(f: &Graph, budget: SolveBudget) -> Result<usize, ParamError> {
    let spec = degeneracy_spec();
    // the largest left-degree of a later vertex depends only on the placed set
    min_over_orderings_by_sets(f, |g| conflict_omega(g, &spec, budget))
}

/// Classical degeneracy by repeatedly deleting a minimum-degree vertex.
pub fn degeneracy_peel(f: &Graph) -> usize {
    let n = f.order();
    let mut deg: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("alive vertex");
        best = best.max(deg[v]);
        alive[v] = false;
        for w in f.neighbors(v).iter() {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

fn max_length(g: &OrderedGraph) -> usize {
    g.edges().iter().map(|e| e.length() as usize).max().unwrap_or(0)
}

/// Minimum over orderings on `1..=n` of the longest edge.
pub fn band_width(f: &Graph) -> Result<usize, ParamError> {
    min_over_orderings(f, |g| Ok(max_length(g)))
}

/// Bandwidth of one ordering through the conflict form: the least `p >= 1`
/// such that `(-,+,0,0)` at `p + 1` has clique number 1.
pub fn band_width_framework_of(g: &OrderedGraph, budget: SolveBudget) -> Result<usize, SolveError> {
    if g.size() == 0 {
        return Ok(0);
    }
    let mut p = 1;
    loop {
        let spec = ConflictSpec::single([-1, 1, 0, 0], p + 1);
        if conflict_omega(g, &spec, budget)? == 1 {
            return Ok(p as usize);
        }
        p += 1;
    }
}

pub fn band_width_framework(f: &Graph, budget: SolveBudget) -> Result<usize, ParamError> {
    min_over_orderings(f, |g| band_width_framework_of(g, budget))
}

/// Fewest consecutive blocks of vertices such that no edge lies inside a
/// block; `best[i]` covers the `i` leftmost vertices.
pub fn interval_chromatic(g: &OrderedGraph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let u = g.underlying();
    let mut best = vec![usize::MAX; n + 1];
    best[0] = 0;
    for i in 1..=n {
        // block j..i is independent iff no edge inside; extend j leftwards
        for j in (0..i).rev() {
            if (j + 1..i).any(|x| u.has_edge(j, x)) {
                break;
            }
            if best[j] != usize::MAX {
                best[i] = best[i].min(best[j] + 1);
            }
        }
    }
    best[n]
}

/// The same quantity as `omega(M_0(G)) + 1` for `M = (+,0,0,-)`.
pub fn interval_chromatic_framework(g: &OrderedGraph) -> usize {
    omega_leftof_fast(g, 0) + 1
}

/// Minimum over orderings of the largest family of edges with pairwise
/// disjoint spans.
pub fn arch_number(f: &Graph) -> Result<usize, ParamError> {
    min_over_orderings(f, |g| Ok(omega_leftof_fast(g, 1)))
}

/// Evaluates an unordered parameter; `interval-chromatic` uses the given
/// embedding as-is.
pub fn compute(param: Parameter, g: &OrderedGraph, budget: SolveBudget) -> Result<usize, ParamError> {
    if g.size() == 0 {
        return Err(ParamError::NoEdges);
    }
    let f = g.underlying();
    match param {
        Parameter::PageNumber => page_number(&f, budget),
        Parameter::QueueNumber => queue_number(&f, budget),
        Parameter::Degeneracy => degeneracy(&f, budget),
        Parameter::BandWidth => band_width(&f),
        Parameter::IntervalChromatic => Ok(interval_chromatic(g)),
        Parameter::ArchNumber => arch_number(&f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn page_examples() {
        let b = SolveBudget::default();
        assert_eq!(page_number(&Graph::complete(4), b), Ok(2));
        assert_eq!(page_number(&Graph::complete(3), b), Ok(1));
        assert_eq!(page_number(&Graph::cycle(4), b), Ok(1));
    }

    #[test]
    fn queue_examples() {
        let b = SolveBudget::default();
        assert_eq!(queue_number(&Graph::complete(3), b), Ok(1));
        assert_eq!(queue_number(&star(4), b), Ok(1));
        // K_4 needs two queues: some pair of its edges nests in every ordering
        assert_eq!(queue_number(&Graph::complete(4), b), Ok(2));
    }

    #[test]
    fn degeneracy_examples() {
        let b = SolveBudget::default();
        let tree = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        for (g, d) in [(Graph::complete(5), 4), (Graph::cycle(5), 2), (tree, 1)] {
            assert_eq!(degeneracy_peel(&g), d);
            assert_eq!(degeneracy(&g, b), Ok(d));
        }
    }

    #[test]
    fn band_width_examples() {
        let b = SolveBudget::default();
        assert_eq!(band_width(&path(5)), Ok(1));
        assert_eq!(band_width(&Graph::cycle(6)), Ok(2));
        for n in 3..=6 {
            assert_eq!(band_width(&Graph::complete(n)), Ok(n - 1));
        }
        assert_eq!(band_width_framework(&Graph::cycle(6), b), Ok(2));
        assert_eq!(band_width_framework(&path(4), b), Ok(1));
    }

    #[test]
    fn interval_chromatic_examples() {
        for k in 2..=6 {
            let g = OrderedGraph::complete((1..=k).collect()).unwrap();
            assert_eq!(interval_chromatic(&g), k as usize);
            assert_eq!(interval_chromatic_framework(&g), k as usize);
        }
        let m = 3;
        let mut edges = Vec::new();
        for a in 1..=m {
            for b in m + 1..=2 * m {
                edges.push((a, b));
            }
        }
        let kmm = OrderedGraph::new((1..=2 * m).collect(), edges).unwrap();
        assert_eq!(interval_chromatic(&kmm), 2);
        assert_eq!(interval_chromatic_framework(&kmm), 2);
    }

    #[test]
    fn arch_examples() {
        assert_eq!(arch_number(&star(3)), Ok(1));
        // every ordering of K_4 contains two unit edges at distance one;
        // equivalently K_4 minus one vertex is not 2-colorable
        assert_eq!(arch_number(&Graph::complete(4)), Ok(2));
    }

    #[test]
    fn size_limit() {
        assert_eq!(band_width(&path(10)), Err(ParamError::TooLarge(10)));
        assert_eq!(band_width(&Graph::empty(3)), Err(ParamError::NoEdges));
    }
}
