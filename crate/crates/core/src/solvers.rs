//! Exact clique, independence and chromatic numbers.
//!
//! Maximum clique is a bitset branch and bound with greedy-coloring bounds;
//! chromatic number is an iterative-deepening DSATUR backtracking search
//! started at the clique lower bound.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{BitSet, Graph};
use crate::model::{ConflictSpec, OrderedGraph};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget exceeded; value lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("undefined on a graph without vertices")]
    Undefined,
}

/// Limits on a single solver call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            node_limit: Some(10_000_000),
            time_limit: Some(Duration::from_secs(60)),
        }
    }
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget {
            node_limit: None,
            time_limit: None,
        }
    }

    pub fn nodes(n: u64) -> Self {
        SolveBudget {
            node_limit: Some(n),
            time_limit: None,
        }
    }
}

struct Meter {
    budget: SolveBudget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: SolveBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    /// Counts one search node; false once the budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.budget.node_limit {
            if self.nodes > limit {
                return false;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.budget.time_limit {
                if self.start.elapsed() > t {
                    return false;
                }
            }
        }
        true
    }
}

/// Vertices sorted by degree (descending), ties by index.
fn branching_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct CliqueSearch<'a> {
    adj: Vec<BitSet>,
    relabel: &'a [usize],
    best: Vec<usize>,
    meter: Meter,
    aborted: bool,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `cand`; returns vertices with their color
    /// numbers (1-based), color classes emitted in increasing order.
    fn color_sort(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncolored.remove(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: BitSet) {
        if !self.meter.tick() {
            self.aborted = true;
            return;
        }
        let mut cand = cand;
        let colored = self.color_sort(&cand);
        for &(v, color) in colored.iter().rev() {
            if current.len() + color <= self.best.len() {
                return;
            }
            current.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            if self.aborted {
                return;
            }
            cand.remove(v);
        }
    }
}

/// A maximum clique (vertex indices, ascending).
pub fn maximum_clique(g: &Graph, budget: SolveBudget) -> Result<Vec<usize>, SolveError> {
    let n = g.order();
    if n == 0 {
        return Err(SolveError::Undefined);
    }
    // Relabel so that bit order follows the branching order.
    let order = branching_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = vec![BitSet::new(n); n];
    for (i, &v) in order.iter().enumerate() {
        for w in g.neighbors(v).iter() {
            adj[i].insert(pos[w]);
        }
    }
    let mut search = CliqueSearch {
        adj,
        relabel: &order,
        best: vec![0],
        meter: Meter::new(budget),
        aborted: false,
    };
    let root = BitSet::full(n);
    let root_bound = search
        .color_sort(&root)
        .iter()
        .map(|&(_, c)| c)
        .max()
        .unwrap_or(1);
    search.expand(&mut Vec::new(), root);
    if search.aborted {
        return Err(SolveError::BudgetExceeded {
            lower: search.best.len(),
            upper: root_bound,
        });
    }
    let mut clique: Vec<usize> = search.best.iter().map(|&i| search.relabel[i]).collect();
    clique.sort_unstable();
    Ok(clique)
}

pub fn clique_number(g: &Graph, budget: SolveBudget) -> Result<usize, SolveError> {
    maximum_clique(g, budget).map(|c| c.len())
}

pub fn maximum_independent_set(g: &Graph, budget: SolveBudget) -> Result<Vec<usize>, SolveError> {
    maximum_clique(&g.complement(), budget)
}

pub fn independence_number(g: &Graph, budget: SolveBudget) -> Result<usize, SolveError> {
    clique_number(&g.complement(), budget)
}

/// Greedy DSATUR coloring; returns the color of each vertex.
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<BitSet> = vec![BitSet::new(n + 1); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (seen[v].count(), g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex");
        let c = (0..=n).find(|&c| !seen[v].contains(c)).expect("free color");
        color[v] = c;
        for w in g.neighbors(v).iter() {
            seen[w].insert(c);
        }
    }
    color
}

struct ColorSearch<'a> {
    g: &'a Graph,
    colors: usize,
    assign: Vec<usize>,
    meter: Meter,
    aborted: bool,
}

impl ColorSearch<'_> {
    fn solve(&mut self, colored: usize, used: usize) -> bool {
        let n = self.g.order();
        if colored == n {
            return true;
        }
        if !self.meter.tick() {
            self.aborted = true;
            return false;
        }
        // DSATUR choice: most distinct neighbor colors, then degree, then index.
        let mut pick = None;
        let mut pick_key = (0, 0);
        let mut pick_forbidden = 0u64;
        for v in 0..n {
            if self.assign[v] != usize::MAX {
                continue;
            }
            let mut forbidden = 0u64;
            for w in self.g.neighbors(v).iter() {
                if self.assign[w] != usize::MAX {
                    forbidden |= 1 << self.assign[w];
                }
            }
            let key = (forbidden.count_ones() as usize, self.g.degree(v));
            if pick.is_none() || key > pick_key {
                pick = Some(v);
                pick_key = key;
                pick_forbidden = forbidden;
            }
        }
        let v = pick.expect("uncolored vertex");
        let limit = (used + 1).min(self.colors);
        for c in 0..limit {
            if pick_forbidden >> c & 1 == 1 {
                continue;
            }
            self.assign[v] = c;
            if self.solve(colored + 1, used.max(c + 1)) {
                return true;
            }
            if self.aborted {
                return false;
            }
        }
        self.assign[v] = usize::MAX;
        false
    }
}

/// Proper coloring with at most `colors` colors, if one exists.
pub fn color_with(g: &Graph, colors: usize, budget: SolveBudget) -> Result<Option<Vec<usize>>, SolveError> {
    let n = g.order();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if colors == 0 {
        return Ok(None);
    }
    let greedy = dsatur_greedy(g);
    if greedy.iter().max().map_or(0, |&c| c + 1) <= colors {
        return Ok(Some(greedy));
    }
    if colors >= 64 {
        // more colors than the bitmask tracks; greedy already used more than 64
        return Err(SolveError::BudgetExceeded { lower: 0, upper: n });
    }
    let mut search = ColorSearch {
        g,
        colors,
        assign: vec![usize::MAX; n],
        meter: Meter::new(budget),
        aborted: false,
    };
    let found = search.solve(0, 0);
    if search.aborted {
        return Err(SolveError::BudgetExceeded { lower: 0, upper: n });
    }
    Ok(found.then_some(search.assign))
}

/// Exact chromatic number together with an optimal coloring.
pub fn optimal_coloring(g: &Graph, budget: SolveBudget) -> Result<(usize, Vec<usize>), SolveError> {
    let n = g.order();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let lower = match clique_number(g, budget) {
        Ok(w) => w,
        Err(SolveError::BudgetExceeded { lower, .. }) => {
            return Err(SolveError::BudgetExceeded { lower, upper })
        }
        Err(e) => return Err(e),
    };
    let mut best = (upper, greedy);
    for c in lower..upper {
        match color_with(g, c, budget) {
            Ok(Some(col)) => {
                best = (c, col);
                break;
            }
            Ok(None) => {}
            Err(_) => return Err(SolveError::BudgetExceeded { lower: c, upper }),
        }
    }
    Ok(best)
}

pub fn chromatic_number(g: &Graph, budget: SolveBudget) -> Result<usize, SolveError> {
    optimal_coloring(g, budget).map(|(k, _)| k)
}

/// `chi(G) >= k`, decided as "not (k-1)-colorable".
pub fn chromatic_at_least(g: &Graph, k: usize, budget: SolveBudget) -> Result<bool, SolveError> {
    if k == 0 {
        return Ok(true);
    }
    color_with(g, k - 1, budget).map(|c| c.is_none())
}

/// Longest-chain layers for `M = (+,0,0,-)` with `p >= 0`.
///
/// The conflict relation orients from the left edge to the right edge when
/// the right endpoint of the first is at least `p` left of the left endpoint
/// of the second; that orientation is transitive, so `omega` is the height of
/// the poset. `layers[i]` is the length of the longest chain ending at edge `i`
/// (1-based); edges with equal layer are pairwise non-conflicting.
pub fn leftof_layers(g: &OrderedGraph, p: i64) -> Vec<usize> {
    assert!(p >= 0, "comparability structure needs p >= 0");
    let edges = g.edges();
    let mut by_right: Vec<usize> = (0..edges.len()).collect();
    by_right.sort_by_key(|&i| edges[i].v);
    let mut by_left: Vec<usize> = (0..edges.len()).collect();
    by_left.sort_by_key(|&i| edges[i].u);

    let mut layer = vec![0usize; edges.len()];
    // Sweep left endpoints in increasing order; every edge ending at or before
    // `u - p` has already been finished because its left endpoint is smaller.
    let mut finished = 0;
    let mut prefix_best = 0;
    for &i in &by_left {
        let reach = edges[i].u - p;
        while finished < by_right.len() && edges[by_right[finished]].v <= reach {
            prefix_best = prefix_best.max(layer[by_right[finished]]);
            finished += 1;
        }
        layer[i] = prefix_best + 1;
    }
    layer
}

/// Clique number of `M_p(G)` for `M = (+,0,0,-)`, `p >= 0`, in `O(|E| log |E|)`.
pub fn omega_leftof_fast(g: &OrderedGraph, p: i64) -> usize {
    leftof_layers(g, p).into_iter().max().unwrap_or(0)
}

/// Convenience: `alpha`, `omega` of a conflict graph given the ordered graph.
pub fn conflict_alpha(g: &OrderedGraph, spec: &ConflictSpec, budget: SolveBudget) -> Result<usize, SolveError> {
    let cg = crate::model::build_conflict_graph(g, spec).map_err(|_| SolveError::Undefined)?;
    independence_number(cg.graph(), budget)
}

pub fn conflict_omega(g: &OrderedGraph, spec: &ConflictSpec, budget: SolveBudget) -> Result<usize, SolveError> {
    let cg = crate::model::build_conflict_graph(g, spec).map_err(|_| SolveError::Undefined)?;
    clique_number(cg.graph(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_conflict_graph, nest_matrix};

    fn brute_clique(g: &Graph) -> usize {
        let n = g.order();
        assert!(n <= 20);
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if vs.len() <= best {
                continue;
            }
            if vs
                .iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            {
                best = vs.len();
            }
        }
        best
    }

    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.order();
        let mut col = vec![0usize; n];
        loop {
            if g.edges().iter().all(|&(a, b)| col[a] != col[b]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                col[i] += 1;
                if col[i] < k {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn k3_left_endpoint_values() {
        let g = OrderedGraph::complete(vec![1, 2, 3]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::single([1, 0, -1, 0], 1)).unwrap();
        assert_eq!(brute_clique(cg.graph()), 2);
        assert_eq!(clique_number(cg.graph(), SolveBudget::default()), Ok(2));
        assert_eq!(independence_number(cg.graph(), SolveBudget::default()), Ok(2));
    }

    #[test]
    fn trivial_graphs() {
        let b = SolveBudget::default();
        assert_eq!(clique_number(&Graph::empty(6), b), Ok(1));
        assert_eq!(independence_number(&Graph::empty(6), b), Ok(6));
        assert_eq!(clique_number(&Graph::complete(7), b), Ok(7));
        assert_eq!(clique_number(&Graph::empty(0), b), Err(SolveError::Undefined));
        assert_eq!(chromatic_number(&Graph::empty(0), b), Ok(0));
        assert_eq!(chromatic_number(&Graph::empty(3), b), Ok(1));
    }

    #[test]
    fn nest_k4_alpha() {
        let g = OrderedGraph::complete(vec![1, 2, 3, 4]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::new(nest_matrix(), 1)).unwrap();
        assert_eq!(independence_number(cg.graph(), SolveBudget::default()), Ok(5));
    }

    #[test]
    fn row10_k5_alpha() {
        let g = OrderedGraph::complete(vec![1, 2, 3, 4, 5]).unwrap();
        let cg = build_conflict_graph(&g, &ConflictSpec::single([1, 0, 0, -1], 1)).unwrap();
        assert_eq!(independence_number(cg.graph(), SolveBudget::default()), Ok(8));
    }

    #[test]
    fn chromatic_examples() {
        let b = SolveBudget::default();
        assert_eq!(chromatic_number(&Graph::complete(5), b), Ok(5));
        assert_eq!(chromatic_number(&Graph::cycle(5), b), Ok(3));
        let petersen = Graph::petersen();
        assert!(brute_colorable(&petersen, 3));
        assert!(!brute_colorable(&petersen, 2));
        assert_eq!(chromatic_number(&petersen, b), Ok(3));
    }

    #[test]
    fn coloring_is_proper() {
        let g = Graph::petersen();
        let (k, col) = optimal_coloring(&g, SolveBudget::default()).unwrap();
        assert_eq!(k, 3);
        assert!(g.edges().iter().all(|&(a, b)| col[a] != col[b]));
        assert!(col.iter().all(|&c| c < k));
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = Graph::complete(30).complement().complement();
        match clique_number(&g, SolveBudget::nodes(1)) {
            Err(SolveError::BudgetExceeded { lower, upper }) => assert!(lower <= upper),
            Ok(w) => assert_eq!(w, 30),
            Err(e) => panic!("{e}"),
        }
        // Mycielski-like hard instance is overkill; a random dense graph with a tiny
        // budget must fail cleanly.
        let mut g = Graph::empty(40);
        for i in 0..40 {
            for j in i + 1..40 {
                if (i * 7 + j * 13) % 3 != 0 {
                    g.add_edge(i, j);
                }
            }
        }
        match chromatic_number(&g, SolveBudget::nodes(2)) {
            Err(SolveError::BudgetExceeded { lower, upper }) => assert!(lower <= upper),
            Ok(_) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn leftof_fast_examples() {
        let k4 = OrderedGraph::complete(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(omega_leftof_fast(&k4, 1), 2);
        let path = OrderedGraph::new(vec![1, 2, 4, 5, 7, 8], vec![(1, 2), (4, 5), (7, 8)]).unwrap();
        assert_eq!(omega_leftof_fast(&path, 1), 3);
        let k7 = OrderedGraph::complete((1..=7).collect()).unwrap();
        assert_eq!(omega_leftof_fast(&k7, 0), 6);
        assert_eq!(omega_leftof_fast(&k7, 1), 3);
    }
}
