//! Batch checks of the closed forms and lemmas on constructed, enumerated
//! and seeded random ordered graphs, reported as JSON lines.
//!
//! Lower-direction results hold only for the enumerated window; every such
//! report says so in its `scope`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::{
    coloring_to_embedding, embedding_to_coloring, extremal_complete_graph, independent_set_witness,
    long_edge_set, theorem1_witness, witness_holds, ConstructionError,
};
use crate::formulas::{
    closed_form_value, closed_form_x_cli, closed_form_x_ind, table2_x_cli, table2_x_ind, FormulaError,
    FormulaValue, Quantity,
};
use crate::graph::Graph;
use crate::io::GraphDoc;
use crate::model::{
    build_conflict_graph, conflict_graph_unchecked, is_conflicting, nest_matrix, shift_matrix, ConflictMatrix,
    ConflictSpec, Edge, OrderedGraph,
};
use crate::solvers::{
    chromatic_number, clique_number, independence_number, leftof_layers, omega_leftof_fast, SolveBudget,
    SolveError,
};
use crate::transforms::{
    classify_matrix, complement_spec, invariant_sign_rows, nest_shift_pair, reverse_negate, STARRED_ROWS,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("invalid enumeration: {0}")]
    InvalidEnumeration(String),
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub claim_id: String,
    pub status: Status,
    pub scope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Measured quantities backing the verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<Value>,
    pub instances: u64,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl VerifyReport {
    fn new(claim_id: String, scope: impl Into<String>) -> Self {
        VerifyReport {
            claim_id,
            status: Status::Pass,
            scope: scope.into(),
            witness: None,
            observed: None,
            instances: 0,
            runtime_ms: 0,
            notes: String::new(),
        }
    }

    fn fail(&mut self, witness: Value) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness);
        }
    }

    fn partial(&mut self, note: &str) {
        if self.status == Status::Pass {
            self.status = Status::Partial;
        }
        self.note(note);
    }

    fn note(&mut self, note: &str) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note);
    }

    /// Copy with the runtime zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        VerifyReport {
            runtime_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, u64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_millis() as u64))
}

fn graph_json(g: &OrderedGraph) -> Value {
    serde_json::to_value(GraphDoc::from(g)).expect("graph serializes")
}

fn value_json(v: &FormulaValue) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn spec_label(spec: &ConflictSpec) -> String {
    let tag = classify_matrix(&spec.matrix)
        .tag
        .table_row()
        .map_or_else(|| "general".to_string(), |r| format!("row{r}"));
    format!("{tag}.M={}.p={}", spec.matrix, spec.p)
}

// ---------------------------------------------------------------------------
// Enumeration

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum EnumerationMode {
    /// Every vertex subset of the window (at least two vertices), then every
    /// nonempty edge subset.
    Exhaustive,
    /// `count` graphs; `n` uniform in `[3, max_vertices]`, coordinates drawn
    /// from a random sub-window of width `2n`.
    Random { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub max_vertices: usize,
    pub window: (i64, i64),
    /// Inclusive bounds on the number of edges.
    pub edge_range: Option<(usize, usize)>,
    pub mode: EnumerationMode,
}

/// Graphs above this count are refused in exhaustive mode.
const EXHAUSTIVE_LIMIT: u128 = 5_000_000;

impl EnumerationSpec {
    pub fn exhaustive(max_vertices: usize, window: (i64, i64)) -> Self {
        EnumerationSpec {
            max_vertices,
            window,
            edge_range: None,
            mode: EnumerationMode::Exhaustive,
        }
    }

    pub fn random(seed: u64, count: usize) -> Self {
        EnumerationSpec {
            max_vertices: 8,
            window: (-20, 20),
            edge_range: None,
            mode: EnumerationMode::Random { seed, count },
        }
    }

    fn width(&self) -> i64 {
        self.window.1 - self.window.0 + 1
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(VerifyError::InvalidEnumeration(m));
        if self.max_vertices < 2 {
            return bad("need at least two vertices".into());
        }
        if self.width() < self.max_vertices as i64 {
            return bad(format!("window {:?} narrower than {} vertices", self.window, self.max_vertices));
        }
        if let Some((lo, hi)) = self.edge_range {
            if lo > hi {
                return bad("empty edge range".into());
            }
        }
        if self.mode == EnumerationMode::Exhaustive {
            let w = self.width() as u32;
            if w > 24 {
                return bad("window too wide for exhaustive mode".into());
            }
            let mut total: u128 = 0;
            for s in 2..=self.max_vertices.min(w as usize) {
                let pairs = (s * (s - 1) / 2) as u32;
                if pairs >= 64 {
                    return bad("too many edge subsets".into());
                }
                total += binom(w as u128, s as u128) << pairs;
            }
            if total > EXHAUSTIVE_LIMIT {
                return bad(format!("{total} graphs exceed the exhaustive limit"));
            }
        }
        Ok(())
    }

    pub fn scope(&self) -> String {
        let edges = self
            .edge_range
            .map_or(String::new(), |(a, b)| format!(", {a}..={b} edges"));
        match self.mode {
            EnumerationMode::Exhaustive => format!(
                "verified within window: all ordered graphs on <= {} vertices in [{}, {}]{edges}",
                self.max_vertices, self.window.0, self.window.1
            ),
            EnumerationMode::Random { seed, count } => format!(
                "verified within window: {count} random ordered graphs (seed {seed}) on 3..={} vertices in [{}, {}]{edges}",
                self.max_vertices, self.window.0, self.window.1
            ),
        }
    }

    fn edges_ok(&self, m: usize) -> bool {
        m >= 1 && self.edge_range.is_none_or(|(lo, hi)| lo <= m && m <= hi)
    }
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All graphs described by `spec`, in canonical order.
pub fn enumerate(spec: &EnumerationSpec) -> Result<Vec<OrderedGraph>> {
    spec.validate()?;
    Ok(match spec.mode {
        EnumerationMode::Exhaustive => exhaustive(spec),
        EnumerationMode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let g = random_graph(&mut rng, spec.max_vertices, spec.window, (0.2, 0.9));
                if spec.edges_ok(g.size()) {
                    out.push(g);
                }
            }
            out
        }
    })
}

fn exhaustive(spec: &EnumerationSpec) -> Vec<OrderedGraph> {
    let (lo, _) = spec.window;
    let w = spec.width() as u32;
    let mut out = Vec::new();
    for vmask in 0u32..(1 << w) {
        let s = vmask.count_ones() as usize;
        if s < 2 || s > spec.max_vertices {
            continue;
        }
        let vs: Vec<i64> = (0..w).filter(|i| vmask >> i & 1 == 1).map(|i| lo + i as i64).collect();
        let mut pairs = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                pairs.push((a, b));
            }
        }
        for emask in 1u64..(1 << pairs.len()) {
            if !spec.edges_ok(emask.count_ones() as usize) {
                continue;
            }
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| emask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.push(OrderedGraph::new(vs.clone(), edges).expect("window graph"));
        }
    }
    out
}

/// A random ordered graph with at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, window: (i64, i64), density: (f64, f64)) -> OrderedGraph {
    let lo_n = 3.min(max_n);
    let n = rng.gen_range(lo_n..=max_n);
    let width = (2 * n as i64).min(window.1 - window.0 + 1);
    let start = rng.gen_range(window.0..=window.1 - width + 1);
    let mut coords: Vec<i64> = (start..start + width).collect();
    coords.shuffle(rng);
    coords.truncate(n);
    coords.sort_unstable();
    let d = rng.gen_range(density.0..=density.1);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(d) {
                edges.push((coords[i], coords[j]));
            }
        }
    }
    if edges.is_empty() {
        let i = rng.gen_range(0..n - 1);
        edges.push((coords[i], coords[i + 1 + rng.gen_range(0..n - 1 - i)]));
    }
    OrderedGraph::new(coords, edges).expect("random graph")
}

/// Enumerated graphs with their chromatic numbers.
pub struct Corpus {
    pub graphs: Vec<(OrderedGraph, usize)>,
    pub scope: String,
}

impl Corpus {
    pub fn build(spec: &EnumerationSpec, budget: SolveBudget) -> Result<Corpus> {
        let graphs = enumerate(spec)?;
        let graphs = graphs
            .into_par_iter()
            .map(|g| {
                let chi = chromatic_number(&g.underlying(), budget)?;
                Ok((g, chi))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            graphs,
            scope: spec.scope(),
        })
    }
}

// ---------------------------------------------------------------------------
// Closed-form checks

fn measure(g: &OrderedGraph, spec: &ConflictSpec, q: Quantity, budget: SolveBudget) -> Result<usize> {
    let cg = build_conflict_graph(g, spec).map_err(|_| SolveError::Undefined)?;
    Ok(match q {
        Quantity::A => independence_number(cg.graph(), budget)?,
        Quantity::W => clique_number(cg.graph(), budget)?,
    })
}

/// Solver value on the extremal embedding against the closed form, for both `A` and `W`.
pub fn verify_upper(spec: &ConflictSpec, k: u64, budget: SolveBudget) -> Result<VerifyReport> {
    let claim = format!("table1.{}.k={k}", spec_label(spec));
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, "extremal complete graph");
        let mut observed = serde_json::Map::new();
        for q in [Quantity::A, Quantity::W] {
            let f = closed_form_value(spec, k, q)?;
            let g = extremal_complete_graph(spec, k, q)?;
            let got = measure(&g, spec, q, budget)?;
            r.instances += 1;
            observed.insert(format!("{q:?}"), json!({ "formula": value_json(&f.value), "solver": got }));
            let witness = || json!({ "quantity": format!("{q:?}"), "graph": graph_json(&g), "solver": got, "formula": value_json(&f.value) });
            match &f.value {
                FormulaValue::Exact { value } if *value == got as u64 => {}
                FormulaValue::Bounds { .. } if f.value.admits(got as u64) => {
                    r.partial(&format!("{q:?} only sandwich-checked"));
                }
                FormulaValue::Unknown => r.partial(&format!("{q:?} has no closed form")),
                _ => r.fail(witness()),
            }
        }
        r.observed = Some(Value::Object(observed));
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

fn lower_bound_of(v: &FormulaValue) -> Option<u64> {
    match v {
        FormulaValue::Exact { value } => Some(*value),
        FormulaValue::Bounds { lower, .. } => Some(lower.ceil().to_integer().max(0) as u64),
        _ => None,
    }
}

/// Minimum `alpha` and `omega` over corpus graphs with `chi >= k`.
pub fn lower_minima(
    spec: &ConflictSpec,
    k: usize,
    corpus: &Corpus,
    budget: SolveBudget,
) -> Result<Vec<(OrderedGraph, usize, usize)>> {
    corpus
        .graphs
        .par_iter()
        .filter(|(_, chi)| *chi >= k)
        .map(|(g, _)| {
            let cg = conflict_graph_unchecked(g, spec);
            let a = independence_number(cg.graph(), budget)?;
            let w = clique_number(cg.graph(), budget)?;
            Ok((g.clone(), a, w))
        })
        .collect()
}

/// No corpus graph with `chi >= k` has `alpha < A` or `omega < W`.
pub fn verify_lower(spec: &ConflictSpec, k: u64, corpus: &Corpus, budget: SolveBudget) -> Result<VerifyReport> {
    let claim = format!("lower.{}.k={k}", spec_label(spec));
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, corpus.scope.clone());
        let fa = closed_form_value(spec, k, Quantity::A)?.value;
        let fw = closed_form_value(spec, k, Quantity::W)?.value;
        let rows = lower_minima(spec, k as usize, corpus, budget)?;
        r.instances = rows.len() as u64;
        let min_a = rows.iter().map(|t| t.1).min();
        let min_w = rows.iter().map(|t| t.2).min();
        for (q, bound, idx) in [(Quantity::A, lower_bound_of(&fa), 1), (Quantity::W, lower_bound_of(&fw), 2)] {
            let Some(bound) = bound else {
                r.partial(&format!("{q:?} has no closed form"));
                continue;
            };
            let pick = |t: &(OrderedGraph, usize, usize)| if idx == 1 { t.1 } else { t.2 };
            if let Some(t) = rows.iter().find(|t| (pick(t) as u64) < bound) {
                r.fail(json!({ "quantity": format!("{q:?}"), "graph": graph_json(&t.0), "solver": pick(t), "bound": bound }));
            }
        }
        if rows.is_empty() {
            r.note("no graph with the required chromatic number in the window");
        }
        r.observed = Some(json!({
            "min_alpha": min_a, "min_omega": min_w,
            "A": value_json(&fa), "W": value_json(&fw),
        }));
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

/// `|E| <= (2n - 3) alpha (|p| + 1)` for the shift matrix at `p <= 0`.
pub fn verify_density(p: i64, corpus: &[OrderedGraph], scope: &str, budget: SolveBudget) -> Result<VerifyReport> {
    if p > 0 {
        return Err(VerifyError::InvalidEnumeration("density bound needs p <= 0".into()));
    }
    let claim = format!("density.shift.p={p}");
    let spec = ConflictSpec::new(shift_matrix(), p);
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, scope);
        let violations = corpus
            .par_iter()
            .map(|g| {
                let a = independence_number(conflict_graph_unchecked(g, &spec).graph(), budget)?;
                let n = g.order() as i128;
                let bound = (2 * n - 3) * a as i128 * (1 - p as i128);
                Ok(((g.size() as i128) > bound).then(|| (g.clone(), a)))
            })
            .collect::<Result<Vec<_>>>()?;
        r.instances = corpus.len() as u64;
        if let Some((g, a)) = violations.into_iter().flatten().next() {
            r.fail(json!({ "graph": graph_json(&g), "alpha": a }));
        }
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

/// Inversion of the `A` / `W` laws against the directly coded Table 2 entries.
pub fn verify_inversion(row: u8, p: i64, q: Quantity, max_bound: u64) -> Result<VerifyReport> {
    let rep = representative(row);
    let spec = ConflictSpec::new(rep, p);
    let name = match q {
        Quantity::A => "Xind",
        Quantity::W => "Xcli",
    };
    let claim = format!("table2.row{row}.{name}.p={p}");
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, format!("bounds 1..={max_bound}"));
        for b in 1..=max_bound {
            let (inv, direct) = match q {
                Quantity::A => (closed_form_x_ind(&spec, b)?.value, table2_x_ind(row, p, b)),
                Quantity::W => (closed_form_x_cli(&spec, b)?.value, table2_x_cli(row, p, b)),
            };
            r.instances += 1;
            if inv != direct {
                r.fail(json!({ "bound": b, "inverted": value_json(&inv), "table": value_json(&direct) }));
            }
        }
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

/// Starred matrix of a table row.
pub fn representative(row: u8) -> ConflictMatrix {
    match row {
        2 => ConflictMatrix::row([0, 0, 0, 0]),
        12 => shift_matrix(),
        13 => nest_matrix(),
        r => ConflictMatrix::row(
            STARRED_ROWS
                .iter()
                .find(|(n, _)| *n == r)
                .map(|(_, m)| *m)
                .expect("table row 2..=13"),
        ),
    }
}

/// Searches the corpus for a non-complete `G` with `chi >= k` attaining the
/// closed form while every complete `K_k` in the corpus exceeds it.
pub fn question15_search(spec: &ConflictSpec, k: u64, corpus: &Corpus, budget: SolveBudget) -> Result<VerifyReport> {
    let claim = format!("question15.{}.k={k}", spec_label(spec));
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, corpus.scope.clone());
        let mut found = Vec::new();
        let rows = lower_minima(spec, k as usize, corpus, budget)?;
        r.instances = rows.len() as u64;
        for (q, idx) in [(Quantity::A, 1), (Quantity::W, 2)] {
            let Some(target) = closed_form_value(spec, k, q)?.value.exact() else {
                r.partial(&format!("{q:?} not exact"));
                continue;
            };
            let pick = |t: &(OrderedGraph, usize, usize)| if idx == 1 { t.1 } else { t.2 } as u64;
            let complete = rows.iter().filter(|t| t.0.is_complete() && t.0.order() == k as usize);
            let Some(best_complete) = complete.map(pick).min() else {
                continue;
            };
            if best_complete > target {
                if let Some(t) = rows.iter().find(|t| !t.0.is_complete() && pick(t) == target) {
                    found.push(json!({ "quantity": format!("{q:?}"), "graph": graph_json(&t.0), "value": target, "best_complete": best_complete }));
                }
            }
        }
        if found.is_empty() {
            r.note("none found");
        } else {
            r.status = Status::Partial;
            r.witness = Some(Value::Array(found));
            r.note("candidate found");
        }
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

// ---------------------------------------------------------------------------
// Lemma properties

pub const LEMMA_IDS: [&str; 7] = ["5i", "5ii", "6", "7", "8", "9", "10"];

fn random_sign_matrix(rng: &mut ChaCha8Rng, max_rows: usize, entry: i64) -> ConflictMatrix {
    let rows = rng.gen_range(1..=max_rows);
    ConflictMatrix::new(
        (0..rows)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-entry..=entry)))
            .collect(),
    )
    .expect("small entries")
}

fn random_corpus(seed: u64, count: usize) -> Vec<OrderedGraph> {
    enumerate(&EnumerationSpec::random(seed, count)).expect("default corpus is valid")
}

/// Runs one lemma property over `count` seeded random graphs.
pub fn verify_lemma_suite(lemma: &str, seed: u64, count: usize, budget: SolveBudget) -> Result<VerifyReport> {
    let claim = format!("lemma.{lemma}");
    let scope = format!("{count} random ordered graphs, seed {seed}");
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, scope);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1e44a);
        match lemma {
            "5i" => lemma_reverse_negate(&mut r, &mut rng, seed, count),
            "5ii" => lemma_complement(&mut r, &mut rng, seed, count),
            "6" => lemma_long_edges(&mut r, &mut rng, count, budget)?,
            "7" => lemma_comparability(&mut r, &mut rng, seed, count, budget)?,
            "8" => lemma_interval_witness(&mut r, &mut rng, seed, count),
            "9" => lemma_almost_coloring(&mut r, &mut rng, seed, count, budget)?,
            "10" => lemma_nest_shift(&mut r, &mut rng, seed, count),
            other => return Err(VerifyError::UnknownLemma(other.into())),
        }
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

/// `M_p(G)` and `(-M̄)_p(-G)` agree under `(u, v) -> (-v, -u)`.
fn lemma_reverse_negate(r: &mut VerifyReport, rng: &mut ChaCha8Rng, seed: u64, count: usize) {
    for g in random_corpus(seed, count) {
        let spec = ConflictSpec::new(random_sign_matrix(rng, 2, 2), rng.gen_range(-3..=3));
        let mirrored = ConflictSpec::new(reverse_negate(&spec.matrix), spec.p);
        let h = g.mirrored();
        let a = conflict_graph_unchecked(&g, &spec);
        let b = conflict_graph_unchecked(&h, &mirrored);
        let map: Vec<usize> = g
            .edges()
            .iter()
            .map(|e| h.edge_index(e.mirrored()).expect("mirrored edge"))
            .collect();
        r.instances += 1;
        let m = g.size();
        'pairs: for i in 0..m {
            for j in i + 1..m {
                if a.conflicts(i, j) != b.conflicts(map[i], map[j]) {
                    r.fail(json!({ "graph": graph_json(&g), "matrix": spec.matrix.rows(), "p": spec.p, "edges": [g.edges()[i], g.edges()[j]] }));
                    break 'pairs;
                }
            }
        }
    }
}

/// For single rows, the exchanged spec at `1 - p` is the complement.
fn lemma_complement(r: &mut VerifyReport, rng: &mut ChaCha8Rng, seed: u64, count: usize) {
    for g in random_corpus(seed, count) {
        let spec = ConflictSpec::new(random_sign_matrix(rng, 1, 3), rng.gen_range(-4..=4));
        let comp = complement_spec(&spec).expect("single row");
        let a = conflict_graph_unchecked(&g, &spec);
        let b = conflict_graph_unchecked(&g, &comp);
        r.instances += 1;
        if a.graph().complement() != *b.graph() {
            r.fail(json!({ "graph": graph_json(&g), "matrix": spec.matrix.rows(), "p": spec.p }));
        }
    }
}

/// Nest at `p` is the complement of shift at `1 - p`.
fn lemma_nest_shift(r: &mut VerifyReport, rng: &mut ChaCha8Rng, seed: u64, count: usize) {
    for g in random_corpus(seed, count) {
        let pair = nest_shift_pair(rng.gen_range(-2..=3));
        let a = conflict_graph_unchecked(&g, &pair.nest);
        let b = conflict_graph_unchecked(&g, &pair.shift);
        r.instances += 1;
        if a.graph().complement() != *b.graph() {
            r.fail(json!({ "graph": graph_json(&g), "p": pair.nest.p }));
        }
    }
}

/// The left-of orientation is transitive, `chi = omega`, and the fast clique
/// number matches the exact one.
fn lemma_comparability(
    r: &mut VerifyReport,
    rng: &mut ChaCha8Rng,
    seed: u64,
    count: usize,
    budget: SolveBudget,
) -> Result<()> {
    for g in random_corpus(seed, count) {
        let p = rng.gen_range(0..=2);
        let spec = ConflictSpec::single([1, 0, 0, -1], p);
        let cg = conflict_graph_unchecked(&g, &spec);
        let es = g.edges();
        let before = |a: &Edge, b: &Edge| a.v <= b.u - p;
        let mut transitive = true;
        for a in es {
            for b in es.iter().filter(|b| before(a, b)) {
                for c in es.iter().filter(|c| before(b, c)) {
                    transitive &= before(a, c) && is_conflicting(*a, *c, &spec);
                }
            }
        }
        let omega = clique_number(cg.graph(), budget)?;
        let chi = chromatic_number(cg.graph(), budget)?;
        let fast = omega_leftof_fast(&g, p);
        r.instances += 1;
        if !transitive || omega != chi || omega != fast {
            r.fail(json!({ "graph": graph_json(&g), "p": p, "omega": omega, "chi": chi, "fast": fast }));
        }
    }
    Ok(())
}

/// Independent sets get a valid interval witness; dependent ones a conflicting pair.
fn lemma_interval_witness(r: &mut VerifyReport, rng: &mut ChaCha8Rng, seed: u64, count: usize) {
    let mut dependent = 0;
    for g in random_corpus(seed, count) {
        let p = rng.gen_range(-2..=2);
        let spec = ConflictSpec::single([1, 0, 0, -1], p);
        let mut order: Vec<Edge> = g.edges().to_vec();
        order.shuffle(rng);
        let mut f: Vec<Edge> = Vec::new();
        for e in &order {
            if f.iter().all(|x| !is_conflicting(*x, *e, &spec)) {
                f.push(*e);
            }
        }
        r.instances += 1;
        match independent_set_witness(p, &f) {
            Ok(w) if witness_holds(p, &f, &w) => {}
            other => r.fail(json!({ "graph": graph_json(&g), "p": p, "set": f, "result": format!("{other:?}") })),
        }
        // make it dependent when some edge conflicts with the set
        if let Some(e) = order.iter().find(|e| !f.contains(e) && f.iter().any(|x| is_conflicting(*x, **e, &spec))) {
            f.push(*e);
            dependent += 1;
            match independent_set_witness(p, &f) {
                Err(ConstructionError::NotIndependent(a, b)) if is_conflicting(a, b, &spec) => {}
                other => r.fail(json!({ "graph": graph_json(&g), "p": p, "set": f, "result": format!("{other:?}") })),
            }
        }
    }
    r.note(&format!("{dependent} dependent sets checked"));
}

/// Long-edge sets on graphs with `chi >= 4` for `q = 2, 3`.
fn lemma_long_edges(r: &mut VerifyReport, rng: &mut ChaCha8Rng, count: usize, budget: SolveBudget) -> Result<()> {
    let k = 4;
    let mut made = 0;
    while made < count {
        let g = random_graph(rng, 9, (-20, 20), (0.6, 0.95));
        if chromatic_number(&g.underlying(), budget)? < k {
            continue;
        }
        made += 1;
        for q in [2i64, 3] {
            let s = long_edge_set(&g, k, q, budget)?;
            let need = binom((k as i64 - q + 1) as u128, 2) as usize;
            r.instances += 1;
            let ok = s.edges.len() >= need
                && s.edges.iter().all(|e| e.length() >= q && g.edge_index(*e).is_some())
                && s.extra.is_some_and(|e| e.length() >= q - 1 && !s.edges.contains(&e));
            if !ok {
                r.fail(json!({ "graph": graph_json(&g), "q": q, "set": s.edges, "extra": s.extra }));
            }
        }
    }
    r.scope = format!("{count} random ordered graphs with chromatic number >= 4");
    Ok(())
}

/// Both directions of the almost-coloring correspondence.
fn lemma_almost_coloring(
    r: &mut VerifyReport,
    rng: &mut ChaCha8Rng,
    seed: u64,
    count: usize,
    budget: SolveBudget,
) -> Result<()> {
    for g in random_corpus(seed, count) {
        let p = rng.gen_range(0..=2);
        let t = leftof_layers(&g, p).into_iter().max().unwrap_or(0);
        let pac = embedding_to_coloring(&g, p)?;
        let f: Graph = g.underlying();
        r.instances += 1;
        let valid = pac.validate(&f, p).is_ok() && pac.colors == t + 1;
        let back = coloring_to_embedding(&f, &pac, p)?;
        let spec = ConflictSpec::single([1, 0, 0, -1], p);
        let omega_back = clique_number(conflict_graph_unchecked(&back, &spec).graph(), budget)?;
        if !valid || omega_back > t || back.underlying().size() != f.size() {
            r.fail(json!({ "graph": graph_json(&g), "p": p, "t": t, "coloring": pac, "omega_back": omega_back }));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Theorem 1 witnesses

fn random_non_invariant(rng: &mut ChaCha8Rng, one_signed: bool) -> ConflictMatrix {
    loop {
        let m = random_sign_matrix(rng, 2, 3);
        let sums = m.row_sums();
        let ok = if one_signed {
            sums.iter().all(|&s| s > 0) || sums.iter().all(|&s| s < 0)
        } else {
            sums.iter().all(|&s| s != 0)
        };
        if ok {
            return m;
        }
    }
}

/// Shift witnesses for non-invariant matrices on `K_5` and random graphs.
pub fn verify_theorem1_shift(m: &ConflictMatrix, p: i64, graphs: &[OrderedGraph]) -> Result<VerifyReport> {
    let spec = ConflictSpec::new(m.clone(), p);
    let claim = format!("theorem1.shift.M={m}.p={p}");
    let (report, ms) = timed(|| {
        let mut r = VerifyReport::new(claim, format!("{} graphs", graphs.len()));
        let sums = m.row_sums();
        let one_signed = sums.iter().all(|&s| s > 0) || sums.iter().all(|&s| s < 0);
        for g in graphs {
            let empty = theorem1_witness(&spec, g, Quantity::W)?;
            r.instances += 1;
            if !conflict_graph_unchecked(&empty, &spec).conflict_pairs().is_empty() || empty.size() != g.size() {
                r.fail(json!({ "side": "W", "graph": graph_json(&empty) }));
            }
            if one_signed {
                let full = theorem1_witness(&spec, g, Quantity::A)?;
                let cg = conflict_graph_unchecked(&full, &spec);
                let m = cg.len();
                r.instances += 1;
                if cg.conflict_pairs().len() != m * (m - 1) / 2 {
                    r.fail(json!({ "side": "A", "graph": graph_json(&full) }));
                }
            }
        }
        if !one_signed {
            r.note("row sums of mixed sign: only the empty-side witness applies");
        }
        Ok(r)
    })?;
    Ok(VerifyReport { runtime_ms: ms, ..report })
}

fn theorem1_reports(opts: &SuiteOptions) -> Result<Vec<VerifyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7e01);
    let mut graphs = vec![OrderedGraph::complete((1..=5).collect()).expect("K5")];
    for _ in 0..5 {
        graphs.push(random_graph(&mut rng, 7, (-20, 20), (0.3, 0.9)));
    }
    let mut jobs = Vec::new();
    for i in 0..10 {
        jobs.push((random_non_invariant(&mut rng, i < 5), rng.gen_range(-4..=4)));
    }
    let mut reports: Vec<VerifyReport> = jobs
        .par_iter()
        .map(|(m, p)| verify_theorem1_shift(m, *p, &graphs))
        .collect::<Result<_>>()?;
    // invariant integer rows covered by the constructive cases
    let mut invariant = Vec::new();
    while invariant.len() < 10 {
        let mut row: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        row[3] = -(row[0] + row[1] + row[2]);
        if row[3].abs() > 3 || row == [0; 4] {
            continue;
        }
        let p = rng.gen_range(-3..=3);
        let spec = ConflictSpec::single(row, p);
        if classify_matrix(&spec.matrix).tag.table_row().is_some() {
            continue;
        }
        invariant.push(spec);
    }
    let k_hi = opts.k_range.1.min(7);
    for spec in &invariant {
        for k in opts.k_range.0.max(2)..=k_hi {
            match verify_upper(spec, k, opts.budget) {
                Ok(mut r) => {
                    r.claim_id = r.claim_id.replacen("table1.", "theorem1.", 1);
                    reports.push(r);
                }
                Err(VerifyError::Construction(ConstructionError::Unclassifiable)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Suites

pub const SUITES: [&str; 7] = ["table1", "table2", "lemmas", "theorem1", "nest", "density", "question15"];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub p_range: (i64, i64),
    pub k_range: (u64, u64),
    pub seed: u64,
    /// Graphs per random-corpus claim.
    pub random_count: usize,
    /// Graphs per lemma claim (the long-edge lemma uses a fifth of this).
    pub lemma_count: usize,
    pub budget: SolveBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            p_range: (-4, 4),
            k_range: (2, 9),
            seed: 42,
            random_count: 10_000,
            lemma_count: 500,
            budget: SolveBudget::default(),
        }
    }
}

/// Upper-direction specs: the 19 invariant sign rows, shift and nest.
pub fn table1_specs(p: i64) -> Vec<ConflictSpec> {
    let mut v: Vec<ConflictSpec> = invariant_sign_rows()
        .into_iter()
        .map(|r| ConflictSpec::single(r, p))
        .collect();
    v.push(ConflictSpec::new(shift_matrix(), p));
    v.push(ConflictSpec::new(nest_matrix(), p));
    v
}

/// Representative lower-direction cells `(row, p)`; each is checked for `k = 3, 4`.
pub const LOWER_CELLS: [(u8, i64); 9] = [(3, 1), (4, 2), (6, 3), (9, 2), (10, 0), (10, 1), (12, 1), (12, 0), (13, 1)];

pub fn lower_window() -> EnumerationSpec {
    EnumerationSpec::exhaustive(5, (1, 7))
}

fn in_range<T: PartialOrd>(x: T, r: (T, T)) -> bool {
    r.0 <= x && x <= r.1
}

pub fn lower_reports(opts: &SuiteOptions, corpus: &Corpus) -> Result<Vec<VerifyReport>> {
    let mut jobs = Vec::new();
    for (row, p) in LOWER_CELLS {
        for k in [3u64, 4] {
            if in_range(p, opts.p_range) && in_range(k, opts.k_range) {
                jobs.push((ConflictSpec::new(representative(row), p), k));
            }
        }
    }
    jobs.par_iter()
        .map(|(spec, k)| verify_lower(spec, *k, corpus, opts.budget))
        .collect()
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<VerifyReport>> {
    let b = opts.budget;
    let ps = opts.p_range.0..=opts.p_range.1;
    let mut reports = match name {
        "table1" => {
            let jobs: Vec<(ConflictSpec, u64)> = ps
                .flat_map(|p| table1_specs(p).into_iter())
                .flat_map(|s| (opts.k_range.0.max(2)..=opts.k_range.1).map(move |k| (s.clone(), k)))
                .collect();
            let mut out: Vec<VerifyReport> = jobs
                .par_iter()
                .map(|(s, k)| verify_upper(s, *k, b))
                .collect::<Result<_>>()?;
            let corpus = Corpus::build(&lower_window(), b)?;
            out.extend(lower_reports(opts, &corpus)?);
            out
        }
        "table2" => {
            let jobs: Vec<(u8, i64, Quantity)> = (2..=13u8)
                .flat_map(|row| ps.clone().map(move |p| (row, p)))
                .flat_map(|(row, p)| [(row, p, Quantity::A), (row, p, Quantity::W)])
                .collect();
            jobs.par_iter()
                .map(|&(row, p, q)| verify_inversion(row, p, q, 40))
                .collect::<Result<_>>()?
        }
        "lemmas" => LEMMA_IDS
            .par_iter()
            .map(|id| {
                let count = if *id == "6" { opts.lemma_count / 5 } else { opts.lemma_count };
                verify_lemma_suite(id, opts.seed, count, b)
            })
            .collect::<Result<_>>()?,
        "theorem1" => theorem1_reports(opts)?,
        "nest" => {
            let nest = ConflictSpec::new(nest_matrix(), 1);
            let mut out: Vec<VerifyReport> = (opts.k_range.0.max(2)..=opts.k_range.1.min(8))
                .into_par_iter()
                .map(|k| verify_upper(&nest, k, b))
                .collect::<Result<_>>()?;
            let rnd = EnumerationSpec::random(opts.seed, opts.random_count);
            let corpus = Corpus::build(&rnd, b)?;
            for k in [3u64, 4] {
                if in_range(k, opts.k_range) {
                    out.push(verify_lower(&nest, k, &corpus, b)?);
                }
            }
            out
        }
        "density" => {
            let rnd = EnumerationSpec::random(opts.seed, opts.random_count);
            let corpus = enumerate(&rnd)?;
            let exhaustive = EnumerationSpec::exhaustive(6, (1, 6));
            let small = enumerate(&exhaustive)?;
            let mut out = Vec::new();
            for p in [0i64, -1, -2] {
                if in_range(p, opts.p_range) {
                    out.push(verify_density(p, &corpus, &rnd.scope(), b)?);
                    let mut r = verify_density(p, &small, &exhaustive.scope(), b)?;
                    r.claim_id.push_str(".exhaustive");
                    out.push(r);
                }
            }
            out
        }
        "question15" => {
            let corpus = Corpus::build(&lower_window(), b)?;
            let mut jobs = Vec::new();
            for (row, p) in LOWER_CELLS {
                for k in [3u64, 4] {
                    if in_range(p, opts.p_range) && in_range(k, opts.k_range) {
                        jobs.push((ConflictSpec::new(representative(row), p), k));
                    }
                }
            }
            jobs.par_iter()
                .map(|(s, k)| question15_search(s, *k, &corpus, b))
                .collect::<Result<_>>()?
        }
        other => return Err(VerifyError::UnknownSuite(other.into())),
    };
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(reports)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub total: usize,
    pub pass: usize,
    pub partial: usize,
    pub fail: usize,
}

pub fn summarize(suite: &str, reports: &[VerifyReport]) -> SuiteSummary {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    SuiteSummary {
        suite: suite.into(),
        total: reports.len(),
        pass: count(Status::Pass),
        partial: count(Status::Partial),
        fail: count(Status::Fail),
    }
}
