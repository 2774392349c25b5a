use std::collections::BTreeSet;

use proptest::prelude::*;

use ordconflict::formulas::{closed_form_x_cli, closed_form_x_ind, f_largest_k, FormulaValue};
use ordconflict::params::{degeneracy_spec, page_spec, queue_spec};
use ordconflict::solvers::{chromatic_number, clique_number, independence_number};
use ordconflict::transforms::invariant_sign_rows;
use ordconflict::{
    build_conflict_graph, nest_matrix, ConflictMatrix, shift_matrix, ConflictSpec, Graph, OrderedGraph, SolveBudget,
};

fn ordered_graph(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = OrderedGraph> {
    prop::collection::btree_set(lo..=hi, 2..=max_n)
        .prop_flat_map(|vs: BTreeSet<i64>| {
            let n = vs.len();
            (Just(vs), prop::collection::vec(any::<bool>(), n * (n - 1) / 2))
        })
        .prop_filter_map("needs an edge", |(vs, bits)| {
            let vs: Vec<i64> = vs.into_iter().collect();
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    if it.next().unwrap() {
                        edges.push((vs[i], vs[j]));
                    }
                }
            }
            (!edges.is_empty()).then(|| OrderedGraph::new(vs, edges).unwrap())
        })
}

fn spec() -> impl Strategy<Value = ConflictSpec> {
    let rows = prop::collection::vec(prop::array::uniform4(-2i64..=2), 1..=2);
    (rows, -3i64..=3).prop_map(|(r, p)| ConflictSpec::new(ConflictMatrix::new(r).unwrap(), p))
}

fn is_clique(g: &Graph, set: u32) -> bool {
    let n = g.order();
    (0..n).all(|i| set >> i & 1 == 0 || (i + 1..n).all(|j| set >> j & 1 == 0 || g.has_edge(i, j)))
}

fn brute_omega(g: &Graph) -> usize {
    (0u32..1 << g.order())
        .filter(|&s| is_clique(g, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn brute_chi(g: &Graph) -> usize {
    let n = g.order();
    (1..=n)
        .find(|&c| {
            let mut col = vec![0usize; n];
            loop {
                if g.edges().iter().all(|&(a, b)| col[a] != col[b]) {
                    return true;
                }
                let mut i = 0;
                while i < n && col[i] == c - 1 {
                    col[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                col[i] += 1;
            }
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solvers_match_subset_enumeration(g in ordered_graph(6, -8, 8), s in spec()) {
        let cg = build_conflict_graph(&g, &s).unwrap();
        prop_assume!(cg.len() <= 18);
        let b = SolveBudget::default();
        let h = cg.graph();
        prop_assert_eq!(clique_number(h, b).unwrap(), brute_omega(h));
        prop_assert_eq!(independence_number(h, b).unwrap(), brute_omega(&h.complement()));
        prop_assert_eq!(independence_number(h, b).unwrap(), clique_number(&h.complement(), b).unwrap());
    }

    #[test]
    fn chromatic_number_matches_enumeration(g in ordered_graph(7, 0, 10)) {
        let u = g.underlying();
        prop_assert_eq!(chromatic_number(&u, SolveBudget::default()).unwrap(), brute_chi(&u));
    }

    #[test]
    fn conflict_graph_of_subgraph_is_induced(g in ordered_graph(7, -10, 10), s in spec(), pick in any::<prop::sample::Index>()) {
        let e = g.edges()[pick.index(g.size())];
        let full = build_conflict_graph(&g, &s).unwrap();
        let h = g.without_edge(e);
        prop_assume!(h.size() > 0);
        let sub = build_conflict_graph(&h, &s).unwrap();
        let idx: Vec<usize> = h.edges().iter().map(|&f| g.edge_index(f).unwrap()).collect();
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                prop_assert_eq!(sub.conflicts(i, j), full.conflicts(idx[i], idx[j]));
            }
        }
        let b = SolveBudget::default();
        prop_assert!(clique_number(sub.graph(), b).unwrap() <= clique_number(full.graph(), b).unwrap());
        prop_assert!(independence_number(sub.graph(), b).unwrap() <= independence_number(full.graph(), b).unwrap());
    }

    #[test]
    fn translation_invariant_rows_ignore_shifts(g in ordered_graph(6, -10, 10), r in prop::sample::select(invariant_sign_rows()), p in -3i64..=3, t in -50i64..=50) {
        let s = ConflictSpec::single(r, p);
        let a = build_conflict_graph(&g, &s).unwrap();
        let b = build_conflict_graph(&g.shifted(t).unwrap(), &s).unwrap();
        prop_assert_eq!(a.graph(), b.graph());
    }
}

/// Compaction onto consecutive integers never increases the parameter
/// conflict graphs' clique or chromatic numbers.
#[test]
fn compaction_never_increases_parameter_conflicts() {
    let b = SolveBudget::default();
    let specs = [
        ("degeneracy", degeneracy_spec()),
        ("page", page_spec()),
        ("queue", queue_spec()),
        ("arch", ConflictSpec::single([1, 0, 0, -1], 1)),
        ("interval", ConflictSpec::single([1, 0, 0, -1], 0)),
        ("band-2", ConflictSpec::single([-1, 1, 0, 0], 2)),
        ("band-3", ConflictSpec::single([-1, 1, 0, 0], 3)),
    ];
    for (name, s) in specs {
        let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig {
            cases: 1000,
            ..ProptestConfig::default()
        });
        runner
            .run(&ordered_graph(7, -15, 15), |g| {
                let c = g.compacted();
                let before = build_conflict_graph(&g, &s).unwrap();
                let after = build_conflict_graph(&c, &s).unwrap();
                let (wb, wa) = (clique_number(before.graph(), b).unwrap(), clique_number(after.graph(), b).unwrap());
                prop_assert!(wa <= wb, "{name}: omega {wa} > {wb}");
                let (cb, ca) = (chromatic_number(before.graph(), b).unwrap(), chromatic_number(after.graph(), b).unwrap());
                prop_assert!(ca <= cb, "{name}: chi {ca} > {cb}");
                Ok(())
            })
            .unwrap();
    }
}

/// `K_{f(a)}` has at most `a` edges, so `X_ind(M, p, a) >= f(a)` and
/// `X_cli(M, p, w) >= f(w)` for every family.
#[test]
fn chromatic_sups_dominate_f() {
    let at_least = |v: &FormulaValue, f: u64| match v {
        FormulaValue::Exact { value } => *value >= f,
        FormulaValue::Bounds { upper, .. } => *upper >= num_rational::Ratio::from_integer(f as i64),
        FormulaValue::Infinite | FormulaValue::Unknown => true,
    };
    for p in -4..=4 {
        let mut specs: Vec<ConflictSpec> = invariant_sign_rows().into_iter().map(|r| ConflictSpec::single(r, p)).collect();
        specs.push(ConflictSpec::new(shift_matrix(), p));
        specs.push(ConflictSpec::new(nest_matrix(), p));
        for s in &specs {
            for x in 1..=30 {
                let f = f_largest_k(x).unwrap();
                let xi = closed_form_x_ind(s, x).unwrap().value;
                let xc = closed_form_x_cli(s, x).unwrap().value;
                assert!(at_least(&xi, f), "X_ind {} p={p} a={x}: {xi} < {f}", s.matrix);
                assert!(at_least(&xc, f), "X_cli {} p={p} w={x}: {xc} < {f}", s.matrix);
            }
        }
    }
}
