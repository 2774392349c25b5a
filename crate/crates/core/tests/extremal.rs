use ordconflict::constructions::extremal_complete_graph;
use ordconflict::formulas::{closed_form_value, Quantity};
use ordconflict::solvers::{clique_number, independence_number};
use ordconflict::transforms::invariant_sign_rows;
use ordconflict::{build_conflict_graph, nest_matrix, shift_matrix, ConflictSpec, SolveBudget};

fn specs(p: i64) -> Vec<ConflictSpec> {
    let mut v: Vec<ConflictSpec> = invariant_sign_rows().into_iter().map(|r| ConflictSpec::single(r, p)).collect();
    v.push(ConflictSpec::new(shift_matrix(), p));
    v.push(ConflictSpec::new(nest_matrix(), p));
    v
}

fn measured(spec: &ConflictSpec, k: u64, q: Quantity) -> usize {
    let g = extremal_complete_graph(spec, k, q).unwrap();
    assert!(g.is_complete() && g.order() == k as usize);
    let cg = build_conflict_graph(&g, spec).unwrap();
    let b = SolveBudget::default();
    match q {
        Quantity::A => independence_number(cg.graph(), b).unwrap(),
        Quantity::W => clique_number(cg.graph(), b).unwrap(),
    }
}

#[test]
fn extremal_embeddings_attain_closed_forms() {
    let mut failures = Vec::new();
    for p in -4..=4 {
        for spec in specs(p) {
            for k in 2..=9u64 {
                for q in [Quantity::A, Quantity::W] {
                    let f = closed_form_value(&spec, k, q).unwrap();
                    let got = measured(&spec, k, q);
                    if !f.value.admits(got as u64) {
                        failures.push(format!("{} p={p} k={k} {q:?}: formula {} solver {got}", spec.matrix, f.value));
                    }
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
