use preclusion::generators::{complete, cycle, hypercube, petersen};
use preclusion::hypercube::{
    compute_v_e, incident_pair_set, trivial_conditional_set, two_paths, verify_edge_cut_property,
    verify_optimal_conditional_sets_trivial, verify_optimal_mp_sets_are_stars, verify_trivial_sets_connected,
    TwoPath,
};
use preclusion::preclusion::{satisfies, solve, ProblemKind, SolveOptions, Value};

#[test]
fn v_e_values() {
    assert_eq!(compute_v_e(&cycle(6).unwrap()), Some(2));
    assert_eq!(compute_v_e(&complete(4).unwrap()), Some(3));
    assert_eq!(compute_v_e(&hypercube(3).unwrap()), Some(4));
    assert_eq!(compute_v_e(&hypercube(5).unwrap()), Some(8));
    assert_eq!(compute_v_e(&petersen()), Some(4));
}

#[test]
fn two_path_validation() {
    let q = hypercube(3).unwrap();
    assert!(TwoPath::new(&q, 0, 1, 3).is_ok());
    assert!(TwoPath::new(&q, 0, 1, 0).is_err());
    assert!(TwoPath::new(&q, 0, 3, 1).is_err());
    // 8 middles, C(3, 2) pairs each.
    assert_eq!(two_paths(&q).len(), 24);
}

#[test]
fn trivial_sets_on_small_cubes() {
    for n in 3..=6 {
        let report = verify_trivial_sets_connected(n).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.two_paths, (1 << n) * n * (n - 1) / 2);
    }
    let q = hypercube(4).unwrap();
    for p in two_paths(&q).into_iter().take(20) {
        let f = trivial_conditional_set(&q, p).unwrap();
        assert_eq!(f.len(), 2 * 4 - 2);
        assert!(satisfies(&q, ProblemKind::Mps { s: 1 }, &f).unwrap());
    }
}

#[test]
fn q3_optimal_sets() {
    let stars = verify_optimal_mp_sets_are_stars(3).unwrap();
    assert!(stars.passed);
    assert_eq!(stars.preclusion_sets, 8);
    let conditional = verify_optimal_conditional_sets_trivial(3, false).unwrap();
    assert!(conditional.passed, "{conditional:?}");
    assert_eq!(conditional.subsets_checked, 495);
}

#[test]
fn edge_cut_literal_form_fails_and_q3_has_three_dimension_cuts() {
    let report = verify_edge_cut_property(3, None, 0).unwrap();
    assert!(report.literal_counterexample.reproduced);
    let q = hypercube(3).unwrap();
    assert_eq!(report.corrected_form.counterexample_count, 3);
    for cut in &report.corrected_form.counterexamples {
        let bit = q.edge(cut[0]).0 ^ q.edge(cut[0]).1;
        assert!(cut.iter().all(|&e| q.edge(e).0 ^ q.edge(e).1 == bit));
        assert!(cut.iter().all(|&e| incident_pair_set(&q, e).unwrap().len() == 4));
    }
}

#[test]
fn cube_values() {
    let opts = SolveOptions::default();
    let q3 = hypercube(3).unwrap();
    let expect = [(0, 3), (1, 4), (2, 4), (3, 4)];
    for (s, v) in expect {
        let c = solve(&q3, ProblemKind::Mps { s }, &opts).unwrap().certificate;
        assert_eq!(c.value, Value::Finite(v), "s = {s}");
    }
    let c = solve(&q3, ProblemKind::Ak, &opts).unwrap().certificate;
    assert!(c.value.finite().is_some());
}
