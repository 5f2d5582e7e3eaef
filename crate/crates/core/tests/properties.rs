use itertools::Itertools;
use proptest::prelude::*;

use preclusion::generators::hypercube;
use preclusion::io::{emit, parse, Format};
use preclusion::matching::{
    brute_force_matching_number, engine_for, matching_number, matching_number_without, max_matching,
    max_matching_lexmin, Engine, Matching,
};
use preclusion::preclusion::{brute_force_solve, satisfies, solve, trivial_mp_set, ProblemKind, SolveOptions, Value};
use preclusion::suites::matching_oracle_suite;
use preclusion::{EdgeSet, Graph};

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
            let len = pairs.len();
            (Just(n), proptest::sample::subsequence(pairs, 0..=len.min(max_m)))
        })
        .prop_map(|(n, edges)| Graph::from_edges(n, edges).unwrap())
}

fn with_detected_bipartition(g: Graph) -> Graph {
    match g.two_colouring() {
        Some(sides) => g.with_bipartition(sides).unwrap(),
        None => g,
    }
}

fn arb_subset(g: &Graph) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), g.m())
}

fn to_set(g: &Graph, mask: &[bool]) -> EdgeSet {
    g.edge_set(mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)).unwrap()
}

fn vertex_cover_brute(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&mask| g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn max_matching_agrees_with_brute_force(g in arb_graph(12, 66)) {
        let oracle = brute_force_matching_number(&g).unwrap();
        let m = max_matching(&g);
        prop_assert_eq!(m.size(), oracle);
        prop_assert!(Matching::from_edge_set(&g, m.edges().clone()).is_some());
        // Same graph through Hopcroft–Karp when it is bipartite.
        let bg = with_detected_bipartition(g.clone());
        if engine_for(&bg) == Engine::HopcroftKarp {
            prop_assert_eq!(matching_number(&bg), oracle);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lexmin_matching_is_maximum_and_minimal(g in arb_graph(9, 14)) {
        let lex = max_matching_lexmin(&g);
        prop_assert_eq!(lex.size(), matching_number(&g));
        // Exhaustive: the first maximum matching in lexicographic order.
        let first = (0..g.m())
            .combinations(lex.size())
            .find(|ids| Matching::from_edge_set(&g, g.edge_set(ids.iter().copied()).unwrap()).is_some())
            .unwrap();
        prop_assert_eq!(lex.edge_ids(), first);
    }

    #[test]
    fn konig_duality(g in arb_graph(12, 20)) {
        if let Some(sides) = g.two_colouring() {
            let bg = g.with_bipartition(sides).unwrap();
            prop_assert_eq!(matching_number(&bg), vertex_cover_brute(&bg));
        }
    }

    #[test]
    fn deletion_never_increases_nu((g, mask) in arb_graph(10, 20).prop_flat_map(|g| { let s = arb_subset(&g); (Just(g), s) })) {
        let f = to_set(&g, &mask);
        prop_assert!(matching_number_without(&g, &f) <= matching_number(&g));
        let (h, _) = g.delete_edges(&f).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(matching_number(&h), matching_number_without(&g, &f));
    }

    #[test]
    fn components_refine_under_deletion(
        (g, a, b) in arb_graph(12, 24).prop_flat_map(|g| { let x = arb_subset(&g); let y = arb_subset(&g); (Just(g), x, y) })
    ) {
        let fa = to_set(&g, &a);
        let mut fab = fa.clone();
        fab.union_with(&to_set(&g, &b));
        let coarse = g.components_without(&fa);
        let fine = g.components_without(&fab);
        prop_assert!(fine.min_size <= coarse.min_size);
        for part in &fine.components {
            prop_assert!(coarse.components.iter().any(|c| part.iter().all(|v| c.contains(v))));
        }
        let total: usize = fine.components.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.n());
    }

    #[test]
    fn encodings_round_trip(g in arb_graph(70, 60)) {
        let g = with_detected_bipartition(g);
        for format in [Format::Graph6, Format::EdgeList] {
            let back = parse(format, &emit(&g, format)).unwrap();
            prop_assert!(back.same_edges(&g));
        }
        prop_assert_eq!(parse(Format::Json, &emit(&g, Format::Json)).unwrap(), g);
    }

    #[test]
    fn handshake(g in arb_graph(20, 60)) {
        let degrees: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.m());
    }
}

fn kinds() -> Vec<ProblemKind> {
    vec![
        ProblemKind::Mp,
        ProblemKind::Mps { s: 1 },
        ProblemKind::Mps { s: 2 },
        ProblemKind::Mps { s: 3 },
        ProblemKind::Ak,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// Deterministic solve returns exactly the oracle's certificate: same
    /// value and the same lexicographically first witness.
    #[test]
    fn solver_matches_oracle(g in arb_graph(9, 14)) {
        for kind in kinds() {
            if kind == ProblemKind::Ak && g.n() % 2 == 1 {
                prop_assert!(solve(&g, kind, &SolveOptions::default()).is_err());
                continue;
            }
            let sol = solve(&g, kind, &SolveOptions::default()).unwrap();
            let oracle = brute_force_solve(&g, kind).unwrap();
            prop_assert_eq!(&sol.certificate, &oracle, "kind {}", kind);
            if let Some(w) = sol.certificate.witness_set(&g) {
                prop_assert!(satisfies(&g, kind, &w).unwrap());
            }
        }
    }

    #[test]
    fn mps_zero_is_mp(g in arb_graph(9, 14)) {
        let a = solve(&g, ProblemKind::Mp, &SolveOptions::default()).unwrap().certificate;
        let b = solve(&g, ProblemKind::Mps { s: 0 }, &SolveOptions::default()).unwrap().certificate;
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn trivial_upper_bound(g in arb_graph(10, 16)) {
        if g.n() % 2 == 0 {
            let value = solve(&g, ProblemKind::Mp, &SolveOptions::default()).unwrap().certificate.value;
            if value != Value::Infinite {
                let delta = g.min_degree().unwrap();
                prop_assert!(value <= Value::Finite(delta));
                let v = (0..g.n()).min_by_key(|&v| g.degree(v)).unwrap();
                prop_assert!(satisfies(&g, ProblemKind::Mp, &trivial_mp_set(&g, v).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn parallel_and_budgeted_runs_agree(g in arb_graph(10, 18)) {
        for kind in [ProblemKind::Mp, ProblemKind::Mps { s: 1 }] {
            let one = solve(&g, kind, &SolveOptions::default()).unwrap();
            let four = solve(&g, kind, &SolveOptions::default().with_jobs(4)).unwrap();
            prop_assert_eq!(&one, &four);
            let loose = solve(&g, kind, &SolveOptions::default().nondeterministic().with_jobs(3)).unwrap();
            prop_assert_eq!(loose.certificate.value, one.certificate.value);
            if let Value::Finite(k) = one.certificate.value {
                let at = solve(&g, kind, &SolveOptions::default().with_budget(k)).unwrap();
                prop_assert_eq!(at.certificate.value, Value::Finite(k));
                if k > 0 {
                    let below = solve(&g, kind, &SolveOptions::default().with_budget(k - 1)).unwrap();
                    prop_assert!(matches!(below.certificate.value, Value::GreaterThan(_) | Value::Infinite));
                }
            }
        }
    }
}

#[test]
fn seeded_random_matching_corpus() {
    let report = matching_oracle_suite(2024, 500, 12).unwrap();
    assert!(report.passed, "{:?}", report.failures);
    assert!(report.non_bipartite > 100, "only {} non-bipartite graphs", report.non_bipartite);
}

#[test]
fn hypercube_shape() {
    for n in 1..=10 {
        let q = hypercube(n).unwrap();
        assert_eq!(q.n(), 1 << n);
        assert_eq!(q.m(), n << (n - 1));
        assert!((0..q.n()).all(|v| q.degree(v) == n));
        assert!(q.is_connected());
        assert!(q.bipartition().is_some());
        assert!(q.two_colouring().is_some());
    }
}
