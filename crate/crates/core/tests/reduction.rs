use proptest::prelude::*;

use preclusion::generators::{complete_bipartite, cycle, random_bipartite_with_pm};
use preclusion::matching::has_perfect_matching;
use preclusion::preclusion::{is_matching_preclusion_set, satisfies, ProblemKind};
use preclusion::reduction::{backward_extract, build_reduction, forward_witness, verify_equivalence};
use preclusion::{Graph, Side};

fn small_sources() -> Vec<Graph> {
    let mut out = vec![
        Graph::from_edges(2, [(0, 1)]).unwrap(),
        cycle(4).unwrap(),
        complete_bipartite(2, 2).unwrap(),
    ];
    // Every bipartite graph on U = {0, 1}, V = {2, 3} with a perfect matching.
    let all = [(0, 2), (0, 3), (1, 2), (1, 3)];
    for mask in 1u32..16 {
        let edges = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| all[i]);
        let g = Graph::from_edges(4, edges)
            .unwrap()
            .with_bipartition(vec![Side::Left, Side::Left, Side::Right, Side::Right])
            .unwrap();
        if has_perfect_matching(&g) {
            out.push(g);
        }
    }
    out
}

/// Every anti-Kekulé and s-restricted set B' of each small gadget, at every
/// budget k ≥ |B'| − 1, extracts to a matching preclusion set of size ≤ k.
#[test]
fn backward_extraction_is_exhaustively_sound() {
    let mut extracted = 0;
    for g in small_sources() {
        let r = build_reduction(&g).unwrap();
        let gadget = r.gadget();
        assert!(gadget.m() <= 16);
        let kinds = [ProblemKind::Ak, ProblemKind::Mps { s: 1 }, ProblemKind::Mps { s: 2 }];
        for mask in 0u32..1 << gadget.m() {
            let b_prime = gadget
                .edge_set((0..gadget.m()).filter(|i| mask >> i & 1 == 1))
                .unwrap();
            for kind in kinds {
                if !satisfies(gadget, kind, &b_prime).unwrap() {
                    continue;
                }
                for k in b_prime.len().saturating_sub(1)..=g.m() {
                    let x = backward_extract(&r, &b_prime, k, kind).unwrap();
                    assert!(x.set.len() <= k, "{kind} k={k} {:?}", x.case);
                    assert!(is_matching_preclusion_set(&g, &x.set).unwrap());
                    extracted += 1;
                }
            }
        }
    }
    assert!(extracted > 1000, "{extracted}");
}

#[test]
fn extraction_rejects_bad_input() {
    let g = cycle(4).unwrap();
    let r = build_reduction(&g).unwrap();
    let empty = r.gadget().empty_edge_set();
    assert!(backward_extract(&r, &empty, 3, ProblemKind::Ak).is_err());
    assert!(backward_extract(&r, &empty, 3, ProblemKind::Mp).is_err());
    let full = r.gadget().full_edge_set();
    assert!(backward_extract(&r, &full, 0, ProblemKind::Ak).is_err());
}

#[test]
fn equivalence_on_fixed_sources() {
    for g in small_sources() {
        for k in 0..=g.m() {
            let check = verify_equivalence(&g, k, &[1, 2]).unwrap();
            assert!(check.agree, "{check:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gadget_structure(t in 1usize..=6, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_bipartite_with_pm(t, p, seed).unwrap();
        let r = build_reduction(&g).unwrap();
        let gadget = r.gadget();
        prop_assert_eq!(gadget.n(), 2 * t + 4);
        prop_assert_eq!(gadget.m(), g.m() + 2 * t + 4);
        prop_assert!(gadget.bipartition().is_some());
        prop_assert!(gadget.is_connected());
        prop_assert!(has_perfect_matching(gadget));
        let a = r.added();
        prop_assert_eq!(gadget.edge(r.edge_e()), (a.u_double_prime, a.v_double_prime));
        prop_assert_eq!(gadget.edge(r.edge_e_prime()), (a.u_prime, a.v_prime));
        prop_assert_eq!(gadget.degree(a.u_double_prime), 2);
        prop_assert_eq!(gadget.degree(a.v_double_prime), 2);
        for e in 0..g.m() {
            let ge = r.gadget_edge(e);
            prop_assert_eq!(gadget.edge(ge), g.edge(e));
            prop_assert_eq!(r.source_edge(ge), Some(e));
        }
        prop_assert_eq!(r.source_edge(r.edge_e()), None);
        prop_assert_eq!(r.map_budget(3), 4);
    }

    #[test]
    fn forward_witness_from_stars(t in 1usize..=4, p in 0.0f64..0.7, seed in any::<u64>()) {
        let g = random_bipartite_with_pm(t, p, seed).unwrap();
        let r = build_reduction(&g).unwrap();
        for v in 0..g.n() {
            let star = g.edge_set(g.neighbors(v).iter().map(|&(_, e)| e)).unwrap();
            let b_prime = forward_witness(&r, &star).unwrap();
            prop_assert_eq!(b_prime.len(), star.len() + 1);
            prop_assert!(satisfies(r.gadget(), ProblemKind::Ak, &b_prime).unwrap());
            let mps1 = ProblemKind::Mps { s: 1 };
            prop_assert!(satisfies(r.gadget(), mps1, &b_prime).unwrap());
        }
    }
}
