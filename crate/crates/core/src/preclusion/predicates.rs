use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexId};
use crate::matching::{matching_number, matching_number_without};

use super::certificate::{InfinityReason, ProblemKind};

/// Largest matching size that still counts as precluded: ⌊n/2⌋ - 1.
/// `None` when no graph on `n` vertices can be precluded (n < 2).
pub(crate) fn precluded_bound(n: usize) -> Option<usize> {
    (n / 2).checked_sub(1)
}

fn precluded(g: &Graph, f: &EdgeSet) -> bool {
    match precluded_bound(g.n()) {
        Some(bound) => matching_number_without(g, f) <= bound,
        None => false,
    }
}

/// `g - f` has neither a perfect nor an almost perfect matching.
pub fn is_matching_preclusion_set(g: &Graph, f: &EdgeSet) -> Result<bool> {
    g.check_tag(f)?;
    Ok(precluded(g, f))
}

/// Matching preclusion set whose removal leaves every component with at
/// least `s + 1` vertices.
pub fn is_s_restricted_set(g: &Graph, f: &EdgeSet, s: usize) -> Result<bool> {
    g.check_tag(f)?;
    Ok(g.components_without(f).min_size > s && precluded(g, f))
}

/// `g - f` is connected and has no perfect matching. Requires even order.
pub fn is_anti_kekule_set(g: &Graph, f: &EdgeSet) -> Result<bool> {
    g.check_tag(f)?;
    require_even_order(g)?;
    Ok(g.components_without(f).connected && precluded(g, f))
}

pub fn satisfies(g: &Graph, kind: ProblemKind, f: &EdgeSet) -> Result<bool> {
    match kind {
        ProblemKind::Mp => is_matching_preclusion_set(g, f),
        ProblemKind::Mps { s } => is_s_restricted_set(g, f, s),
        ProblemKind::Ak => is_anti_kekule_set(g, f),
    }
}

pub(crate) fn require_even_order(g: &Graph) -> Result<()> {
    if g.n().is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "anti-Kekulé sets need even order, graph has {} vertices",
            g.n()
        )))
    }
}

/// The `+inf` convention: a graph with nothing to preclude has value
/// infinity rather than 0. Also validates the anti-Kekulé precondition.
pub(crate) fn infinity_by_convention(g: &Graph, kind: ProblemKind) -> Result<Option<InfinityReason>> {
    if kind == ProblemKind::Ak {
        require_even_order(g)?;
    }
    let Some(bound) = precluded_bound(g.n()) else {
        return Ok(Some(InfinityReason::NoValidSet));
    };
    if matching_number(g) <= bound {
        return Ok(Some(InfinityReason::NoMatchingToPreclude));
    }
    Ok(None)
}

/// All edges incident to `v`: a trivial matching preclusion set.
pub fn trivial_mp_set(g: &Graph, v: VertexId) -> Result<EdgeSet> {
    g.check_vertex(v)?;
    g.edge_set(g.neighbors(v).iter().map(|&(_, e)| e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, hypercube, petersen};

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn mp_predicate() {
        let g = k2();
        assert!(is_matching_preclusion_set(&g, &g.full_edge_set()).unwrap());
        let q = hypercube(3).unwrap();
        for a in 0..q.m() {
            for b in a + 1..q.m() {
                assert!(!is_matching_preclusion_set(&q, &q.edge_set([a, b]).unwrap()).unwrap());
            }
        }
        let c4 = cycle(4).unwrap();
        let opposite = c4.edge_set_from_pairs([(0, 1), (2, 3)]).unwrap();
        assert!(!is_matching_preclusion_set(&c4, &opposite).unwrap());
        assert!(!is_s_restricted_set(&c4, &opposite, 1).unwrap());
    }

    #[test]
    fn s_restricted_rejects_isolated_vertex() {
        let q = hypercube(3).unwrap();
        let star = trivial_mp_set(&q, 0).unwrap();
        assert!(is_matching_preclusion_set(&q, &star).unwrap());
        assert!(!is_s_restricted_set(&q, &star, 1).unwrap());
        assert!(is_s_restricted_set(&q, &star, 0).unwrap());
    }

    #[test]
    fn anti_kekule_predicate() {
        let c6 = cycle(6).unwrap();
        for e in 0..6 {
            assert!(!is_anti_kekule_set(&c6, &c6.edge_set([e]).unwrap()).unwrap());
        }
        let g = k2();
        assert!(!is_anti_kekule_set(&g, &g.full_edge_set()).unwrap());
        let c5 = cycle(5).unwrap();
        assert!(matches!(
            is_anti_kekule_set(&c5, &c5.empty_edge_set()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let q = hypercube(3).unwrap();
        let p = petersen();
        assert_eq!(is_matching_preclusion_set(&q, &p.empty_edge_set()), Err(Error::TagMismatch));
        assert_eq!(is_s_restricted_set(&q, &p.empty_edge_set(), 1), Err(Error::TagMismatch));
    }

    #[test]
    fn trivial_sets() {
        assert_eq!(trivial_mp_set(&hypercube(3).unwrap(), 5).unwrap().len(), 3);
        assert_eq!(trivial_mp_set(&petersen(), 7).unwrap().len(), 3);
        assert_eq!(trivial_mp_set(&k2(), 0).unwrap().to_vec(), vec![0]);
        assert!(trivial_mp_set(&k2(), 2).is_err());
    }

    #[test]
    fn odd_order_uses_almost_perfect_matchings() {
        // P3 has an almost perfect matching; deleting one edge keeps one.
        let p3 = crate::generators::path(3).unwrap();
        assert!(!is_matching_preclusion_set(&p3, &p3.edge_set([0]).unwrap()).unwrap());
        assert!(is_matching_preclusion_set(&p3, &p3.full_edge_set()).unwrap());
    }
}
