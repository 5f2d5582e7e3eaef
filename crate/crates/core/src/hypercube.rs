//! Hypercube-specific constructions: vertex and edge neighbourhood cuts,
//! trivial conditional preclusion sets of 2-paths, the v_e bound, and the
//! exhaustive/sampled checks behind mp_s(Q_n) = 2n - 2.

use std::collections::HashSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::hypercube;
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};
use crate::preclusion::{
    is_s_restricted_set, solve, PreclusionCertificate, ProblemKind, SolveOptions, SolveStats, Value,
};

/// Cap on counterexamples kept in reports.
const MAX_REPORTED: usize = 16;

/// A path u - w - v with u ≠ v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoPath {
    pub u: VertexId,
    pub w: VertexId,
    pub v: VertexId,
}

impl TwoPath {
    pub fn new(g: &Graph, u: VertexId, w: VertexId, v: VertexId) -> Result<TwoPath> {
        for x in [u, w, v] {
            g.check_vertex(x)?;
        }
        if u == v || !g.adjacent(u, w) || !g.adjacent(w, v) {
            return Err(Error::Parameter(format!("{u}-{w}-{v} is not a 2-path")));
        }
        Ok(TwoPath { u, w, v })
    }
}

/// All 2-paths, by middle vertex and then by unordered neighbour pair.
pub fn two_paths(g: &Graph) -> Vec<TwoPath> {
    (0..g.n())
        .flat_map(|w| {
            g.neighbors(w)
                .iter()
                .tuple_combinations()
                .map(move |(&(u, _), &(v, _))| TwoPath { u, w, v })
        })
        .collect()
}

/// I(x): every edge incident to x.
pub fn incident_set(g: &Graph, x: VertexId) -> Result<EdgeSet> {
    crate::preclusion::trivial_mp_set(g, x)
}

/// I(uv) = I(u) ∪ I(v) minus uv itself.
pub fn incident_pair_set(g: &Graph, uv: EdgeId) -> Result<EdgeSet> {
    g.check_edge(uv)?;
    let (u, v) = g.edge(uv);
    let mut set = incident_set(g, u)?;
    set.union_with(&incident_set(g, v)?);
    set.remove(uv);
    Ok(set)
}

/// (I(u) ∪ I(v)) minus {uw, wv}.
pub fn trivial_conditional_set(g: &Graph, p: TwoPath) -> Result<EdgeSet> {
    let p = TwoPath::new(g, p.u, p.w, p.v)?;
    let mut set = incident_set(g, p.u)?;
    set.union_with(&incident_set(g, p.v)?);
    set.remove(g.edge_between(p.u, p.w).unwrap());
    set.remove(g.edge_between(p.w, p.v).unwrap());
    Ok(set)
}

/// min over 2-paths uwv of d(u) + d(v) - 2 - [u ~ v]; `None` without
/// 2-paths.
pub fn compute_v_e(g: &Graph) -> Option<usize> {
    two_paths(g)
        .into_iter()
        .map(|p| g.degree(p.u) + g.degree(p.v) - 2 - usize::from(g.adjacent(p.u, p.v)))
        .min()
}

pub fn check_connected_after(g: &Graph, f: &EdgeSet) -> Result<bool> {
    g.check_tag(f)?;
    Ok(g.components_without(f).connected)
}

fn sorted_key(set: &EdgeSet) -> Vec<EdgeId> {
    set.to_vec()
}

fn require_dimension(n: usize, max: usize, what: &str) -> Result<()> {
    if n < 3 {
        return Err(Error::Parameter(format!("{what} needs n >= 3, got {n}")));
    }
    if n > max {
        return Err(Error::Budget(format!("{what} is limited to n <= {max}, got {n}")));
    }
    Ok(())
}

/// Enumerates every k-subset of `0..m` in parallel, split by the smallest
/// element, and returns those accepted by `keep` in lexicographic order.
fn subsets_where<F>(m: usize, k: usize, keep: F) -> Vec<Vec<EdgeId>>
where
    F: Fn(&[EdgeId]) -> bool + Sync,
{
    if k == 0 {
        return if keep(&[]) { vec![vec![]] } else { vec![] };
    }
    (0..m)
        .into_par_iter()
        .flat_map_iter(|first| {
            let keep = &keep;
            (first + 1..m).combinations(k - 1).filter_map(move |rest| {
                let mut subset = Vec::with_capacity(k);
                subset.push(first);
                subset.extend(rest);
                keep(&subset).then_some(subset)
            })
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalSetsReport {
    pub n: usize,
    pub size: usize,
    pub subsets_checked: u64,
    pub conditional_sets: usize,
    pub non_trivial: Vec<Vec<EdgeId>>,
    pub non_trivial_count: usize,
    pub distinct_trivial_sets: usize,
    /// Trivial sets that fail to be conditional preclusion sets.
    pub failing_trivial: usize,
    pub smaller_subsets_checked: u64,
    pub smaller_conditional_sets: usize,
    pub passed: bool,
}

/// Every conditional (s = 1) matching preclusion set of size 2n - 2 in Q_n
/// is the trivial set of some 2-path; every trivial set is one; and no
/// smaller set is one. Exhaustive; n = 4 (about 10^6 subsets) requires
/// `allow_long`.
pub fn verify_optimal_conditional_sets_trivial(n: usize, allow_long: bool) -> Result<OptimalSetsReport> {
    require_dimension(n, if allow_long { 4 } else { 3 }, "exhaustive optimal-set check")?;
    let q = hypercube(n)?;
    let size = 2 * n - 2;

    let trivial: HashSet<Vec<EdgeId>> = two_paths(&q)
        .into_iter()
        .map(|p| trivial_conditional_set(&q, p).map(|s| sorted_key(&s)))
        .collect::<Result<_>>()?;
    let failing_trivial = trivial
        .iter()
        .filter(|ids| !is_s_restricted_set(&q, &q.edge_set(ids.iter().copied()).unwrap(), 1).unwrap())
        .count();

    let conditional = |ids: &[EdgeId]| {
        let f = q.edge_set(ids.iter().copied()).unwrap();
        is_s_restricted_set(&q, &f, 1).unwrap()
    };
    let found = subsets_where(q.m(), size, conditional);
    let non_trivial: Vec<Vec<EdgeId>> = found.iter().filter(|s| !trivial.contains(*s)).cloned().collect();
    let smaller = subsets_where(q.m(), size - 1, conditional);

    Ok(OptimalSetsReport {
        n,
        size,
        subsets_checked: binomial(q.m(), size),
        conditional_sets: found.len(),
        non_trivial_count: non_trivial.len(),
        non_trivial: non_trivial.into_iter().take(MAX_REPORTED).collect(),
        distinct_trivial_sets: trivial.len(),
        failing_trivial,
        smaller_subsets_checked: binomial(q.m(), size - 1),
        smaller_conditional_sets: smaller.len(),
        passed: found.iter().all(|s| trivial.contains(s)) && failing_trivial == 0 && smaller.is_empty(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarOptimalityReport {
    pub n: usize,
    pub subsets_checked: u64,
    pub preclusion_sets: usize,
    pub non_star: Vec<Vec<EdgeId>>,
    pub passed: bool,
}

/// Every matching preclusion set of Q_n of size n is a vertex star.
/// Exhaustive over n-subsets.
pub fn verify_optimal_mp_sets_are_stars(n: usize) -> Result<StarOptimalityReport> {
    require_dimension(n, 4, "exhaustive star check")?;
    let q = hypercube(n)?;
    let stars: HashSet<Vec<EdgeId>> = (0..q.n())
        .map(|v| incident_set(&q, v).map(|s| sorted_key(&s)))
        .collect::<Result<_>>()?;
    let found = subsets_where(q.m(), n, |ids| {
        let f = q.edge_set(ids.iter().copied()).unwrap();
        crate::preclusion::is_matching_preclusion_set(&q, &f).unwrap()
    });
    let non_star: Vec<Vec<EdgeId>> = found.iter().filter(|s| !stars.contains(*s)).cloned().collect();
    Ok(StarOptimalityReport {
        n,
        subsets_checked: binomial(q.m(), n),
        preclusion_sets: found.len(),
        passed: non_star.is_empty() && !found.is_empty(),
        non_star: non_star.into_iter().take(MAX_REPORTED).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralCounterexample {
    /// The isolated vertex u.
    pub vertex: VertexId,
    pub edges: Vec<EdgeId>,
    pub size: usize,
    pub differs_from_every_pair_set: bool,
    pub connected_after: bool,
    /// |F| = 2n - 2, F ≠ I(uv) for every edge, yet Q_n - F is disconnected.
    pub reproduced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectedFormCheck {
    pub coverage: Coverage,
    pub sets_checked: u64,
    /// Sets equal to some I(uv) or containing some I(w), outside the
    /// hypothesis.
    pub excluded: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Vec<EdgeId>>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCutReport {
    pub n: usize,
    pub size: usize,
    pub literal_counterexample: LiteralCounterexample,
    pub corrected_form: CorrectedFormCheck,
}

/// A candidate set and its verdict from `CutContext::check`.
type Verdict = (Vec<EdgeId>, Option<bool>);

struct CutContext {
    q: Graph,
    pair_sets: HashSet<Vec<EdgeId>>,
    stars: Vec<EdgeSet>,
}

impl CutContext {
    fn new(n: usize) -> Result<CutContext> {
        let q = hypercube(n)?;
        let pair_sets = (0..q.m())
            .map(|e| incident_pair_set(&q, e).map(|s| sorted_key(&s)))
            .collect::<Result<_>>()?;
        let stars = (0..q.n()).map(|v| incident_set(&q, v)).collect::<Result<_>>()?;
        Ok(CutContext { q, pair_sets, stars })
    }

    /// `None` if outside the corrected hypothesis, else connectivity.
    fn check(&self, ids: &[EdgeId]) -> Option<bool> {
        if self.pair_sets.contains(ids) {
            return None;
        }
        let f = self.q.edge_set(ids.iter().copied()).unwrap();
        if self.stars.iter().any(|star| star.is_subset(&f)) {
            return None;
        }
        Some(self.q.components_without(&f).connected)
    }
}

/// Super edge-connectivity of Q_n for |F| = 2n - 2: reproduces the literal
/// counterexample F = I(u) plus padding, and checks the corrected form
/// ("F is no I(uv) and contains no I(w)  =>  Q_n - F connected") either
/// exhaustively or on seeded random samples.
pub fn verify_edge_cut_property(n: usize, samples: Option<usize>, seed: u64) -> Result<EdgeCutReport> {
    require_dimension(n, 6, "edge-cut check")?;
    let ctx = CutContext::new(n)?;
    let q = &ctx.q;
    let size = 2 * n - 2;

    // Literal form: isolate vertex 0 and pad with the lowest edges away from it.
    let mut literal = incident_set(q, 0)?;
    for e in 0..q.m() {
        if literal.len() == size {
            break;
        }
        let (a, b) = q.edge(e);
        if a != 0 && b != 0 {
            literal.insert(e);
        }
    }
    let literal_ids = sorted_key(&literal);
    let differs = !ctx.pair_sets.contains(&literal_ids);
    let connected_after = q.components_without(&literal).connected;
    let literal_counterexample = LiteralCounterexample {
        vertex: 0,
        size: literal.len(),
        reproduced: literal.len() == size && differs && !connected_after,
        edges: literal_ids,
        differs_from_every_pair_set: differs,
        connected_after,
    };

    let (coverage, outcomes): (Coverage, Vec<Verdict>) = match samples {
        None => {
            if binomial(q.m(), size) > 50_000_000 {
                return Err(Error::Budget(format!("C({}, {size}) subsets is too many to enumerate", q.m())));
            }
            let all = subsets_where(q.m(), size, |ids| ctx.check(ids) != Some(true));
            let tagged = all
                .into_iter()
                .map(|ids| {
                    let verdict = ctx.check(&ids);
                    (ids, verdict)
                })
                .collect();
            (Coverage::Exhaustive, tagged)
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<Vec<EdgeId>> = (0..count)
                .map(|_| {
                    let mut ids = rand::seq::index::sample(&mut rng, q.m(), size).into_vec();
                    ids.sort_unstable();
                    ids
                })
                .collect();
            let tagged = draws
                .into_par_iter()
                .map(|ids| {
                    let verdict = ctx.check(&ids);
                    (ids, verdict)
                })
                .filter(|(_, v)| *v != Some(true))
                .collect();
            (Coverage::Sampled { samples: count, seed }, tagged)
        }
    };

    let sets_checked = match coverage {
        Coverage::Exhaustive => binomial(q.m(), size),
        Coverage::Sampled { samples, .. } => samples as u64,
    };
    let excluded = outcomes.iter().filter(|(_, v)| v.is_none()).count() as u64;
    let bad: Vec<Vec<EdgeId>> = outcomes
        .into_iter()
        .filter(|(_, v)| *v == Some(false))
        .map(|(ids, _)| ids)
        .collect();
    let corrected_form = CorrectedFormCheck {
        coverage,
        sets_checked,
        excluded,
        counterexample_count: bad.len() as u64,
        passed: bad.is_empty(),
        counterexamples: bad.into_iter().take(MAX_REPORTED).collect(),
    };

    Ok(EdgeCutReport {
        n,
        size,
        literal_counterexample,
        corrected_form,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialSetsReport {
    pub n: usize,
    pub two_paths: usize,
    pub wrong_size: usize,
    pub disconnected: usize,
    pub with_perfect_matching: usize,
    pub passed: bool,
}

/// For every 2-path of Q_n the trivial conditional set has 2n - 2 edges,
/// leaves Q_n connected and destroys every perfect matching.
pub fn verify_trivial_sets_connected(n: usize) -> Result<TrivialSetsReport> {
    require_dimension(n, 10, "trivial-set check")?;
    let q = hypercube(n)?;
    let paths = two_paths(&q);
    let verdicts: Vec<(bool, bool, bool)> = paths
        .par_iter()
        .map(|&p| {
            let f = trivial_conditional_set(&q, p).unwrap();
            (
                f.len() == 2 * n - 2,
                q.components_without(&f).connected,
                crate::preclusion::is_matching_preclusion_set(&q, &f).unwrap(),
            )
        })
        .collect();
    let wrong_size = verdicts.iter().filter(|v| !v.0).count();
    let disconnected = verdicts.iter().filter(|v| !v.1).count();
    let with_perfect_matching = verdicts.iter().filter(|v| !v.2).count();
    Ok(TrivialSetsReport {
        n,
        two_paths: paths.len(),
        wrong_size,
        disconnected,
        with_perfect_matching,
        passed: wrong_size + disconnected + with_perfect_matching == 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBound {
    /// No s-restricted set of size 2n - 3 exists, by exact search.
    Verified,
    /// Not re-derived; taken from mp_s ≥ mp_1 = 2n - 2.
    Cited,
    /// The exact search found a smaller set.
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeVerification {
    pub n: usize,
    pub s: usize,
    pub expected: usize,
    pub certificate: PreclusionCertificate,
    pub witness_path: TwoPath,
    pub upper_bound_verified: bool,
    pub lower_bound: LowerBound,
    pub lower_bound_search: Option<SolveStats>,
    pub passed: bool,
}

/// mp_s(Q_n) = 2n - 2: the upper bound from a trivial conditional set, the
/// lower bound by exact search for n ≤ 4 (cited beyond).
pub fn verify_mps_hypercube(n: usize, s: usize, options: &SolveOptions) -> Result<HypercubeVerification> {
    require_dimension(n, 10, "hypercube verification")?;
    let order = 1usize << n;
    if s < 2 || s > order - 1 {
        return Err(Error::Parameter(format!("s must be in 2..={} for Q_{n}, got {s}", order - 1)));
    }
    let q = hypercube(n)?;
    let expected = 2 * n - 2;
    let kind = ProblemKind::Mps { s };

    let path = two_paths(&q)[0];
    let witness = trivial_conditional_set(&q, path)?;
    let upper_bound_verified = witness.len() == expected && is_s_restricted_set(&q, &witness, s)?;

    let (lower_bound, lower_bound_search) = if n <= 4 {
        let search = SolveOptions {
            budget: Some(expected - 1),
            ..options.clone()
        };
        let sol = solve(&q, kind, &search)?;
        let lb = match sol.certificate.value {
            Value::GreaterThan(_) | Value::Infinite => LowerBound::Verified,
            Value::Finite(_) => LowerBound::Refuted,
        };
        (lb, Some(sol.stats))
    } else {
        (LowerBound::Cited, None)
    };

    Ok(HypercubeVerification {
        n,
        s,
        expected,
        certificate: PreclusionCertificate::found(&q, kind, &witness),
        witness_path: path,
        upper_bound_verified,
        passed: upper_bound_verified && lower_bound != LowerBound::Refuted,
        lower_bound,
        lower_bound_search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn incident_sets_in_q3_and_q4() {
        let q3 = hypercube(3).unwrap();
        assert!((0..8).all(|v| incident_set(&q3, v).unwrap().len() == 3));
        assert!((0..q3.m()).all(|e| incident_pair_set(&q3, e).unwrap().len() == 4));
        let q4 = hypercube(4).unwrap();
        assert!((0..q4.m()).all(|e| incident_pair_set(&q4, e).unwrap().len() == 6));
    }

    #[test]
    fn trivial_conditional_sets() {
        let q3 = hypercube(3).unwrap();
        for p in two_paths(&q3) {
            let f = trivial_conditional_set(&q3, p).unwrap();
            assert_eq!(f.len(), 4);
            assert!(is_s_restricted_set(&q3, &f, 2).unwrap());
            assert!(check_connected_after(&q3, &f).unwrap());
        }
        let q4 = hypercube(4).unwrap();
        assert!(two_paths(&q4).into_iter().all(|p| trivial_conditional_set(&q4, p).unwrap().len() == 6));
        assert!(trivial_conditional_set(&q3, TwoPath { u: 0, w: 1, v: 0 }).is_err());
        assert!(trivial_conditional_set(&q3, TwoPath { u: 0, w: 3, v: 5 }).is_err());
    }

    #[test]
    fn two_path_count() {
        // Σ C(d(w), 2) = 8 · 3 for Q_3.
        assert_eq!(two_paths(&hypercube(3).unwrap()).len(), 24);
        let perfect_matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(two_paths(&perfect_matching).is_empty());
        assert_eq!(compute_v_e(&perfect_matching), None);
    }

    #[test]
    fn v_e_values() {
        assert_eq!(compute_v_e(&cycle(6).unwrap()), Some(2));
        assert_eq!(compute_v_e(&complete(4).unwrap()), Some(3));
        assert_eq!(compute_v_e(&hypercube(3).unwrap()), Some(4));
    }

    #[test]
    fn pair_set_disconnects() {
        let q3 = hypercube(3).unwrap();
        for e in 0..q3.m() {
            let f = incident_pair_set(&q3, e).unwrap();
            let report = q3.components_without(&f);
            assert!(!report.connected);
            assert_eq!(report.min_size, 2);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 4), 495);
        assert_eq!(binomial(32, 6), 906_192);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn parameter_ranges() {
        let opts = SolveOptions::default();
        assert!(verify_mps_hypercube(2, 2, &opts).is_err());
        assert!(verify_mps_hypercube(3, 1, &opts).is_err());
        assert!(verify_mps_hypercube(3, 8, &opts).is_err());
        assert!(matches!(
            verify_optimal_conditional_sets_trivial(4, false),
            Err(Error::Budget(_))
        ));
    }
}
