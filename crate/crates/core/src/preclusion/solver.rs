//! Exact branch-and-bound search for minimum preclusion sets.
//!
//! Iterative deepening over the set size k. A node is a partial fault set
//! F together with a set X of edges forbidden in this subtree. At each node
//! a maximum matching M of G - F is computed. If |M| is already below
//! ⌊n/2⌋ the node is a solution; otherwise every solution extending F must
//! delete some edge of M, so the node branches on the non-forbidden edges
//! e_1 < ... < e_r of M, with branch i forbidding e_1..e_{i-1}. Every set
//! is generated at most once, and every optimal set is reached.
//!
//! Side conditions (component size for mp_s, connectivity for ak) only get
//! worse as edges are deleted, so a node violating them is discarded with
//! its subtree. A node is also discarded when the forbidden edges alone
//! contain a matching that is too large, since those edges can never be
//! deleted below it.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph};
use crate::matching::{matching_number_without, max_matching_without};

use super::certificate::{InfinityReason, PreclusionCertificate, ProblemKind};
use super::predicates::{infinity_by_convention, precluded_bound};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Decision mode: only look for sets of size at most this.
    pub budget: Option<usize>,
    /// Report the lexicographically smallest optimal witness. This explores
    /// the whole optimal level instead of stopping at the first hit.
    pub deterministic: bool,
    /// Worker threads for the top-level branches; 1 runs inline.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: None,
            deterministic: true,
            jobs: 1,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn nondeterministic(mut self) -> Self {
        self.deterministic = false;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub prunes: u64,
    pub depth_cuts: u64,
    pub levels: usize,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.depth_cuts += other.depth_cuts;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub certificate: PreclusionCertificate,
    pub stats: SolveStats,
}

pub fn solve(g: &Graph, kind: ProblemKind, options: &SolveOptions) -> Result<Solution> {
    if let Some(reason) = infinity_by_convention(g, kind)? {
        return Ok(Solution {
            certificate: PreclusionCertificate::infinite(kind, reason),
            stats: SolveStats::default(),
        });
    }
    let bound = precluded_bound(g.n()).expect("checked by the convention test");
    let pool = if options.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.jobs)
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut stats = SolveStats::default();
    let max_depth = options.budget.unwrap_or(g.m()).min(g.m());
    for depth in 0..=max_depth {
        let search = Search {
            g,
            kind,
            bound,
            depth,
            first_only: !options.deterministic,
        };
        let outcome = match &pool {
            Some(pool) => pool.install(|| search.run(true)),
            None => search.run(false),
        };
        stats.levels += 1;
        stats.absorb(&outcome.stats);
        if let Some(best) = outcome.best {
            let witness = g.edge_set(best)?;
            return Ok(Solution {
                certificate: PreclusionCertificate::found(g, kind, &witness),
                stats,
            });
        }
        if !outcome.cut {
            return Ok(Solution {
                certificate: PreclusionCertificate::infinite(kind, InfinityReason::NoValidSet),
                stats,
            });
        }
    }
    let certificate = match options.budget {
        Some(budget) if budget < g.m() => PreclusionCertificate::exceeds(kind, budget),
        _ => PreclusionCertificate::infinite(kind, InfinityReason::NoValidSet),
    };
    Ok(Solution { certificate, stats })
}

struct Search<'g> {
    g: &'g Graph,
    kind: ProblemKind,
    bound: usize,
    depth: usize,
    first_only: bool,
}

#[derive(Default)]
struct Outcome {
    best: Option<Vec<EdgeId>>,
    cut: bool,
    stats: SolveStats,
}

impl Outcome {
    fn offer(&mut self, candidate: Vec<EdgeId>) {
        let better = match &self.best {
            None => true,
            Some(best) => (candidate.len(), &candidate) < (best.len(), best),
        };
        if better {
            self.best = Some(candidate);
        }
    }

    fn merge(&mut self, other: Outcome) {
        self.cut |= other.cut;
        self.stats.absorb(&other.stats);
        if let Some(best) = other.best {
            self.offer(best);
        }
    }
}

enum Expansion {
    Leaf,
    Branch(Vec<EdgeId>),
}

impl Search<'_> {
    fn run(&self, parallel: bool) -> Outcome {
        let stop = AtomicBool::new(false);
        let removed = self.g.empty_edge_set();
        let excluded = self.g.empty_edge_set();
        let mut root = Outcome::default();
        let candidates = match self.expand(&removed, &excluded, &mut root, &stop) {
            Expansion::Leaf => return root,
            Expansion::Branch(c) => c,
        };

        let branch = |i: usize| -> Outcome {
            let mut removed = self.g.empty_edge_set();
            let mut excluded = self.g.empty_edge_set();
            for &e in &candidates[..i] {
                excluded.insert(e);
            }
            removed.insert(candidates[i]);
            let mut out = Outcome::default();
            self.explore(&mut removed, &mut excluded, &mut out, &stop);
            out
        };
        let outcomes: Vec<Outcome> = if parallel {
            (0..candidates.len()).into_par_iter().map(branch).collect()
        } else {
            (0..candidates.len()).map(branch).collect()
        };
        for out in outcomes {
            root.merge(out);
        }
        root
    }

    fn explore(&self, removed: &mut EdgeSet, excluded: &mut EdgeSet, out: &mut Outcome, stop: &AtomicBool) {
        let candidates = match self.expand(removed, excluded, out, stop) {
            Expansion::Leaf => return,
            Expansion::Branch(c) => c,
        };
        for &e in &candidates {
            removed.insert(e);
            self.explore(removed, excluded, out, stop);
            removed.remove(e);
            excluded.insert(e);
        }
        for &e in &candidates {
            excluded.remove(e);
        }
    }

    fn expand(&self, removed: &EdgeSet, excluded: &EdgeSet, out: &mut Outcome, stop: &AtomicBool) -> Expansion {
        if self.first_only && stop.load(Ordering::Relaxed) {
            return Expansion::Leaf;
        }
        out.stats.nodes += 1;

        let min_size = self.kind.min_component_size();
        if min_size > 1 || self.kind.requires_connected() {
            let report = self.g.components_without(removed);
            if report.min_size < min_size || (self.kind.requires_connected() && !report.connected) {
                out.stats.prunes += 1;
                return Expansion::Leaf;
            }
        }

        let matching = max_matching_without(self.g, removed);
        if matching.size() <= self.bound {
            out.offer(removed.to_vec());
            if self.first_only {
                stop.store(true, Ordering::Relaxed);
            }
            return Expansion::Leaf;
        }
        if removed.len() >= self.depth {
            out.cut = true;
            out.stats.depth_cuts += 1;
            return Expansion::Leaf;
        }

        let candidates: Vec<EdgeId> = matching.edges().iter().filter(|&e| !excluded.contains(e)).collect();
        if candidates.is_empty() {
            out.stats.prunes += 1;
            return Expansion::Leaf;
        }
        if !excluded.is_empty() && matching_number_without(self.g, &excluded.complement()) > self.bound {
            out.stats.prunes += 1;
            return Expansion::Leaf;
        }
        Expansion::Branch(candidates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, hypercube};
    use crate::preclusion::certificate::Value;

    fn value(g: &Graph, kind: ProblemKind) -> Value {
        solve(g, kind, &SolveOptions::default()).unwrap().certificate.value
    }

    #[test]
    fn small_cycles() {
        let c4 = cycle(4).unwrap();
        assert_eq!(value(&c4, ProblemKind::Mp), Value::Finite(2));
        assert_eq!(value(&c4, ProblemKind::Mps { s: 1 }), Value::Infinite);
        assert_eq!(value(&cycle(6).unwrap(), ProblemKind::Ak), Value::Infinite);
    }

    #[test]
    fn q3_values() {
        let q = hypercube(3).unwrap();
        assert_eq!(value(&q, ProblemKind::Mp), Value::Finite(3));
        assert_eq!(value(&q, ProblemKind::Mps { s: 1 }), Value::Finite(4));
        assert_eq!(value(&q, ProblemKind::Mps { s: 2 }), Value::Finite(4));
    }

    #[test]
    fn q3_witness_is_lexmin_star() {
        let q = hypercube(3).unwrap();
        let sol = solve(&q, ProblemKind::Mp, &SolveOptions::default()).unwrap();
        // Vertex 0's star: (0,1), (0,2), (0,4) are edges 0, 1, 2.
        assert_eq!(sol.certificate.witness_ids(), Some(vec![0, 1, 2]));
        let ev = sol.certificate.evidence.unwrap();
        assert_eq!(ev.nu_after, 3);
        assert_eq!(ev.component_min_size, 1);
    }

    #[test]
    fn budget_mode() {
        let q = hypercube(3).unwrap();
        let under = solve(&q, ProblemKind::Mp, &SolveOptions::default().with_budget(2)).unwrap();
        assert_eq!(under.certificate.value, Value::GreaterThan(2));
        assert!(under.certificate.witness.is_none());
        let enough = solve(&q, ProblemKind::Mp, &SolveOptions::default().with_budget(3)).unwrap();
        assert_eq!(enough.certificate.value, Value::Finite(3));
    }

    #[test]
    fn convention_infinity() {
        // Two isolated vertices: no perfect matching to begin with.
        let g = Graph::from_edges(2, []).unwrap();
        let sol = solve(&g, ProblemKind::Mp, &SolveOptions::default()).unwrap();
        assert_eq!(sol.certificate.value, Value::Infinite);
        assert_eq!(sol.certificate.infinity_reason, Some(InfinityReason::NoMatchingToPreclude));
        let k1 = Graph::from_edges(1, []).unwrap();
        let sol = solve(&k1, ProblemKind::Mp, &SolveOptions::default()).unwrap();
        assert_eq!(sol.certificate.infinity_reason, Some(InfinityReason::NoValidSet));
    }

    #[test]
    fn ak_rejects_odd_order() {
        let c5 = cycle(5).unwrap();
        assert!(matches!(
            solve(&c5, ProblemKind::Ak, &SolveOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn jobs_do_not_change_deterministic_answers() {
        let q = hypercube(3).unwrap();
        for kind in [ProblemKind::Mp, ProblemKind::Mps { s: 1 }, ProblemKind::Ak] {
            let one = solve(&q, kind, &SolveOptions::default()).unwrap();
            let four = solve(&q, kind, &SolveOptions::default().with_jobs(4)).unwrap();
            assert_eq!(one, four);
        }
    }

    #[test]
    fn nondeterministic_mode_finds_optimal_value() {
        let q = hypercube(3).unwrap();
        let sol = solve(&q, ProblemKind::Mps { s: 1 }, &SolveOptions::default().nondeterministic().with_jobs(3)).unwrap();
        assert_eq!(sol.certificate.value, Value::Finite(4));
    }
}
