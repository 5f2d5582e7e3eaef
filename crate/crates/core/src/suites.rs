//! Seeded random-graph property suites: the monotone chain
//! mp ≤ mp_1 ≤ mp_2 ≤ ..., the v_e upper bound on mp_1, and matching-engine
//! agreement with the exhaustive matching oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::random_graph;
use crate::graph::Graph;
use crate::hypercube::compute_v_e;
use crate::matching::{brute_force_matching_number, engine_for, max_matching, Engine, Matching};
use crate::preclusion::{
    brute_force_solve, solve, ProblemKind, SolveOptions, Value, DEFAULT_ORACLE_EDGE_LIMIT,
};

/// Draws `count` graphs from `draw` (each with its own seed), retrying until
/// `accept` holds.
fn sample_graphs<D, A>(seed: u64, count: usize, draw: D, accept: A) -> Result<Vec<(u64, Graph)>>
where
    D: Fn(&mut ChaCha8Rng) -> Result<(u64, Graph)>,
    A: Fn(&Graph) -> bool,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (s, g) = draw(&mut rng)?;
        if accept(&g) {
            out.push((s, g));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainInstance {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// mp_s for s = 0..=max_s.
    pub values: Vec<Value>,
    pub ak: Value,
    pub monotone: bool,
    pub mp_below_ak: bool,
    pub oracle_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub seed: u64,
    pub count: usize,
    pub max_s: usize,
    pub monotone: usize,
    pub oracle_agreements: usize,
    pub failures: Vec<ChainInstance>,
    pub passed: bool,
}

/// Random even-order graphs with at most the oracle's edge limit. For each,
/// mp_s for s = 0..=max_s and ak are computed by the solver and by the
/// exhaustive oracle.
pub fn chain_suite(seed: u64, count: usize, max_s: usize, options: &SolveOptions) -> Result<ChainReport> {
    let graphs = sample_graphs(
        seed,
        count,
        |rng| {
            let n = 2 * rng.random_range(2..=4);
            let p = rng.random_range(0.25..0.9);
            let s: u64 = rng.random();
            Ok((s, random_graph(n, p, s)?))
        },
        |g| g.m() <= DEFAULT_ORACLE_EDGE_LIMIT,
    )?;

    let instances = graphs
        .par_iter()
        .map(|(s, g)| -> Result<ChainInstance> {
            let mut values = Vec::new();
            let mut oracle_agrees = true;
            let kinds = (0..=max_s).map(|s| ProblemKind::Mps { s }).chain([ProblemKind::Ak]);
            for kind in kinds {
                let v = solve(g, kind, options)?.certificate.value;
                let o = brute_force_solve(g, kind)?.value;
                oracle_agrees &= v == o;
                values.push(v);
            }
            let ak = values.pop().unwrap();
            let monotone = values.windows(2).all(|w| w[0] <= w[1]);
            Ok(ChainInstance {
                seed: *s,
                n: g.n(),
                m: g.m(),
                mp_below_ak: values[0] <= ak,
                values,
                ak,
                monotone,
                oracle_agrees,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let monotone = instances.iter().filter(|i| i.monotone).count();
    let oracle_agreements = instances.iter().filter(|i| i.oracle_agrees).count();
    let failures: Vec<ChainInstance> = instances
        .into_iter()
        .filter(|i| !(i.monotone && i.oracle_agrees && i.mp_below_ak))
        .collect();
    Ok(ChainReport {
        seed,
        count,
        max_s,
        monotone,
        oracle_agreements,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeBoundInstance {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub mp1: Value,
    pub v_e: usize,
    pub holds: bool,
    /// Whether the exhaustive oracle was run (edge count within its limit)
    /// and agreed.
    pub oracle_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeBoundReport {
    pub seed: u64,
    pub count: usize,
    pub holds: usize,
    pub tight: usize,
    pub oracle_checked: usize,
    pub failures: Vec<VeBoundInstance>,
    pub passed: bool,
}

/// mp_1(G) ≤ v_e(G) on random even-order graphs with minimum degree ≥ 3.
pub fn ve_bound_suite(seed: u64, count: usize, options: &SolveOptions) -> Result<VeBoundReport> {
    let graphs = sample_graphs(
        seed,
        count,
        |rng| {
            let n = 2 * rng.random_range(2..=5);
            let p = rng.random_range(0.45..0.95);
            let s: u64 = rng.random();
            Ok((s, random_graph(n, p, s)?))
        },
        |g| g.min_degree().unwrap_or(0) >= 3,
    )?;

    let instances = graphs
        .par_iter()
        .map(|(s, g)| -> Result<VeBoundInstance> {
            let kind = ProblemKind::Mps { s: 1 };
            let mp1 = solve(g, kind, options)?.certificate.value;
            let v_e = compute_v_e(g).expect("min degree 3 gives 2-paths");
            let oracle_checked = if g.m() <= DEFAULT_ORACLE_EDGE_LIMIT {
                brute_force_solve(g, kind)?.value == mp1
            } else {
                false
            };
            Ok(VeBoundInstance {
                seed: *s,
                n: g.n(),
                m: g.m(),
                holds: mp1.at_most(v_e) == Some(true),
                mp1,
                v_e,
                oracle_checked,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let holds = instances.iter().filter(|i| i.holds).count();
    let tight = instances.iter().filter(|i| i.mp1 == Value::Finite(i.v_e)).count();
    let oracle_checked = instances.iter().filter(|i| i.oracle_checked).count();
    let failures: Vec<VeBoundInstance> = instances
        .into_iter()
        .filter(|i| !i.holds || (i.m <= DEFAULT_ORACLE_EDGE_LIMIT && !i.oracle_checked))
        .collect();
    Ok(VeBoundReport {
        seed,
        count,
        holds,
        tight,
        oracle_checked,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingMismatch {
    pub seed: u64,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub engine: Engine,
    pub found: usize,
    pub oracle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingOracleReport {
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub bipartite: usize,
    pub non_bipartite: usize,
    pub agreements: usize,
    pub failures: Vec<MatchingMismatch>,
    pub passed: bool,
}

/// ν from the production engines against the exhaustive oracle on `count`
/// random graphs with 1..=max_n vertices and densities spread over (0, 1).
pub fn matching_oracle_suite(seed: u64, count: usize, max_n: usize) -> Result<MatchingOracleReport> {
    if max_n == 0 || max_n > 16 {
        return Err(crate::Error::Parameter(format!("max_n must be in 1..=16, got {max_n}")));
    }
    let graphs = sample_graphs(
        seed,
        count,
        |rng| {
            let n = rng.random_range(1..=max_n);
            let p = rng.random_range(0.05..0.95);
            let s: u64 = rng.random();
            Ok((s, random_graph(n, p, s)?))
        },
        |_| true,
    )?;

    let outcomes = graphs
        .par_iter()
        .map(|(s, g)| -> Result<(bool, Option<MatchingMismatch>)> {
            let m = max_matching(g);
            let oracle = brute_force_matching_number(g)?;
            let valid = Matching::from_edge_set(g, m.edges().clone()).is_some();
            let mismatch = (m.size() != oracle || !valid).then(|| MatchingMismatch {
                seed: *s,
                n: g.n(),
                edges: g.edges().to_vec(),
                engine: engine_for(g),
                found: m.size(),
                oracle,
            });
            Ok((g.bipartition().is_some(), mismatch))
        })
        .collect::<Result<Vec<_>>>()?;

    let bipartite = outcomes.iter().filter(|(b, _)| *b).count();
    let failures: Vec<MatchingMismatch> = outcomes.into_iter().filter_map(|(_, m)| m).collect();
    Ok(MatchingOracleReport {
        seed,
        count,
        max_n,
        bipartite,
        non_bipartite: count - bipartite,
        agreements: count - failures.len(),
        passed: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chain_run() {
        let report = chain_suite(1, 6, 3, &SolveOptions::default()).unwrap();
        assert!(report.passed, "{:?}", report.failures);
        assert_eq!(report.monotone, 6);
    }

    #[test]
    fn small_matching_run() {
        let report = matching_oracle_suite(3, 40, 10).unwrap();
        assert!(report.passed, "{:?}", report.failures);
        assert!(report.non_bipartite > 0);
    }

    #[test]
    fn small_ve_run() {
        let report = ve_bound_suite(1, 5, &SolveOptions::default()).unwrap();
        assert!(report.passed, "{:?}", report.failures);
    }
}
