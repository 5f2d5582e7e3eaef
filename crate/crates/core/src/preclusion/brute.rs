use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::certificate::{InfinityReason, PreclusionCertificate, ProblemKind};
use super::predicates::{infinity_by_convention, satisfies};

pub const DEFAULT_ORACLE_EDGE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Refuse graphs with more edges than this.
    pub edge_limit: usize,
    /// Only enumerate subsets up to this size; a miss is then reported as a
    /// lower bound rather than infinity.
    pub max_cardinality: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            edge_limit: DEFAULT_ORACLE_EDGE_LIMIT,
            max_cardinality: None,
        }
    }
}

/// Enumerates edge subsets by increasing size (lexicographic within a
/// size) and returns the first that satisfies the predicate of `kind`.
pub fn brute_force_solve(g: &Graph, kind: ProblemKind) -> Result<PreclusionCertificate> {
    brute_force_solve_with(g, kind, OracleOptions::default())
}

pub fn brute_force_solve_with(g: &Graph, kind: ProblemKind, options: OracleOptions) -> Result<PreclusionCertificate> {
    if g.m() > options.edge_limit {
        return Err(Error::OracleLimit {
            size: g.m(),
            limit: options.edge_limit,
            unit: "edges",
        });
    }
    if let Some(reason) = infinity_by_convention(g, kind)? {
        return Ok(PreclusionCertificate::infinite(kind, reason));
    }
    let top = options.max_cardinality.unwrap_or(g.m()).min(g.m());
    for size in 0..=top {
        for subset in (0..g.m()).combinations(size) {
            let f = g.edge_set(subset)?;
            if satisfies(g, kind, &f)? {
                return Ok(PreclusionCertificate::found(g, kind, &f));
            }
        }
    }
    Ok(if top < g.m() {
        PreclusionCertificate::exceeds(kind, top)
    } else {
        PreclusionCertificate::infinite(kind, InfinityReason::NoValidSet)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, hypercube};
    use crate::preclusion::certificate::Value;

    #[test]
    fn oracle_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(brute_force_solve(&k2, ProblemKind::Mp).unwrap().value, Value::Finite(1));
        let c6 = cycle(6).unwrap();
        assert_eq!(brute_force_solve(&c6, ProblemKind::Ak).unwrap().value, Value::Infinite);
        let c4 = cycle(4).unwrap();
        assert_eq!(brute_force_solve(&c4, ProblemKind::Mps { s: 1 }).unwrap().value, Value::Infinite);
    }

    #[test]
    fn q4_needs_a_raised_limit() {
        let q = hypercube(3).unwrap();
        assert_eq!(brute_force_solve(&q, ProblemKind::Mp).unwrap().value, Value::Finite(3));
        let q4 = hypercube(4).unwrap();
        assert!(matches!(
            brute_force_solve(&q4, ProblemKind::Mp),
            Err(Error::OracleLimit { size: 32, limit: 16, .. })
        ));
        let opts = OracleOptions {
            edge_limit: 32,
            max_cardinality: Some(3),
        };
        assert_eq!(brute_force_solve_with(&q4, ProblemKind::Mp, opts).unwrap().value, Value::GreaterThan(3));
    }
}
