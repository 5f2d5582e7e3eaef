//! Matching preclusion, s-restricted matching preclusion and anti-Kekulé
//! numbers: predicates, the exact solver and the exhaustive oracle.

mod brute;
mod certificate;
mod predicates;
mod solver;

pub use brute::{brute_force_solve, brute_force_solve_with, OracleOptions, DEFAULT_ORACLE_EDGE_LIMIT};
pub use certificate::{Evidence, InfinityReason, PreclusionCertificate, ProblemKind, Value, WitnessEdge};
pub use predicates::{is_anti_kekule_set, is_matching_preclusion_set, is_s_restricted_set, satisfies, trivial_mp_set};
pub use solver::{solve, SolveOptions, SolveStats, Solution};
