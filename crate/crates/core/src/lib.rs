//! Exact solvers for matching-based edge-fault robustness of graphs.
//!
//! Given a simple graph G, the crate computes
//!
//! * the matching preclusion number mp(G): fewest edges whose deletion
//!   leaves neither a perfect nor an almost perfect matching;
//! * the s-restricted matching preclusion number mp_s(G): the same, with
//!   every remaining component keeping at least s + 1 vertices
//!   (mp_0 = mp, mp_1 is conditional matching preclusion);
//! * the anti-Kekulé number: fewest edges whose deletion keeps G connected
//!   but destroys every perfect matching.
//!
//! Answers come as [`PreclusionCertificate`]s with a witness edge set and
//! post-deletion evidence, or the value `INFINITY` with a reason. The
//! [`reduction`] module builds the gadget relating mp on balanced bipartite
//! graphs to the other two problems, and [`hypercube`] checks the known
//! values on Q_n.

pub mod error;
pub mod generators;
pub mod graph;
pub mod hypercube;
pub mod io;
pub mod matching;
pub mod preclusion;
pub mod reduction;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{ComponentReport, EdgeId, EdgeSet, Graph, Side, VertexId};
pub use matching::Matching;
pub use preclusion::{PreclusionCertificate, ProblemKind, SolveOptions, Value};
pub use reduction::ReductionInstance;
