//! The gadget that turns a matching preclusion instance (G, k) on a
//! balanced bipartite graph with a perfect matching into an anti-Kekulé or
//! s-restricted instance (G', k + 1), with witness maps in both directions
//! and an oracle-based check of the equivalence.
//!
//! G' adds u', u'' to the left side and v', v'' to the right side; u' is
//! joined to every right vertex of G, v' to every left vertex, and the four
//! new vertices form the 4-cycle u'v', u'v'', u''v', u''v''. The edge
//! e = u''v'' is added to a source witness; e' = u'v' plays the key role
//! when extracting a witness back.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::random_bipartite_with_pm;
use crate::graph::{EdgeId, EdgeSet, Graph, Side, VertexId};
use crate::matching::matching_number;
use crate::preclusion::{
    brute_force_solve_with, is_matching_preclusion_set, satisfies, trivial_mp_set, OracleOptions,
    PreclusionCertificate, ProblemKind, Value,
};

/// Edge limit used by the oracle on gadgets. Enumeration is additionally
/// capped by cardinality, and in practice stops at the first hit.
pub const EQUIVALENCE_EDGE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedVertices {
    pub u_prime: VertexId,
    pub u_double_prime: VertexId,
    pub v_prime: VertexId,
    pub v_double_prime: VertexId,
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    source: Graph,
    gadget: Graph,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
    added: AddedVertices,
    edge_e: EdgeId,
    edge_e_prime: EdgeId,
    source_to_gadget: Vec<EdgeId>,
    gadget_to_source: Vec<Option<EdgeId>>,
}

impl ReductionInstance {
    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn gadget(&self) -> &Graph {
        &self.gadget
    }

    /// Side size t.
    pub fn t(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self) -> &[VertexId] {
        &self.left
    }

    pub fn right(&self) -> &[VertexId] {
        &self.right
    }

    pub fn added(&self) -> AddedVertices {
        self.added
    }

    /// e = u''v''.
    pub fn edge_e(&self) -> EdgeId {
        self.edge_e
    }

    /// e' = u'v'.
    pub fn edge_e_prime(&self) -> EdgeId {
        self.edge_e_prime
    }

    pub fn map_budget(&self, k: usize) -> usize {
        k + 1
    }

    pub fn gadget_edge(&self, source_edge: EdgeId) -> EdgeId {
        self.source_to_gadget[source_edge]
    }

    pub fn source_edge(&self, gadget_edge: EdgeId) -> Option<EdgeId> {
        self.gadget_to_source[gadget_edge]
    }

    /// Largest s for which the s-restricted variant is meaningful: the
    /// gadget has 2t + 4 vertices.
    pub fn max_s(&self) -> usize {
        2 * self.t() + 3
    }

    /// B' ∩ E(G), in source edge ids.
    pub fn restrict_to_source(&self, b_prime: &EdgeSet) -> Result<EdgeSet> {
        self.gadget.check_tag(b_prime)?;
        self.source.edge_set(b_prime.iter().filter_map(|e| self.gadget_to_source[e]))
    }

    pub fn lift_to_gadget(&self, b: &EdgeSet) -> Result<EdgeSet> {
        self.source.check_tag(b)?;
        self.gadget.edge_set(b.iter().map(|e| self.source_to_gadget[e]))
    }
}

/// Builds G' from a balanced bipartite `g` with a perfect matching. An
/// attached bipartition is used as (U, V) = (left, right); otherwise one is
/// computed.
pub fn build_reduction(g: &Graph) -> Result<ReductionInstance> {
    let sides: Vec<Side> = match g.bipartition() {
        Some(s) => s.to_vec(),
        None => g
            .two_colouring()
            .ok_or_else(|| Error::Precondition("source graph is not bipartite".into()))?,
    };
    let source = g.clone().with_bipartition(sides.clone())?;
    let left: Vec<VertexId> = (0..g.n()).filter(|&v| sides[v] == Side::Left).collect();
    let right: Vec<VertexId> = (0..g.n()).filter(|&v| sides[v] == Side::Right).collect();
    if left.len() != right.len() || left.is_empty() {
        return Err(Error::Precondition(format!(
            "sides must be equal and non-empty, got {} and {}",
            left.len(),
            right.len()
        )));
    }
    if matching_number(&source) != left.len() {
        return Err(Error::Precondition("source graph has no perfect matching".into()));
    }

    let n = g.n();
    let added = AddedVertices {
        u_prime: n,
        u_double_prime: n + 1,
        v_prime: n + 2,
        v_double_prime: n + 3,
    };
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    edges.extend(right.iter().map(|&v| (added.u_prime, v)));
    edges.extend(left.iter().map(|&u| (u, added.v_prime)));
    edges.extend([
        (added.u_prime, added.v_prime),
        (added.u_prime, added.v_double_prime),
        (added.u_double_prime, added.v_prime),
        (added.u_double_prime, added.v_double_prime),
    ]);
    let mut gadget_sides = sides;
    gadget_sides.extend([Side::Left, Side::Left, Side::Right, Side::Right]);
    let gadget = Graph::from_edges(n + 4, edges)?.with_bipartition(gadget_sides)?;

    let source_to_gadget: Vec<EdgeId> = g
        .edges()
        .iter()
        .map(|&(u, v)| gadget.edge_between(u, v).expect("source edges survive"))
        .collect();
    let mut gadget_to_source = vec![None; gadget.m()];
    for (s, &gid) in source_to_gadget.iter().enumerate() {
        gadget_to_source[gid] = Some(s);
    }
    let edge_e = gadget.edge_between(added.u_double_prime, added.v_double_prime).unwrap();
    let edge_e_prime = gadget.edge_between(added.u_prime, added.v_prime).unwrap();

    Ok(ReductionInstance {
        source,
        gadget,
        left,
        right,
        added,
        edge_e,
        edge_e_prime,
        source_to_gadget,
        gadget_to_source,
    })
}

/// B' = B ∪ {e} for a matching preclusion set B of the source.
pub fn forward_witness(r: &ReductionInstance, b: &EdgeSet) -> Result<EdgeSet> {
    if !is_matching_preclusion_set(&r.source, b)? {
        return Err(Error::Precondition("B is not a matching preclusion set of the source".into()));
    }
    let mut lifted = r.lift_to_gadget(b)?;
    lifted.insert(r.edge_e);
    Ok(lifted)
}

/// Which branch of the extraction produced the source witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionCase {
    /// e ∈ B': B' ∩ E(G) precludes.
    ContainsE,
    /// e ∉ B' and B' ∩ E(G) already precludes with at most k edges.
    IntersectionPrecludes,
    /// e ∉ B', B' ⊆ E(G) with k + 1 edges: drop the smallest edge.
    ShrunkByOne,
    /// e ∉ B' and B' ∩ E(G) does not preclude: then t ≤ k and a vertex
    /// star of the source fits the budget.
    TrivialStar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub set: EdgeSet,
    pub case: ExtractionCase,
}

/// Maps an anti-Kekulé (or s-restricted, s ≥ 1) set B' of the gadget with
/// |B'| ≤ k + 1 to a matching preclusion set of the source, following the
/// case analysis of the equivalence proof.
pub fn backward_extract(r: &ReductionInstance, b_prime: &EdgeSet, k: usize, kind: ProblemKind) -> Result<Extraction> {
    match kind {
        ProblemKind::Ak | ProblemKind::Mps { s: 1.. } => {}
        other => {
            return Err(Error::Parameter(format!(
                "backward extraction is defined for ak and mp_s with s >= 1, not {other}"
            )))
        }
    }
    r.gadget.check_tag(b_prime)?;
    if b_prime.len() > k + 1 {
        return Err(Error::Precondition(format!(
            "|B'| = {} exceeds k + 1 = {}",
            b_prime.len(),
            k + 1
        )));
    }
    if !satisfies(&r.gadget, kind, b_prime)? {
        return Err(Error::Precondition(format!("B' is not a {kind} set of the gadget")));
    }

    let b = r.restrict_to_source(b_prime)?;
    if b_prime.contains(r.edge_e) {
        return Ok(Extraction {
            set: b,
            case: ExtractionCase::ContainsE,
        });
    }
    if is_matching_preclusion_set(&r.source, &b)? {
        if b.len() <= k {
            return Ok(Extraction {
                set: b,
                case: ExtractionCase::IntersectionPrecludes,
            });
        }
        let mut shrunk = b;
        let smallest = shrunk.iter().next().expect("|B| = k + 1 > 0");
        shrunk.remove(smallest);
        return Ok(Extraction {
            set: shrunk,
            case: ExtractionCase::ShrunkByOne,
        });
    }
    let hub = (0..r.source.n())
        .max_by_key(|&v| (r.source.degree(v), std::cmp::Reverse(v)))
        .expect("source is non-empty");
    Ok(Extraction {
        set: trivial_mp_set(&r.source, hub)?,
        case: ExtractionCase::TrivialStar,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpsCheck {
    pub s: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCheck {
    pub k: usize,
    /// mp(G) ≤ k.
    pub left: bool,
    /// ak(G') ≤ k + 1.
    pub right_ak: bool,
    /// mp_s(G') ≤ k + 1, per configured s.
    pub right_mps: Vec<MpsCheck>,
    pub agree: bool,
}

fn oracle(cap: usize) -> OracleOptions {
    OracleOptions {
        edge_limit: EQUIVALENCE_EDGE_LIMIT,
        max_cardinality: Some(cap),
    }
}

fn check_s_range(r: &ReductionInstance, s_values: &[usize]) -> Result<()> {
    match s_values.iter().find(|&&s| s == 0 || s > r.max_s()) {
        Some(s) => Err(Error::Parameter(format!("s = {s} outside 1..={}", r.max_s()))),
        None => Ok(()),
    }
}

/// Decides both sides of the equivalence at budget `k` with the exhaustive
/// oracle only.
pub fn verify_equivalence(g: &Graph, k: usize, s_values: &[usize]) -> Result<EquivalenceCheck> {
    let r = build_reduction(g)?;
    check_s_range(&r, s_values)?;
    let decide = |graph: &Graph, kind: ProblemKind, budget: usize| -> Result<bool> {
        let cert = brute_force_solve_with(graph, kind, oracle(budget))?;
        Ok(cert.value.at_most(budget).expect("oracle decides up to its cap"))
    };
    let left = decide(&r.source, ProblemKind::Mp, k)?;
    let right_ak = decide(&r.gadget, ProblemKind::Ak, k + 1)?;
    let right_mps = s_values
        .iter()
        .map(|&s| {
            Ok(MpsCheck {
                s,
                holds: decide(&r.gadget, ProblemKind::Mps { s }, k + 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let agree = left == right_ak && right_mps.iter().all(|c| c.holds == left);
    Ok(EquivalenceCheck {
        k,
        left,
        right_ak,
        right_mps,
        agree,
    })
}

/// Oracle values for a source and its gadget, enumerated up to
/// cardinality |E(G)| + 1 (the largest budget any k in 0..=|E(G)| needs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleValues {
    pub mp: PreclusionCertificate,
    pub ak: PreclusionCertificate,
    pub mps: Vec<PreclusionCertificate>,
}

pub fn oracle_values(r: &ReductionInstance, s_values: &[usize]) -> Result<OracleValues> {
    check_s_range(r, s_values)?;
    let m = r.source.m();
    Ok(OracleValues {
        mp: brute_force_solve_with(&r.source, ProblemKind::Mp, oracle(m))?,
        ak: brute_force_solve_with(&r.gadget, ProblemKind::Ak, oracle(m + 1))?,
        mps: s_values
            .iter()
            .map(|&s| brute_force_solve_with(&r.gadget, ProblemKind::Mps { s }, oracle(m + 1)))
            .collect::<Result<Vec<_>>>()?,
    })
}

impl OracleValues {
    /// The equivalence at budget k, read off the oracle values.
    pub fn check(&self, k: usize) -> EquivalenceCheck {
        let holds = |v: Value, budget: usize| v.at_most(budget).unwrap_or(false);
        let left = holds(self.mp.value, k);
        let right_ak = holds(self.ak.value, k + 1);
        let right_mps: Vec<MpsCheck> = self
            .mps
            .iter()
            .map(|c| MpsCheck {
                s: match c.kind {
                    ProblemKind::Mps { s } => s,
                    _ => unreachable!(),
                },
                holds: holds(c.value, k + 1),
            })
            .collect();
        let agree = left == right_ak && right_mps.iter().all(|c| c.holds == left);
        EquivalenceCheck {
            k,
            left,
            right_ak,
            right_mps,
            agree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzInstance {
    pub index: usize,
    pub t: usize,
    pub extra_edge_prob: f64,
    pub seed: u64,
    pub edges: usize,
    pub mp: Value,
    pub ak: Value,
    pub mps: Vec<Value>,
    pub checks: usize,
    pub disagreements: Vec<usize>,
    pub witness_failures: Vec<String>,
}

impl FuzzInstance {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.witness_failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub s_values: Vec<usize>,
    pub checks: usize,
    pub agreeing_instances: usize,
    pub failures: Vec<FuzzInstance>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random balanced bipartite sources with t ≤ `max_t`; for each, every k in
/// 0..=|E| is checked and the witness maps are exercised in both
/// directions. Instances run in parallel on the current rayon pool.
pub fn reduction_fuzz(seed: u64, count: usize, max_t: usize, s_values: &[usize]) -> Result<FuzzReport> {
    if max_t == 0 {
        return Err(Error::Parameter("max_t must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<(usize, f64, u64)> = (0..count)
        .map(|_| {
            let t = rng.random_range(1..=max_t);
            // Keep sources sparse enough that the gadget oracle stays fast.
            let p = (rng.random_range(0..=12) as f64) / 20.0;
            (t, p, rng.random())
        })
        .collect();

    let instances = params
        .par_iter()
        .enumerate()
        .map(|(index, &(t, p, instance_seed))| fuzz_one(index, t, p, instance_seed, s_values))
        .collect::<Result<Vec<_>>>()?;

    let checks = instances.iter().map(|i| i.checks).sum();
    let agreeing_instances = instances.iter().filter(|i| i.disagreements.is_empty()).count();
    Ok(FuzzReport {
        seed,
        count,
        s_values: s_values.to_vec(),
        checks,
        agreeing_instances,
        failures: instances.into_iter().filter(|i| !i.passed()).collect(),
    })
}

fn fuzz_one(index: usize, t: usize, p: f64, seed: u64, s_values: &[usize]) -> Result<FuzzInstance> {
    let g = random_bipartite_with_pm(t, p, seed)?;
    let r = build_reduction(&g)?;
    let s_values: Vec<usize> = s_values.iter().copied().filter(|&s| s <= r.max_s()).collect();
    let values = oracle_values(&r, &s_values)?;

    let disagreements: Vec<usize> = (0..=g.m()).filter(|&k| !values.check(k).agree).collect();

    let mut witness_failures = Vec::new();
    if let Some(b) = values.mp.witness_set(&g) {
        let b_prime = forward_witness(&r, &b)?;
        if !satisfies(r.gadget(), ProblemKind::Ak, &b_prime)? {
            witness_failures.push("forward witness is not anti-Kekulé".to_string());
        }
        for &s in &s_values {
            if !satisfies(r.gadget(), ProblemKind::Mps { s }, &b_prime)? {
                witness_failures.push(format!("forward witness is not {s}-restricted"));
            }
        }
    }
    let gadget_certs = std::iter::once(&values.ak).chain(values.mps.iter());
    for cert in gadget_certs {
        let Some(b_prime) = cert.witness_set(r.gadget()) else {
            continue;
        };
        // Tightest budget the witness admits.
        let k = b_prime.len().saturating_sub(1);
        let extraction = backward_extract(&r, &b_prime, k, cert.kind)?;
        if extraction.set.len() > k || !is_matching_preclusion_set(&g, &extraction.set)? {
            witness_failures.push(format!(
                "backward extraction from a {} witness ({:?}) gave an invalid set of size {} for k = {k}",
                cert.kind,
                extraction.case,
                extraction.set.len()
            ));
        }
    }

    Ok(FuzzInstance {
        index,
        t,
        extra_edge_prob: p,
        seed,
        edges: g.m(),
        mp: values.mp.value,
        ak: values.ak.value,
        mps: values.mps.iter().map(|c| c.value).collect(),
        checks: g.m() + 1,
        disagreements,
        witness_failures,
    })
}
