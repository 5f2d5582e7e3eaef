use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};
use crate::matching::matching_number_without;

/// Which preclusion number is being computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemKind {
    /// Matching preclusion, mp(G).
    Mp,
    /// s-restricted matching preclusion, mp_s(G). `s = 1` is the
    /// conditional variant.
    Mps { s: usize },
    /// Anti-Kekulé number: stay connected, lose every perfect matching.
    Ak,
}

impl ProblemKind {
    /// Minimum component size required after deletion.
    pub fn min_component_size(self) -> usize {
        match self {
            ProblemKind::Mp => 0,
            ProblemKind::Mps { s } => s + 1,
            ProblemKind::Ak => 0,
        }
    }

    pub fn requires_connected(self) -> bool {
        matches!(self, ProblemKind::Ak)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemKind::Mp => f.write_str("mp"),
            ProblemKind::Mps { s } => write!(f, "mp_{s}"),
            ProblemKind::Ak => f.write_str("ak"),
        }
    }
}

/// An optimal value, `+inf`, or (in budgeted runs) a strict lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(usize),
    Infinite,
    /// No set of size at most the budget exists, but larger ones were not
    /// ruled out.
    GreaterThan(usize),
}

impl Value {
    pub fn finite(self) -> Option<usize> {
        match self {
            Value::Finite(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Value::Infinite
    }

    /// Whether a set of size at most `k` exists, when that is decided.
    pub fn at_most(self, k: usize) -> Option<bool> {
        match self {
            Value::Finite(v) => Some(v <= k),
            Value::Infinite => Some(false),
            Value::GreaterThan(b) if k <= b => Some(false),
            Value::GreaterThan(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(k) => write!(f, "{k}"),
            Value::Infinite => f.write_str("INFINITY"),
            Value::GreaterThan(b) => write!(f, ">{b}"),
        }
    }
}

/// Finite values and lower bounds are totally ordered below `Infinite`.
impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Some(a.cmp(b)),
            (Value::Infinite, Value::Infinite) => Some(Equal),
            (Value::Infinite, _) => Some(Greater),
            (_, Value::Infinite) => Some(Less),
            (Value::Finite(a), Value::GreaterThan(b)) if a <= b => Some(Less),
            (Value::GreaterThan(a), Value::Finite(b)) if b <= a => Some(Greater),
            _ => None,
        }
    }
}

// JSON: a number, the string "INFINITY", or {"greater_than": b}.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Finite(k) => serializer.serialize_u64(*k as u64),
            Value::Infinite => serializer.serialize_str("INFINITY"),
            Value::GreaterThan(b) => {
                use serde::ser::SerializeMap;
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("greater_than", b)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Value, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(usize),
            Word(String),
            Bound { greater_than: usize },
        }
        match Repr::deserialize(deserializer)? {
            Repr::Finite(k) => Ok(Value::Finite(k)),
            Repr::Word(w) if w == "INFINITY" => Ok(Value::Infinite),
            Repr::Word(w) => Err(de::Error::custom(format!("unexpected value {w:?}"))),
            Repr::Bound { greater_than } => Ok(Value::GreaterThan(greater_than)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinityReason {
    /// The graph has neither a perfect nor an almost perfect matching (for
    /// anti-Kekulé: no perfect matching), so there is nothing to preclude.
    NoMatchingToPreclude,
    /// No edge set satisfies the predicate together with its side
    /// conditions.
    NoValidSet,
}

/// State of `G - F` for a witness `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub nu_after: usize,
    pub component_min_size: usize,
    pub components: usize,
    pub connected: bool,
}

impl Evidence {
    pub fn compute(g: &Graph, f: &EdgeSet) -> Evidence {
        let report = g.components_without(f);
        Evidence {
            nu_after: matching_number_without(g, f),
            component_min_size: report.min_size,
            components: report.count(),
            connected: report.connected,
        }
    }
}

/// A witness edge, by id and endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEdge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreclusionCertificate {
    #[serde(flatten)]
    pub kind: ProblemKind,
    pub value: Value,
    pub witness: Option<Vec<WitnessEdge>>,
    pub evidence: Option<Evidence>,
    pub infinity_reason: Option<InfinityReason>,
}

impl PreclusionCertificate {
    pub fn found(g: &Graph, kind: ProblemKind, witness: &EdgeSet) -> PreclusionCertificate {
        PreclusionCertificate {
            kind,
            value: Value::Finite(witness.len()),
            witness: Some(
                witness
                    .iter()
                    .map(|id| {
                        let (u, v) = g.edge(id);
                        WitnessEdge { id, u, v }
                    })
                    .collect(),
            ),
            evidence: Some(Evidence::compute(g, witness)),
            infinity_reason: None,
        }
    }

    pub fn infinite(kind: ProblemKind, reason: InfinityReason) -> PreclusionCertificate {
        PreclusionCertificate {
            kind,
            value: Value::Infinite,
            witness: None,
            evidence: None,
            infinity_reason: Some(reason),
        }
    }

    pub fn exceeds(kind: ProblemKind, budget: usize) -> PreclusionCertificate {
        PreclusionCertificate {
            kind,
            value: Value::GreaterThan(budget),
            witness: None,
            evidence: None,
            infinity_reason: None,
        }
    }

    pub fn witness_ids(&self) -> Option<Vec<EdgeId>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|e| e.id).collect())
    }

    /// The witness as an edge set of `g`.
    pub fn witness_set(&self, g: &Graph) -> Option<EdgeSet> {
        self.witness_ids().map(|ids| g.edge_set(ids).expect("witness ids belong to the graph"))
    }
}
