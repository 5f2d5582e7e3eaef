use std::collections::BTreeMap;

use preclusion::generators::{generate, Family};
use preclusion::preclusion::SolveStats;
use preclusion::Graph;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

pub const TOOL: &str = "preclusion";

/// Every subcommand except `gen` prints one of these as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: CommandEcho,
    pub input: Option<InputSummary>,
    pub status: Status,
    pub result: Json,
    pub stats: Option<SolveStats>,
    pub deterministic: bool,
    /// Excluded from determinism comparisons.
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: BTreeMap<String, Json>,
}

impl CommandEcho {
    pub fn new(name: &str) -> CommandEcho {
        CommandEcho {
            name: name.to_string(),
            args: BTreeMap::new(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl Serialize) -> CommandEcho {
        self.args
            .insert(key.to_string(), serde_json::to_value(value).expect("plain data serializes"));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub source: String,
    pub format: String,
    pub n: usize,
    pub m: usize,
    pub family: Option<String>,
}

impl InputSummary {
    pub fn new(source: &str, format: &str, g: &Graph) -> InputSummary {
        InputSummary {
            source: source.to_string(),
            format: format.to_string(),
            n: g.n(),
            m: g.m(),
            family: identify_family(g).map(|f| f.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Feasible,
    Infeasible,
    Pass,
    Fail,
    Ok,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Feasible | Status::Pass | Status::Ok => 0,
            Status::Infeasible | Status::Fail => 1,
        }
    }

    pub fn from_passed(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub jobs: usize,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report as JSON with the `timing` object removed, for comparing
    /// runs.
    pub fn without_timing(&self) -> Json {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing");
        v
    }
}

/// Recognises graphs that are, label for label, the output of one of the
/// named generators.
pub fn identify_family(g: &Graph) -> Option<Family> {
    let (n, m) = (g.n(), g.m());
    let mut candidates = Vec::new();
    if n.is_power_of_two() && n > 1 {
        let d = n.trailing_zeros() as usize;
        if m == d * n / 2 {
            candidates.push(Family::Hypercube { n: d });
        }
    }
    if m == n * n.saturating_sub(1) / 2 {
        candidates.push(Family::Complete { n });
    }
    if n == 10 && m == 15 {
        candidates.push(Family::Petersen);
    }
    if n >= 3 && m == n {
        candidates.push(Family::Cycle { n });
    }
    if n >= 1 && m + 1 == n {
        candidates.push(Family::Path { n });
    }
    for a in 1..n {
        if a * (n - a) == m && a <= n - a {
            candidates.push(Family::CompleteBipartite { a, b: n - a });
        }
    }
    candidates
        .into_iter()
        .find(|&f| generate(f).is_ok_and(|h| h.same_edges(g)))
}
