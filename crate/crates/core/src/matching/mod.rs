//! Maximum matchings: Hopcroft–Karp when a bipartition is known, Edmonds'
//! blossom search otherwise, plus an exhaustive oracle.

mod blossom;
mod brute;
mod hopcroft_karp;

use serde::{Deserialize, Serialize};

pub use brute::{
    brute_force_matching_number, brute_force_matching_number_with_limit,
    DEFAULT_MATCHING_ORACLE_LIMIT,
};

use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};

const NONE: usize = usize::MAX;

/// A set of pairwise non-adjacent edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: EdgeSet,
    mate: Vec<Option<VertexId>>,
}

impl Matching {
    fn from_mates(g: &Graph, mate: &[usize]) -> Matching {
        let mut edges = g.empty_edge_set();
        for (v, &w) in mate.iter().enumerate() {
            if w != NONE && v < w {
                edges.insert(g.edge_between(v, w).expect("mate pairs are edges"));
            }
        }
        Matching {
            edges,
            mate: mate.iter().map(|&w| (w != NONE).then_some(w)).collect(),
        }
    }

    /// Validates that `edges` is a matching of `g`.
    pub fn from_edge_set(g: &Graph, edges: EdgeSet) -> Option<Matching> {
        g.check_tag(&edges).ok()?;
        let mut mate = vec![None; g.n()];
        for e in edges.iter() {
            let (u, v) = g.edge(e);
            if mate[u].is_some() || mate[v].is_some() {
                return None;
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        Some(Matching { edges, mate })
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.to_vec()
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v]
    }

    pub fn is_saturated(&self, v: VertexId) -> bool {
        self.mate[v].is_some()
    }

    pub fn saturated(&self) -> Vec<VertexId> {
        (0..self.mate.len()).filter(|&v| self.is_saturated(v)).collect()
    }

    pub fn unsaturated(&self) -> Vec<VertexId> {
        (0..self.mate.len()).filter(|&v| !self.is_saturated(v)).collect()
    }
}

/// Which search produced a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    HopcroftKarp,
    Blossom,
}

pub fn engine_for(g: &Graph) -> Engine {
    if g.bipartition().is_some() {
        Engine::HopcroftKarp
    } else {
        Engine::Blossom
    }
}

pub fn max_matching(g: &Graph) -> Matching {
    max_matching_without(g, &g.empty_edge_set())
}

/// Maximum matching of `g - removed`, reported in `g`'s edge ids.
pub fn max_matching_without(g: &Graph, removed: &EdgeSet) -> Matching {
    Matching::from_mates(g, &mates_without(g, removed))
}

pub fn max_matching_with(g: &Graph, removed: &EdgeSet, engine: Engine) -> Matching {
    let mate = match (engine, g.bipartition()) {
        (Engine::HopcroftKarp, Some(sides)) => hopcroft_karp::mates(g, sides, removed),
        _ => blossom::mates(g, removed),
    };
    Matching::from_mates(g, &mate)
}

fn mates_without(g: &Graph, removed: &EdgeSet) -> Vec<usize> {
    match g.bipartition() {
        Some(sides) => hopcroft_karp::mates(g, sides, removed),
        None => blossom::mates(g, removed),
    }
}

pub fn matching_number(g: &Graph) -> usize {
    matching_number_without(g, &g.empty_edge_set())
}

pub fn matching_number_without(g: &Graph, removed: &EdgeSet) -> usize {
    mates_without(g, removed).iter().filter(|&&w| w != NONE).count() / 2
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.n().is_multiple_of(2) && matching_number(g) == g.n() / 2
}

/// Always false for even order.
pub fn has_almost_perfect_matching(g: &Graph) -> bool {
    g.n() % 2 == 1 && matching_number(g) == (g.n() - 1) / 2
}

/// The maximum matching whose sorted edge ids are lexicographically
/// smallest.
pub fn max_matching_lexmin(g: &Graph) -> Matching {
    let target = matching_number(g);
    let mut blocked = g.empty_edge_set();
    let mut chosen = g.empty_edge_set();
    let mut free = vec![true; g.n()];

    let block_vertex = |blocked: &mut EdgeSet, v: VertexId| {
        for &(_, e) in g.neighbors(v) {
            blocked.insert(e);
        }
    };

    for e in 0..g.m() {
        if chosen.len() == target {
            break;
        }
        let (u, v) = g.edge(e);
        if !free[u] || !free[v] {
            continue;
        }
        let mut trial = blocked.clone();
        block_vertex(&mut trial, u);
        block_vertex(&mut trial, v);
        if chosen.len() + 1 + matching_number_without(g, &trial) == target {
            chosen.insert(e);
            free[u] = false;
            free[v] = false;
            blocked = trial;
        }
    }
    Matching::from_edge_set(g, chosen).expect("greedy picks disjoint edges")
}
