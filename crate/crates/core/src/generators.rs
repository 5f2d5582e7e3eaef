//! Named graph families and seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    Hypercube { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    Cycle { n: usize },
    Path { n: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hypercube { n } => write!(f, "hypercube {n}"),
            Family::Complete { n } => write!(f, "complete {n}"),
            Family::CompleteBipartite { a, b } => write!(f, "complete-bipartite {a} {b}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Cycle { n } => write!(f, "cycle {n}"),
            Family::Path { n } => write!(f, "path {n}"),
        }
    }
}

impl Family {
    /// Parses `name arg...`, e.g. `["hypercube", "3"]`.
    pub fn from_args<S: AsRef<str>>(args: &[S]) -> Result<Family> {
        let (name, rest) = args
            .split_first()
            .ok_or_else(|| Error::Parameter("missing family name".into()))?;
        let nums = rest
            .iter()
            .map(|s| {
                usize::from_str(s.as_ref())
                    .map_err(|_| Error::Parameter(format!("not a number: {}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let want = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "family {} takes {k} argument(s), got {}",
                    name.as_ref(),
                    nums.len()
                )))
            }
        };
        let family = match name.as_ref() {
            "hypercube" | "q" => {
                want(1)?;
                Family::Hypercube { n: nums[0] }
            }
            "complete" | "k" => {
                want(1)?;
                Family::Complete { n: nums[0] }
            }
            "complete-bipartite" | "complete_bipartite" | "kab" => {
                want(2)?;
                Family::CompleteBipartite {
                    a: nums[0],
                    b: nums[1],
                }
            }
            "petersen" => {
                want(0)?;
                Family::Petersen
            }
            "cycle" | "c" => {
                want(1)?;
                Family::Cycle { n: nums[0] }
            }
            "path" | "p" => {
                want(1)?;
                Family::Path { n: nums[0] }
            }
            other => return Err(Error::Parameter(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::Parameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

pub fn generate(family: Family) -> Result<Graph> {
    match family {
        Family::Hypercube { n } => hypercube(n),
        Family::Complete { n } => complete(n),
        Family::CompleteBipartite { a, b } => complete_bipartite(a, b),
        Family::Petersen => Ok(petersen()),
        Family::Cycle { n } => cycle(n),
        Family::Path { n } => path(n),
    }
}

/// Q_n: vertex i is adjacent to i xor 2^k. Carries the bit-parity
/// bipartition.
pub fn hypercube(n: usize) -> Result<Graph> {
    positive("hypercube dimension", n)?;
    if n > 24 {
        return Err(Error::Parameter(format!("hypercube dimension {n} is too large")));
    }
    let order = 1usize << n;
    let edges = (0..order).flat_map(|i| {
        (0..n)
            .map(move |k| (i, i ^ (1 << k)))
            .filter(|&(a, b)| a < b)
    });
    let sides = (0..order)
        .map(|i| {
            if i.count_ones() % 2 == 0 {
                Side::Left
            } else {
                Side::Right
            }
        })
        .collect();
    Graph::from_edges(order, edges)?.with_bipartition(sides)
}

pub fn complete(n: usize) -> Result<Graph> {
    positive("order", n)?;
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// K_{a,b} with vertices 0..a on the left.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    positive("left side", a)?;
    positive("right side", b)?;
    let sides = (0..a + b)
        .map(|v| if v < a { Side::Left } else { Side::Right })
        .collect();
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))?
        .with_bipartition(sides)
}

/// Outer 5-cycle 0..5, spokes i-(i+5), inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen graph is simple")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter("a cycle needs at least 3 vertices".into()));
    }
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    Ok(if n.is_multiple_of(2) { g.into_bipartite().unwrap() } else { g })
}

pub fn path(n: usize) -> Result<Graph> {
    positive("order", n)?;
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        .into_bipartite()
        .unwrap())
}

/// Balanced bipartite graph on `u_i = i`, `v_i = t + i` containing the
/// planted perfect matching `{u_i v_i}`; every other cross pair is present
/// independently with probability `extra_edge_prob`.
pub fn random_bipartite_with_pm(t: usize, extra_edge_prob: f64, seed: u64) -> Result<Graph> {
    positive("side size", t)?;
    check_probability(extra_edge_prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..t {
        for j in 0..t {
            if i == j || rng.random_bool(extra_edge_prob) {
                edges.push((i, t + j));
            }
        }
    }
    let sides = (0..2 * t)
        .map(|v| if v < t { Side::Left } else { Side::Right })
        .collect();
    Graph::from_edges(2 * t, edges)?.with_bipartition(sides)
}

/// Erdős–Rényi G(n, p). A bipartition is attached when one exists.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    positive("order", n)?;
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let sides = g.two_colouring();
    Ok(match sides {
        Some(s) => g.with_bipartition(s)?,
        None => g,
    })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("probability {p} outside [0, 1]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_3_counts() {
        let q = hypercube(3).unwrap();
        assert_eq!((q.n(), q.m()), (8, 12));
        assert!((0..8).all(|v| q.degree(v) == 3));
        assert!(q.bipartition().is_some());
        assert!(q.adjacent(0b000, 0b100));
        assert!(!q.adjacent(0b000, 0b011));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.two_colouring().is_none());
    }

    #[test]
    fn complete_bipartite_sides() {
        let g = complete_bipartite(3, 3).unwrap();
        assert_eq!(g.m(), 9);
        let sides = g.bipartition().unwrap();
        assert_eq!(sides.iter().filter(|&&s| s == Side::Left).count(), 3);
        assert_eq!(sides.iter().filter(|&&s| s == Side::Right).count(), 3);
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert!(hypercube(0).is_err());
        assert!(complete(0).is_err());
        assert!(complete_bipartite(0, 2).is_err());
        assert!(path(0).is_err());
        assert!(cycle(2).is_err());
        assert!(Family::from_args(&["hypercube", "0"]).and_then(generate).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            Family::from_args(&["hypercube", "4"]).unwrap(),
            Family::Hypercube { n: 4 }
        );
        assert_eq!(Family::from_args(&["petersen"]).unwrap(), Family::Petersen);
        assert!(Family::from_args(&["petersen", "2"]).is_err());
        assert!(Family::from_args(&["moebius", "2"]).is_err());
        assert!(Family::from_args::<&str>(&[]).is_err());
    }

    #[test]
    fn random_bipartite_edge_cases() {
        let k2 = random_bipartite_with_pm(1, 0.0, 99).unwrap();
        assert_eq!(k2.edges(), &[(0, 1)]);
        let k33 = random_bipartite_with_pm(3, 1.0, 5).unwrap();
        assert!(k33.same_edges(&complete_bipartite(3, 3).unwrap()));
        let a = random_bipartite_with_pm(4, 0.5, 7).unwrap();
        let b = random_bipartite_with_pm(4, 0.5, 7).unwrap();
        assert_eq!(a, b);
        for i in 0..4 {
            assert!(a.adjacent(i, 4 + i));
        }
        assert!(random_bipartite_with_pm(2, 1.5, 0).is_err());
    }
}
