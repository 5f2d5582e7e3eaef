//! Immutable simple undirected graphs, edge subsets and component queries.
//!
//! Vertices are dense indices `0..n`. Edges are stored as `(u, v)` with
//! `u < v`, sorted lexicographically, so an edge's index is determined by
//! the graph's edge set alone. Everything that enumerates fault sets works
//! on edge indices and [`EdgeSet`] bit vectors.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Side of a vertex in a two-colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn as_bit(self) -> u8 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Side> {
        match bit {
            0 => Some(Side::Left),
            1 => Some(Side::Right),
            _ => None,
        }
    }
}

/// Content hash identifying a graph; two graphs with the same vertex count
/// and edges share a tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphTag(pub u64);

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    bipartition: Option<Vec<Side>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
    tag: GraphTag,
}

impl Graph {
    /// Builds a simple graph. Edge order in the input is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(list.len());
        for (id, &(u, v)) in list.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
            lookup.insert((u, v), id);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        list.hash(&mut hasher);
        let tag = GraphTag(hasher.finish());

        Ok(Graph {
            n,
            edges: list,
            adjacency,
            bipartition: None,
            lookup,
            tag,
        })
    }

    /// Attaches a two-colouring; every edge must join opposite sides.
    pub fn with_bipartition(mut self, sides: Vec<Side>) -> Result<Graph> {
        if sides.len() != self.n {
            return Err(Error::Parameter(format!(
                "bipartition has {} labels for {} vertices",
                sides.len(),
                self.n
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| sides[u] == sides[v]) {
            return Err(Error::NotBipartite(u, v));
        }
        self.bipartition = Some(sides);
        Ok(self)
    }

    /// Returns the graph with a BFS two-colouring attached, or `None` if it
    /// has an odd cycle.
    pub fn into_bipartite(self) -> Option<Graph> {
        if self.bipartition.is_some() {
            return Some(self);
        }
        let sides = self.two_colouring()?;
        Some(self.with_bipartition(sides).expect("colouring is proper"))
    }

    pub fn two_colouring(&self) -> Option<Vec<Side>> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(Side::Left);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &(y, _) in &self.adjacency[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(sx.flip());
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Neighbours of `v` with the connecting edge, sorted by neighbour.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn bipartition(&self) -> Option<&[Side]> {
        self.bipartition.as_deref()
    }

    pub fn side(&self, v: VertexId) -> Option<Side> {
        self.bipartition.as_ref().map(|s| s[v])
    }

    /// Same vertex count and edge set, ignoring bipartition labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges == other.edges
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.m() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange { edge: e, m: self.m() })
        }
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::empty(self)
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        let mut set = EdgeSet::empty(self);
        set.bits.insert_range(..);
        set
    }

    pub fn edge_set<I: IntoIterator<Item = EdgeId>>(&self, ids: I) -> Result<EdgeSet> {
        let mut set = EdgeSet::empty(self);
        for e in ids {
            self.check_edge(e)?;
            set.bits.insert(e);
        }
        Ok(set)
    }

    /// Edge set from endpoint pairs; every pair must be an edge.
    pub fn edge_set_from_pairs<I>(&self, pairs: I) -> Result<EdgeSet>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut set = EdgeSet::empty(self);
        for (u, v) in pairs {
            let e = self.edge_between(u, v).ok_or_else(|| {
                Error::Parameter(format!("{u}-{v} is not an edge of the graph"))
            })?;
            set.bits.insert(e);
        }
        Ok(set)
    }

    pub fn check_tag(&self, f: &EdgeSet) -> Result<()> {
        if f.tag == self.tag && f.bits.len() == self.m() {
            Ok(())
        } else {
            Err(Error::TagMismatch)
        }
    }

    /// `g - f`. Vertices keep their ids; the returned mapping sends each
    /// surviving edge id to its id in `self`.
    pub fn delete_edges(&self, f: &EdgeSet) -> Result<(Graph, Vec<EdgeId>)> {
        self.check_tag(f)?;
        let kept: Vec<EdgeId> = (0..self.m()).filter(|&e| !f.contains(e)).collect();
        let mut g = Graph::from_edges(self.n, kept.iter().map(|&e| self.edges[e]))?;
        g.bipartition = self.bipartition.clone();
        Ok((g, kept))
    }

    pub fn components(&self) -> ComponentReport {
        self.components_without(&self.empty_edge_set())
    }

    /// Components of `self - removed` without materialising the subgraph.
    pub fn components_without(&self, removed: &EdgeSet) -> ComponentReport {
        let mut label = vec![usize::MAX; self.n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            label[start] = id;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &(y, e) in &self.adjacency[x] {
                    if label[y] == usize::MAX && !removed.contains(e) {
                        label[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        ComponentReport::new(components)
    }

    pub fn is_connected(&self) -> bool {
        self.components().connected
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.same_edges(other) && self.bipartition == other.bipartition
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("bipartite", &self.bipartition.is_some())
            .finish()
    }
}

/// A subset of one graph's edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    tag: GraphTag,
    bits: FixedBitSet,
}

impl EdgeSet {
    pub fn empty(g: &Graph) -> EdgeSet {
        EdgeSet {
            tag: g.tag,
            bits: FixedBitSet::with_capacity(g.m()),
        }
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.bits.contains(e)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        let fresh = !self.bits.contains(e);
        self.bits.insert(e);
        fresh
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        let present = self.bits.contains(e);
        self.bits.set(e, false);
        present
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn complement(&self) -> EdgeSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        EdgeSet { tag: self.tag, bits }
    }

    /// Endpoint pairs of the members, in id order.
    pub fn endpoints(&self, g: &Graph) -> Vec<(VertexId, VertexId)> {
        self.iter().map(|e| g.edge(e)).collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Connected components of a graph, each sorted, listed by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Vec<VertexId>>,
    pub min_size: usize,
    pub connected: bool,
}

impl ComponentReport {
    fn new(components: Vec<Vec<VertexId>>) -> ComponentReport {
        let min_size = components.iter().map(Vec::len).min().unwrap_or(0);
        let connected = components.len() == 1;
        ComponentReport {
            components,
            min_size,
            connected,
        }
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = cycle(5);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            assert!(g.neighbors(u).contains(&(v, e)));
            assert!(g.neighbors(v).contains(&(u, e)));
        }
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.m());
    }

    #[test]
    fn bipartition_must_be_proper() {
        let g = cycle(4);
        let sides = vec![Side::Left, Side::Right, Side::Left, Side::Right];
        assert!(g.clone().with_bipartition(sides).is_ok());
        let bad = vec![Side::Left, Side::Left, Side::Right, Side::Right];
        assert!(matches!(g.with_bipartition(bad), Err(Error::NotBipartite(..))));
        assert!(cycle(5).into_bipartite().is_none());
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = cycle(6);
        let (h, map) = g.delete_edges(&g.empty_edge_set()).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn c4_minus_an_edge_is_p4() {
        let g = cycle(4);
        let f = g.edge_set_from_pairs([(3, 0)]).unwrap();
        let (h, map) = g.delete_edges(&f).unwrap();
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(h.same_edges(&p4));
        for (new, &old) in map.iter().enumerate() {
            assert_eq!(h.edge(new), g.edge(old));
        }
    }

    #[test]
    fn k2_minus_its_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let (h, _) = g.delete_edges(&g.full_edge_set()).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 0);
        let report = h.components();
        assert_eq!(report.count(), 2);
        assert_eq!(report.min_size, 1);
        assert!(!report.connected);
    }

    #[test]
    fn foreign_edge_set_is_rejected() {
        let g = cycle(4);
        let h = cycle(5);
        assert_eq!(g.delete_edges(&h.empty_edge_set()).unwrap_err(), Error::TagMismatch);
        // Identical content shares the tag.
        assert!(g.delete_edges(&cycle(4).empty_edge_set()).is_ok());
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let report = g.components();
        assert_eq!(report.components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(report.min_size, 2);
        assert!(!report.connected);
    }

    #[test]
    fn complement_and_subset() {
        let g = cycle(5);
        let f = g.edge_set([0, 3]).unwrap();
        let c = f.complement();
        assert_eq!(c.to_vec(), vec![1, 2, 4]);
        assert!(!f.is_subset(&c));
        assert!(f.is_subset(&g.full_edge_set()));
        assert!(g.edge_set([7]).is_err());
    }
}
