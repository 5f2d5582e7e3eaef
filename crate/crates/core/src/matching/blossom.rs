//! Edmonds' blossom-contraction search, O(V^3).

use std::collections::VecDeque;

use crate::graph::{EdgeSet, Graph, VertexId};

const NONE: usize = usize::MAX;

pub(crate) fn mates(g: &Graph, removed: &EdgeSet) -> Vec<usize> {
    let mut search = Search::new(g, removed);
    search.greedy();
    for root in 0..g.n() {
        if search.mate[root] == NONE {
            if let Some(end) = search.find_path(root) {
                search.augment(end);
            }
        }
    }
    search.mate
}

struct Search<'a> {
    g: &'a Graph,
    removed: &'a EdgeSet,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<VertexId>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, removed: &'a EdgeSet) -> Self {
        let n = g.n();
        Search {
            g,
            removed,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn live_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + 'a {
        let removed = self.removed;
        self.g
            .neighbors(v)
            .iter()
            .filter(move |&&(_, e)| !removed.contains(e))
            .map(|&(w, _)| w)
    }

    fn greedy(&mut self) {
        for v in 0..self.g.n() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(w) = self.live_neighbors(v).find(|&w| self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    fn lca(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: VertexId, b: VertexId, mut child: VertexId) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: VertexId) -> Option<VertexId> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            let nbrs: Vec<VertexId> = self.live_neighbors(v).collect();
            for to in nbrs {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom onto its base.
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: VertexId) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
