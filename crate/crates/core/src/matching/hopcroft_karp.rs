use std::collections::VecDeque;

use crate::graph::{EdgeSet, Graph, Side, VertexId};

const NONE: usize = usize::MAX;

/// Maximum matching of `g - removed` by layered augmenting paths.
/// Returns the mate array. `sides` must be a proper colouring of `g`.
pub(crate) fn mates(g: &Graph, sides: &[Side], removed: &EdgeSet) -> Vec<usize> {
    let n = g.n();
    let left: Vec<VertexId> = (0..n).filter(|&v| sides[v] == Side::Left).collect();
    let mut mate = vec![NONE; n];
    let mut dist = vec![usize::MAX; n];

    loop {
        // BFS from free left vertices over alternating paths.
        let mut queue = VecDeque::new();
        for &u in &left {
            if mate[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.neighbors(u) {
                if removed.contains(e) {
                    continue;
                }
                match mate[v] {
                    NONE => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for &u in &left {
            if mate[u] == NONE && augment(g, removed, u, &mut mate, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    mate
}

fn augment(g: &Graph, removed: &EdgeSet, u: VertexId, mate: &mut [usize], dist: &mut [usize]) -> bool {
    for &(v, e) in g.neighbors(u) {
        if removed.contains(e) {
            continue;
        }
        let w = mate[v];
        let next = w == NONE || (dist[w] == dist[u] + 1 && augment(g, removed, w, mate, dist));
        if next {
            mate[u] = v;
            mate[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
