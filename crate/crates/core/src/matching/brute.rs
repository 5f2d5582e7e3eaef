use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the exhaustive matching oracle accepts.
pub const DEFAULT_MATCHING_ORACLE_LIMIT: usize = 20;

/// Matching number by exhaustive search: the lowest vertex of each vertex
/// subset is either left unmatched or matched to a neighbour in the subset,
/// memoised over all 2^n subsets. Refuses graphs with more than `limit`
/// vertices.
pub fn brute_force_matching_number_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    let n = g.n();
    if n > limit.min(24) {
        return Err(Error::OracleLimit {
            size: n,
            limit,
            unit: "vertices",
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &(w, _)| acc | 1 << w))
        .collect();
    let mut memo = vec![u8::MAX; 1 << n];
    Ok(nu(&adj, (1u32 << n) - 1, &mut memo) as usize)
}

pub fn brute_force_matching_number(g: &Graph) -> Result<usize> {
    brute_force_matching_number_with_limit(g, DEFAULT_MATCHING_ORACLE_LIMIT)
}

fn nu(adj: &[u32], set: u32, memo: &mut [u8]) -> u8 {
    if set.count_ones() < 2 {
        return 0;
    }
    if memo[set as usize] != u8::MAX {
        return memo[set as usize];
    }
    let v = set.trailing_zeros();
    let rest = set & !(1 << v);
    let mut best = nu(adj, rest, memo);
    let mut partners = adj[v as usize] & rest;
    while partners != 0 {
        let w = partners.trailing_zeros();
        partners &= partners - 1;
        best = best.max(1 + nu(adj, rest & !(1 << w), memo));
    }
    memo[set as usize] = best;
    best
}
