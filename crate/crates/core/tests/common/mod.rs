//! Reference implementations used only as test oracles. They share nothing
//! with the library beyond the `Graph` accessors.

#![allow(dead_code)]

use factorlab::Graph;

/// `min_{h in set} |d − h|`.
pub fn distance(d: i64, set: &[i64]) -> u64 {
    set.iter().map(|&h| (d - h).unsigned_abs()).min().expect("nonempty set")
}

/// Exhaustive optimum: `(δ, I-sets as degree bitmasks, optimum count,
/// smallest optimal edge mask)` over all `2^|E|` subgraphs, uniform set.
pub fn brute_optimum(graph: &Graph, set: &[i64]) -> (u64, Vec<u64>, u64, u64) {
    brute_optimum_per_vertex(graph, &vec![set.to_vec(); graph.order()])
}

/// As [`brute_optimum`] with one set per vertex.
pub fn brute_optimum_per_vertex(graph: &Graph, sets: &[Vec<i64>]) -> (u64, Vec<u64>, u64, u64) {
    let edges = graph.edges();
    let m = edges.len();
    assert!(m <= 30, "oracle limited to 30 edges");
    let g = graph.order();
    let mut best = u64::MAX;
    let mut isets = vec![0u64; g];
    let mut count = 0u64;
    let mut witness = 0u64;
    let mut deg = vec![0i64; g];
    for mask in 0u64..1 << m {
        deg.iter_mut().for_each(|d| *d = 0);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let dev: u64 = deg.iter().zip(sets).map(|(&d, set)| distance(d, set)).sum();
        if dev < best {
            best = dev;
            isets.iter_mut().for_each(|s| *s = 0);
            count = 0;
            witness = mask;
        }
        if dev == best {
            count += 1;
            for (s, &d) in isets.iter_mut().zip(&deg) {
                *s |= 1 << d;
            }
        }
    }
    (best, isets, count, witness)
}

/// Whether some spanning subgraph has every degree in `set`, by depth-first
/// choice over edges with degrees capped at `max(set)`.
pub fn brute_has_factor(graph: &Graph, set: &[i64]) -> bool {
    let cap = *set.iter().max().expect("nonempty set");
    if cap < 0 {
        return graph.order() == 0;
    }
    let mut deg = vec![0i64; graph.order()];
    fn go(edges: &[(usize, usize)], i: usize, deg: &mut [i64], set: &[i64], cap: i64) -> bool {
        if i == edges.len() {
            return deg.iter().all(|d| set.contains(d));
        }
        let (u, v) = edges[i];
        if deg[u] < cap && deg[v] < cap {
            deg[u] += 1;
            deg[v] += 1;
            let found = go(edges, i + 1, deg, set, cap);
            deg[u] -= 1;
            deg[v] -= 1;
            if found {
                return true;
            }
        }
        go(edges, i + 1, deg, set, cap)
    }
    go(graph.edges(), 0, &mut deg, set, cap)
}

/// Perfect matching by matching the lowest unmatched vertex every way.
pub fn brute_perfect_matching(graph: &Graph) -> bool {
    fn go(graph: &Graph, unmatched: u64) -> bool {
        if unmatched == 0 {
            return true;
        }
        let v = unmatched.trailing_zeros() as usize;
        let mut candidates = graph.adjacency()[v] & unmatched;
        while candidates != 0 {
            let w = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if go(graph, unmatched & !(1 << v) & !(1 << w)) {
                return true;
            }
        }
        false
    }
    graph.order().is_multiple_of(2) && go(graph, if graph.order() == 64 { u64::MAX } else { (1 << graph.order()) - 1 })
}

/// Odd components of the graph restricted to `keep`, by direct flood fill.
pub fn odd_components(graph: &Graph, keep: u64) -> usize {
    let mut left = keep;
    let mut odd = 0;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let mut grown = comp;
            for v in 0..graph.order() {
                if comp >> v & 1 == 1 {
                    grown |= graph.adjacency()[v] & keep;
                }
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        odd += (comp.count_ones() % 2) as usize;
        left &= !comp;
    }
    odd
}

/// `{1, 3, ..., 2n − 1, 2n}`.
pub fn h_n(n: i64) -> Vec<i64> {
    (1..=n).map(|i| 2 * i - 1).chain([2 * n]).collect()
}

pub fn h_n_star(n: i64) -> Vec<i64> {
    let mut s = h_n(n);
    s.insert(0, -1);
    s
}

pub fn h_o(n: i64) -> Vec<i64> {
    (1..=n).map(|i| 2 * i - 1).collect()
}
