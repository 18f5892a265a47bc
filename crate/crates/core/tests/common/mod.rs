//! Test-side oracles, written against plain adjacency matrices so they
//! share no code with the library's bitset routines.

#![allow(dead_code)]

use idcode::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        m[a][b] = true;
        m[b][a] = true;
    }
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = true;
    }
    m
}

/// The code neighbourhood of every vertex of `x` as a sorted id list.
fn signatures(m: &[Vec<bool>], code: &[usize], x: &[usize]) -> Vec<Vec<usize>> {
    x.iter().map(|&v| code.iter().copied().filter(|&c| m[v][c]).collect()).collect()
}

/// `code` dominates `x` and gives its members distinct code neighbourhoods.
pub fn naive_xy_identifies(g: &Graph, x: &[usize], code: &[usize]) -> bool {
    let m = matrix(g);
    let mut sig = signatures(&m, code, x);
    if sig.iter().any(Vec::is_empty) {
        return false;
    }
    sig.sort();
    sig.windows(2).all(|w| w[0] != w[1])
}

pub fn naive_identifies(g: &Graph, code: &[usize]) -> bool {
    naive_xy_identifies(g, &(0..g.order()).collect::<Vec<_>>(), code)
}

/// Members of the bitmask `mask` over `0..n`.
pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// The smallest identifying code size by subsets of increasing size, or
/// `None` when the graph has closed twins. Limited to `n ≤ 16`.
pub fn naive_gamma(g: &Graph) -> Option<usize> {
    let n = g.order();
    assert!(n <= 16);
    (0..=n)
        .find(|&k| (0u64..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| naive_identifies(g, &members(m, n))))
}

/// Closed twins by direct row comparison.
pub fn naive_has_closed_twins(g: &Graph) -> bool {
    let m = matrix(g);
    (0..g.order()).any(|a| (a + 1..g.order()).any(|b| m[a] == m[b]))
}

pub fn naive_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == v && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A random permutation of `0..n` from `seed`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

/// Any simple graph on `1..=max_n` vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).expect("distinct pairs")
        })
    })
}

/// A connected triangle-free graph from the library generator.
pub fn triangle_free(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0usize..=100, any::<u64>())
        .prop_map(|(n, extra, seed)| idcode::families::random_triangle_free(n, n - 1 + extra * n / 100, seed))
}
