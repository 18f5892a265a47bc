/*!
Exhaustive enumeration of small graphs.

Every labelled graph on `n ≤ 7` vertices is visited as a bitmask over the
`n(n-1)/2` vertex pairs; survivors of the filter are deduplicated up to
isomorphism by bucketing on [`iso::invariant`] and testing within buckets.
*/

use std::collections::HashMap;

use crate::graph::Graph;
use crate::iso;

/// Largest order accepted by the enumerators.
pub const MAX_ENUM_ORDER: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Calls `visit` on every labelled simple graph on `n` vertices.
/// Panics if `n > MAX_ENUM_ORDER`.
pub fn for_each_labelled(n: usize, mut visit: impl FnMut(&Graph)) {
    assert!(n <= MAX_ENUM_ORDER, "enumeration is limited to {MAX_ENUM_ORDER} vertices");
    let all = pairs(n);
    for mask in 0u32..(1 << all.len()) {
        let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        visit(&Graph::new(n, edges).expect("distinct pairs form a simple graph"));
    }
}

/// One representative per isomorphism class of connected triangle-free
/// graphs on `n` vertices, in order of first labelled appearance.
pub fn connected_triangle_free(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_ENUM_ORDER, "enumeration is limited to {MAX_ENUM_ORDER} vertices");
    let all = pairs(n);
    let index = |a: usize, b: usize| all.iter().position(|&p| p == (a, b)).expect("pair exists");
    // Bit masks of the pairs that would close a triangle with a given pair.
    let mut triangles: Vec<(u32, u32)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triangles.push((1 << index(a, b) | 1 << index(b, c), 1 << index(a, c)));
            }
        }
    }
    let mut buckets: HashMap<iso::Invariant, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        if triangles.iter().any(|&(two, third)| mask & two == two && mask & third != 0) {
            continue;
        }
        let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let g = Graph::new(n, edges).expect("distinct pairs form a simple graph");
        if !g.is_connected() {
            continue;
        }
        let bucket = buckets.entry(iso::invariant(&g)).or_default();
        if bucket.iter().any(|&i| iso::are_isomorphic(&reps[i], &g)) {
            continue;
        }
        bucket.push(reps.len());
        reps.push(g);
    }
    reps
}
