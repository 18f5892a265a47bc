/*!
Isomorphism testing for the small graphs in the catalog and the exhaustive
sweeps.

Both graphs are colour-refined together (degree first, then repeatedly by
the multiset of neighbour colours) so colours are comparable between them.
A backtracking search then maps vertices of equal colour, checking
adjacency against everything mapped so far. This is exponential in the
worst case but immediate on trees and on graphs of up to a few dozen
vertices.
*/

use std::collections::BTreeMap;

use crate::graph::Graph;

/// A cheap isomorphism invariant: order, size and the sorted list of
/// `(degree, sorted neighbour degrees)` per vertex.
pub type Invariant = (usize, usize, Vec<(usize, Vec<usize>)>);

pub fn invariant(g: &Graph) -> Invariant {
    let mut profile: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    profile.sort_unstable();
    (g.order(), g.size(), profile)
}

/// Stable colouring of the disjoint union of `a` and `b`; entries
/// `0..a.order()` belong to `a`.
fn joint_colours(a: &Graph, b: &Graph) -> Vec<usize> {
    let na = a.order();
    let nbrs = |v: usize| -> &[usize] {
        if v < na {
            a.neighbors(v)
        } else {
            b.neighbors(v - na)
        }
    };
    let total = na + b.order();
    let mut colour: Vec<usize> = (0..total).map(|v| nbrs(v).len()).collect();
    let mut classes = usize::MAX;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|v| {
                let offset = if v < na { 0 } else { na };
                let mut ns: Vec<usize> = nbrs(v).iter().map(|&w| colour[w + offset]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let ids: BTreeMap<&(usize, Vec<usize>), usize> =
            keys.iter().map(|k| (k, 0)).collect::<BTreeMap<_, _>>().into_keys().zip(0..).collect();
        colour = keys.iter().map(|k| ids[k]).collect();
        if ids.len() == classes {
            return colour;
        }
        classes = ids.len();
    }
}

/// A bijection `map` with `map[v]` the image in `b` of vertex `v` of `a`,
/// preserving adjacency both ways, if one exists.
///
/// # Examples
///
/// ```
/// use idcode::{iso::find_isomorphism, Graph};
///
/// let a = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
/// let b = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
/// let map = find_isomorphism(&a, &b).unwrap();
/// assert!(a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v])));
/// ```
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if invariant(a) != invariant(b) {
        return None;
    }
    let n = a.order();
    let colour = joint_colours(a, b);
    let (ca, cb) = colour.split_at(n);
    let mut hist_a = ca.to_vec();
    let mut hist_b = cb.to_vec();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();

    // Search order: connected growth, rarest colour first.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size(ca[v]), v))
            .expect("an unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in a.neighbors(next) {
            links[w] += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, ca, cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..b.order() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&p| a.has_edge(x, p) == b.has_edge(y, map[p]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}
