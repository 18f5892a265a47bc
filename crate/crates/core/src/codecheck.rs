/*!
Verification predicates for identifying codes.

A set `C` is an identifying code of `G` when every vertex has a non-empty
code neighbourhood `N[v] ∩ C` and no two vertices share one. The
`(X, Y)` variants restrict both conditions to the vertices of `X` and the
code to a subset of `Y`.

Vertex `w` separates `u` and `v` when it lies in exactly one of `N[u]` and
`N[v]`.
*/

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

/// One reason a set fails to be an identifying code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// The vertex has an empty code neighbourhood.
    Undominated(usize),
    /// The two vertices (smaller first) have equal code neighbourhoods.
    Unseparated(usize, usize),
}

/// Contract violations of the `(X, Y)` predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("code vertex {0} is not in the allowed set Y")]
    CodeOutsideY(usize),
}

/// `N[v] ∩ C`.
///
/// # Examples
///
/// ```
/// use idcode::{codecheck::code_neighborhood, Graph, VertexSet};
///
/// let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
/// let c = VertexSet::from([0, 2]);
/// assert_eq!(code_neighborhood(&p3, &c, 1).unwrap(), c);
/// ```
pub fn code_neighborhood(g: &Graph, c: &VertexSet, v: usize) -> Result<VertexSet, GraphError> {
    Ok(g.closed_neighborhood(v)?.intersection(c))
}

fn assert_vertices(g: &Graph, s: &VertexSet) {
    if let Err(e) = g.check_vertices(s) {
        panic!("{e}");
    }
}

/// True iff every vertex of `x` has a code vertex in its closed
/// neighbourhood. Panics if `c` or `x` contains a non-vertex.
pub fn is_dominating(g: &Graph, c: &VertexSet, x: &VertexSet) -> bool {
    assert_vertices(g, c);
    assert_vertices(g, x);
    x.iter().all(|v| !g.nbhd(v).is_disjoint(c))
}

/// Members of `x` sorted by code neighbourhood (ties by id), paired with
/// that neighbourhood.
fn signatures(g: &Graph, c: &VertexSet, x: &VertexSet) -> Vec<(VertexSet, usize)> {
    let mut sigs: Vec<(VertexSet, usize)> = x.iter().map(|v| (g.nbhd(v).intersection(c), v)).collect();
    sigs.sort_unstable_by(|a, b| a.0.words().cmp(b.0.words()).then(a.1.cmp(&b.1)));
    sigs
}

/// All pairs `(a, b)`, `a < b`, of members of `x` whose code neighbourhoods
/// coincide, sorted lexicographically. Undominated members of `x` are
/// reported pairwise here as well, since they all share the empty
/// neighbourhood. Panics if `c` or `x` contains a non-vertex.
pub fn unseparated_pairs(g: &Graph, c: &VertexSet, x: &VertexSet) -> Vec<(usize, usize)> {
    assert_vertices(g, c);
    assert_vertices(g, x);
    let sigs = signatures(g, c, x);
    let mut pairs = Vec::new();
    let mut start = 0;
    while start < sigs.len() {
        let mut end = start + 1;
        while end < sigs.len() && sigs[end].0 == sigs[start].0 {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                pairs.push((sigs[i].1, sigs[j].1));
            }
        }
        start = end;
    }
    pairs.sort_unstable();
    pairs
}

/// Members of `x` involved in at least one unseparated pair.
pub fn unseparated_vertices(g: &Graph, c: &VertexSet, x: &VertexSet) -> VertexSet {
    unseparated_pairs(g, c, x).into_iter().flat_map(|(a, b)| [a, b]).collect()
}

/// True iff no two members of `x` share a code neighbourhood.
pub fn is_separating(g: &Graph, c: &VertexSet, x: &VertexSet) -> bool {
    assert_vertices(g, c);
    assert_vertices(g, x);
    signatures(g, c, x).windows(2).all(|w| w[0].0 != w[1].0)
}

/// True iff `c` is an identifying code of `g`. Panics if `c` contains a
/// non-vertex.
///
/// # Examples
///
/// ```
/// use idcode::{codecheck::is_identifying, Graph, VertexSet};
///
/// let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
/// assert!(is_identifying(&c6, &VertexSet::from([0, 2, 4])));
/// assert!(!is_identifying(&c6, &VertexSet::from([0, 3])));
/// ```
pub fn is_identifying(g: &Graph, c: &VertexSet) -> bool {
    let v = g.vertex_set();
    is_dominating(g, c, &v) && is_separating(g, c, &v)
}

/// True iff `c ⊆ y` dominates `x` and separates every pair of `x`.
pub fn is_xy_identifying(g: &Graph, x: &VertexSet, y: &VertexSet, c: &VertexSet) -> Result<bool, CodeError> {
    g.check_vertices(x)?;
    g.check_vertices(y)?;
    g.check_vertices(c)?;
    if let Some(bad) = c.difference(y).first() {
        return Err(CodeError::CodeOutsideY(bad));
    }
    Ok(is_dominating(g, c, x) && is_separating(g, c, x))
}

/// Drops members of the identifying code `c` one at a time, in increasing
/// id order, whenever the remainder still identifies `g`. Members of
/// `keep` stay.
pub fn prune_redundant(g: &Graph, c: &VertexSet, keep: &VertexSet) -> VertexSet {
    let order: Vec<usize> = c.iter().collect();
    prune_redundant_in_order(g, c, keep, &order)
}

/// As [`prune_redundant`], trying the vertices in the given order.
pub fn prune_redundant_in_order(g: &Graph, c: &VertexSet, keep: &VertexSet, order: &[usize]) -> VertexSet {
    let mut code = c.clone();
    for &v in order {
        if keep.contains(v) || !code.remove(v) {
            continue;
        }
        if !is_identifying(g, &code) {
            code.insert(v);
        }
    }
    code
}

/// Every violation of the identifying-code conditions on `x`: undominated
/// vertices first in increasing order, then unseparated pairs among the
/// dominated vertices in lexicographic order.
pub fn violations(g: &Graph, c: &VertexSet, x: &VertexSet) -> Vec<Violation> {
    let undominated: VertexSet = x.iter().filter(|&v| g.nbhd(v).is_disjoint(c)).collect();
    let mut out: Vec<Violation> = undominated.iter().map(Violation::Undominated).collect();
    out.extend(
        unseparated_pairs(g, c, &x.difference(&undominated)).into_iter().map(|(a, b)| Violation::Unseparated(a, b)),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn code_neighborhoods() {
        let p3 = path(3);
        assert_eq!(code_neighborhood(&p3, &VertexSet::from([0, 2]), 1).unwrap().to_vec(), vec![0, 2]);
        assert!(code_neighborhood(&p3, &VertexSet::new(), 1).unwrap().is_empty());
        assert!(code_neighborhood(&cycle(4), &VertexSet::from([0]), 2).unwrap().is_empty());
        assert!(code_neighborhood(&p3, &VertexSet::new(), 7).is_err());
    }

    #[test]
    fn domination() {
        let all4 = VertexSet::full(4);
        assert!(is_dominating(&cycle(4), &VertexSet::from([0, 2]), &all4));
        assert!(!is_dominating(&path(3), &VertexSet::from([0]), &VertexSet::full(3)));
        assert!(is_dominating(&path(3), &VertexSet::new(), &VertexSet::new()));
    }

    #[test]
    fn unseparated() {
        assert_eq!(
            unseparated_pairs(&cycle(4), &VertexSet::from([0]), &VertexSet::full(4)),
            vec![(0, 1), (0, 3), (1, 3)]
        );
        assert!(unseparated_pairs(&path(3), &VertexSet::full(3), &VertexSet::full(3)).is_empty());
        assert_eq!(unseparated_pairs(&path(2), &VertexSet::full(2), &VertexSet::full(2)), vec![(0, 1)]);
    }

    #[test]
    fn identifying_examples() {
        assert!(is_identifying(&cycle(6), &VertexSet::from([0, 2, 4])));
        let p4 = path(4);
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(!is_identifying(&p4, &VertexSet::from([a, b])));
            }
        }
        assert!(!is_identifying(&path(2), &VertexSet::full(2)));
    }

    #[test]
    fn xy_examples() {
        let p3 = path(3);
        let v = VertexSet::full(3);
        assert_eq!(is_xy_identifying(&p3, &v, &v, &v), Ok(true));
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaves = VertexSet::from([1, 2, 3]);
        let res = is_xy_identifying(&star, &leaves, &VertexSet::full(4), &VertexSet::from([1, 2]));
        assert_eq!(res, Ok(false));
        assert_eq!(is_xy_identifying(&p3, &VertexSet::new(), &v, &VertexSet::new()), Ok(true));
        assert_eq!(
            is_xy_identifying(&p3, &v, &VertexSet::from([0]), &VertexSet::from([0, 1])),
            Err(CodeError::CodeOutsideY(1))
        );
    }

    #[test]
    fn violation_listing() {
        let p3 = path(3);
        let got = violations(&p3, &VertexSet::from([0]), &VertexSet::full(3));
        assert_eq!(got, vec![Violation::Undominated(2), Violation::Unseparated(0, 1)]);
        let got = violations(&path(2), &VertexSet::full(2), &VertexSet::full(2));
        assert_eq!(got, vec![Violation::Unseparated(0, 1)]);
    }
}
