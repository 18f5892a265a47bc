/*!
Greedy `(X, Y)`-separating sets and `(X, Y)`-identifying codes.

A generalisation of Bondy's theorem on induced subsets: if every pair of
`X` is separated by some vertex of `Y`, then some `C ⊆ Y` with
`|C| ≤ |X| - 1` separates all of them. The proof is constructive. Keep the
partition of `X` into classes of equal code neighbourhood; while a class
has two members, add a vertex of `Y` separating them. That splits the
class, so the number of classes grows at every step and at most `|X| - 1`
steps are needed. Adding a dominator for the at most one undominated
vertex of `X` turns the result into an identifying code of size `|X|`.
*/

use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BondyError {
    #[error("no vertex of Y separates {0} and {1}")]
    NotSeparable(usize, usize),
    #[error("no vertex of Y dominates {0}")]
    NotDominable(usize),
}

/// The classes of `X` under "same code neighbourhood".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    /// Groups the members of `x` by `N[v] ∩ c`; parts are ordered by their
    /// smallest member.
    pub fn by_code(g: &Graph, x: &VertexSet, c: &VertexSet) -> Partition {
        let mut keyed: Vec<(VertexSet, usize)> = x.iter().map(|v| (g.nbhd(v).intersection(c), v)).collect();
        keyed.sort_unstable_by(|a, b| a.0.words().cmp(b.0.words()).then(a.1.cmp(&b.1)));
        let mut parts: Vec<VertexSet> = Vec::new();
        for (i, (key, v)) in keyed.iter().enumerate() {
            if i > 0 && keyed[i - 1].0 == *key {
                parts.last_mut().expect("a part was opened").insert(*v);
            } else {
                parts.push(VertexSet::singleton(*v));
            }
        }
        parts.sort_unstable_by_key(|p| p.first());
        Partition { parts }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The non-singleton part with the smallest minimum, if any.
    pub fn first_nontrivial(&self) -> Option<&VertexSet> {
        self.parts.iter().find(|p| p.len() > 1)
    }
}

/// A greedy run: the separating set and the number of parts after each
/// step, starting with the partition by the empty code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyRun {
    pub code: VertexSet,
    pub part_counts: Vec<usize>,
}

/// Smallest `y ∈ Y` in exactly one of `N[a]` and `N[b]`.
fn separator(g: &Graph, y: &VertexSet, a: usize, b: usize) -> Option<usize> {
    g.nbhd(a).symmetric_difference(g.nbhd(b)).intersection(y).first()
}

/// Like [`greedy_separating`] but also reports how the partition grew.
pub fn greedy_separating_run(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<GreedyRun, BondyError> {
    let members = x.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if separator(g, y, a, b).is_none() {
                return Err(BondyError::NotSeparable(a, b));
            }
        }
    }
    let mut code = VertexSet::new();
    let mut partition = Partition::by_code(g, x, &code);
    let mut part_counts = vec![partition.len()];
    while let Some(part) = partition.first_nontrivial() {
        let mut it = part.iter();
        let (a, b) = (it.next().expect("part has two members"), it.next().expect("part has two members"));
        let s = separator(g, y, a, b).expect("separability was checked up front");
        code.insert(s);
        partition = Partition::by_code(g, x, &code);
        part_counts.push(partition.len());
    }
    Ok(GreedyRun { code, part_counts })
}

/// `C ⊆ Y` with `|C| ≤ |X| - 1` separating every pair of `X`.
///
/// # Examples
///
/// ```
/// use idcode::{bondy::greedy_separating, Graph, VertexSet};
///
/// let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
/// let leaves = VertexSet::from([1, 2, 3]);
/// let c = greedy_separating(&star, &leaves, &star.vertex_set()).unwrap();
/// assert_eq!(c, VertexSet::from([1, 2]));
/// ```
pub fn greedy_separating(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<VertexSet, BondyError> {
    greedy_separating_run(g, x, y).map(|r| r.code)
}

/// `C ⊆ Y` with `|C| ≤ |X|` that dominates and separates `X`.
pub fn greedy_xy_identifying(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<VertexSet, BondyError> {
    if let Some(v) = x.iter().find(|&v| g.nbhd(v).is_disjoint(y)) {
        return Err(BondyError::NotDominable(v));
    }
    let mut code = greedy_separating(g, x, y)?;
    if let Some(v) = x.iter().find(|&v| g.nbhd(v).is_disjoint(&code)) {
        let d = g.nbhd(v).intersection(y).first().expect("domination was checked up front");
        code.insert(d);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecheck::{is_separating, is_xy_identifying};

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn p3() {
        let g = path(3);
        let v = g.vertex_set();
        let s = greedy_separating(&g, &v, &v).unwrap();
        assert!(s.len() <= 2 && is_separating(&g, &s, &v));
        let c = greedy_xy_identifying(&g, &v, &v).unwrap();
        assert!(c.len() <= 3 && is_xy_identifying(&g, &v, &v, &c).unwrap());
    }

    #[test]
    fn trivial_inputs() {
        let g = path(3);
        assert!(greedy_separating(&g, &VertexSet::singleton(1), &g.vertex_set()).unwrap().is_empty());
        assert!(greedy_xy_identifying(&g, &VertexSet::new(), &g.vertex_set()).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let k2 = path(2);
        let v = k2.vertex_set();
        assert_eq!(greedy_separating(&k2, &v, &v), Err(BondyError::NotSeparable(0, 1)));
        let g = path(4);
        assert_eq!(
            greedy_xy_identifying(&g, &VertexSet::from([0]), &VertexSet::from([3])),
            Err(BondyError::NotDominable(0))
        );
        // 0 and 3 are far apart, so the dominator 2 of 3 separates them.
        assert!(greedy_separating(&g, &VertexSet::from([0, 3]), &VertexSet::from([2])).is_ok());
        assert_eq!(
            greedy_separating(&Graph::empty(2), &VertexSet::from([0, 1]), &VertexSet::new()),
            Err(BondyError::NotSeparable(0, 1))
        );
    }

    #[test]
    fn partition_growth_is_strict() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 3)]).unwrap();
        let v = g.vertex_set();
        let run = greedy_separating_run(&g, &v, &v).unwrap();
        assert!(run.part_counts.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*run.part_counts.last().unwrap(), 7);
    }
}
