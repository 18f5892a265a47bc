/*!
The exceptional graphs and instance generators.

For `Δ = 3` the exceptional family `F_3` consists of twelve trees `T0..T11`
together with `P4`, `C4` and `C7`; for `Δ ≥ 4` it is the star `K_{1,Δ}`
alone. Every member satisfies `Δ·γID = (Δ-1)·n + 1`.

Catalog trees are numbered in the reading order of their standard drawing
(the order in which the drawing declares its nodes). Each entry's code is
the set of black vertices of that drawing.

| tree | n  | edges (beyond the T-specific core)                                   | code |
|------|----|----------------------------------------------------------------------|------|
| T0   | 4  | 0-1 1-2 1-3                                                          | 0 2 3 |
| T1   | 7  | 0-1 1-2 1-3 0-4 4-5 4-6                                              | 0 2 3 5 6 |
| T2   | 7  | 0-1 0-2 0-3 3-4 4-5 5-6                                              | 1 2 3 4 5 |
| T3   | 10 | 0-1 0-2 0-3 3-4 4-5 4-6 3-7 7-8 8-9                                  | 1 2 5 6 7 8 9 |
| T4   | 10 | 0-1 1-2 1-3 0-4 4-5 4-6 0-7 7-8 7-9                                  | 0 2 3 5 6 8 9 |
| T5   | 10 | 0-1 1-2 1-3 2-4 4-5 4-6 0-7 7-8 7-9                                  | 0 2 3 5 6 8 9 |
| T6   | 13 | T5 with 3-7 7-8 7-9 inserted, later ids shifted by 3                 | 0 2 3 5 6 8 9 11 12 |
| T7   | 13 | 0-1 1-2 1-3 2-10 10-11 10-12 0-4 4-5 4-6 0-7 7-8 7-9                 | 0 2 3 5 6 8 9 11 12 |
| T8   | 16 | T6 with 0-13 13-14 13-15                                             | 0 2 3 5 6 8 9 11 12 14 15 |
| T9   | 16 | T7 with 2-13 13-14 13-15                                             | T7 code plus 14 15 |
| T10  | 19 | T9 with 3-16 16-17 16-18                                             | T9 code plus 17 18 |
| T11  | 22 | T10 with 3-19 19-20 19-21                                            | T10 code plus 20 21 |

`P4`, `C4` and `C7` use the path/cycle order, and `Star(k)` has centre 0
and leaves `1..=k`.
*/

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codecheck::{is_identifying, prune_redundant};
use crate::exact::{closed_form_code, gamma_id_exact, ClosedFormKind};
use crate::graph::Graph;
use crate::iso;
use crate::vertex_set::VertexSet;

/// A member of the exceptional families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilyId {
    /// One of the twelve exceptional subcubic trees, `T(0)..=T(11)`.
    T(u8),
    P4,
    C4,
    C7,
    /// `K_{1,Δ}` with `Δ ≥ 3`. For `Δ = 3` this is the same graph as `T0`.
    Star(usize),
}

impl FamilyId {
    /// `T0..T11`.
    pub fn trees() -> Vec<FamilyId> {
        (0..12).map(FamilyId::T).collect()
    }

    /// All of `F_3`: the twelve trees, then `P4`, `C4`, `C7`.
    pub fn f3() -> Vec<FamilyId> {
        let mut all = FamilyId::trees();
        all.extend([FamilyId::P4, FamilyId::C4, FamilyId::C7]);
        all
    }

    /// The `Δ` whose family this member belongs to.
    pub fn family_delta(&self) -> usize {
        match self {
            FamilyId::Star(d) => *d,
            _ => 3,
        }
    }

    fn validate(self) -> Result<FamilyId, FamilyError> {
        match self {
            FamilyId::T(i) if i > 11 => Err(FamilyError::UnknownFamily(self.to_string())),
            FamilyId::Star(d) if d < 3 => Err(FamilyError::UnknownFamily(self.to_string())),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::T(i) => write!(f, "T{i}"),
            FamilyId::P4 => write!(f, "P4"),
            FamilyId::C4 => write!(f, "C4"),
            FamilyId::C7 => write!(f, "C7"),
            FamilyId::Star(d) => write!(f, "Star{d}"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    /// Accepts `T0`..`T11`, `P4`, `C4`, `C7` and `Star<k>` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || FamilyError::UnknownFamily(s.to_string());
        let id = match lower.as_str() {
            "p4" => FamilyId::P4,
            "c4" => FamilyId::C4,
            "c7" => FamilyId::C7,
            _ => {
                if let Some(k) = lower.strip_prefix("star") {
                    FamilyId::Star(k.parse().map_err(|_| unknown())?)
                } else if let Some(i) = lower.strip_prefix('t') {
                    FamilyId::T(i.parse().map_err(|_| unknown())?)
                } else {
                    return Err(unknown());
                }
            }
        };
        id.validate()
    }
}

impl From<FamilyId> for String {
    fn from(id: FamilyId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for FamilyId {
    type Error = FamilyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family member `{0}`")]
    UnknownFamily(String),
    #[error("{0} is not one of the trees T0..T11")]
    NotATree(FamilyId),
    #[error("T2 has no optimal code containing every vertex of degree at most 2")]
    UnsupportedForT2,
    #[error("T3 has no optimal independent code containing every vertex of degree at most 2")]
    UnsupportedForT3,
    #[error("{0}-{1} is already an edge or not a pair of distinct vertices")]
    NotANonEdge(usize, usize),
    #[error("adding {0}-{1} creates a triangle")]
    CreatesTriangle(usize, usize),
    #[error("adding {0}-{1} raises the maximum degree above 3")]
    DegreeExceeded(usize, usize),
}

/// A catalog graph with a minimum identifying code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: FamilyId,
    pub graph: Graph,
    pub optimal_code: VertexSet,
    pub gamma: usize,
    pub order: usize,
    /// The `Δ` of the family the entry belongs to (3 for `P4`, `C4`, `C7`).
    pub delta: usize,
}

const T7_EDGES: [(usize, usize); 12] =
    [(0, 1), (1, 2), (1, 3), (2, 10), (10, 11), (10, 12), (0, 4), (4, 5), (4, 6), (0, 7), (7, 8), (7, 9)];
const T7_CODE: [usize; 9] = [0, 2, 3, 5, 6, 8, 9, 11, 12];
const T6_EDGES: [(usize, usize); 12] =
    [(0, 1), (1, 2), (1, 3), (2, 4), (4, 5), (4, 6), (3, 7), (7, 8), (7, 9), (0, 10), (10, 11), (10, 12)];

fn tree_data(i: u8) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let cat = |a: &[(usize, usize)], b: &[(usize, usize)]| [a, b].concat();
    match i {
        0 => (4, vec![(0, 1), (1, 2), (1, 3)], vec![0, 2, 3]),
        1 => (7, vec![(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6)], vec![0, 2, 3, 5, 6]),
        2 => (7, vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)], vec![1, 2, 3, 4, 5]),
        3 => (
            10,
            vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (3, 7), (7, 8), (8, 9)],
            vec![1, 2, 5, 6, 7, 8, 9],
        ),
        4 => (
            10,
            vec![(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6), (0, 7), (7, 8), (7, 9)],
            vec![0, 2, 3, 5, 6, 8, 9],
        ),
        5 => (
            10,
            vec![(0, 1), (1, 2), (1, 3), (2, 4), (4, 5), (4, 6), (0, 7), (7, 8), (7, 9)],
            vec![0, 2, 3, 5, 6, 8, 9],
        ),
        6 => (13, T6_EDGES.to_vec(), vec![0, 2, 3, 5, 6, 8, 9, 11, 12]),
        7 => (13, T7_EDGES.to_vec(), T7_CODE.to_vec()),
        8 => (16, cat(&T6_EDGES, &[(0, 13), (13, 14), (13, 15)]), vec![0, 2, 3, 5, 6, 8, 9, 11, 12, 14, 15]),
        9 => (16, cat(&T7_EDGES, &[(2, 13), (13, 14), (13, 15)]), [&T7_CODE[..], &[14, 15]].concat()),
        10 => (
            19,
            cat(&T7_EDGES, &[(2, 13), (13, 14), (13, 15), (3, 16), (16, 17), (16, 18)]),
            [&T7_CODE[..], &[14, 15, 17, 18]].concat(),
        ),
        11 => (
            22,
            cat(&T7_EDGES, &[(2, 13), (13, 14), (13, 15), (3, 16), (16, 17), (16, 18), (3, 19), (19, 20), (19, 21)]),
            [&T7_CODE[..], &[14, 15, 17, 18, 20, 21]].concat(),
        ),
        _ => unreachable!("tree index validated by the caller"),
    }
}

/// The catalog graph of `id` with its code.
///
/// # Examples
///
/// ```
/// use idcode::families::{make_family, FamilyId};
///
/// let t11 = make_family(FamilyId::T(11)).unwrap();
/// assert_eq!((t11.order, t11.gamma), (22, 15));
/// assert_eq!(make_family(FamilyId::Star(5)).unwrap().gamma, 5);
/// ```
pub fn make_family(id: FamilyId) -> Result<CatalogEntry, FamilyError> {
    let id = id.validate()?;
    let (graph, code) = match id {
        FamilyId::T(i) => {
            let (n, edges, code) = tree_data(i);
            (Graph::new(n, edges).expect("catalog tree is valid"), VertexSet::from(code))
        }
        FamilyId::P4 => {
            (make_standard(StandardGraph::Path(4)), closed_form_code(ClosedFormKind::Path, 4).expect("P4 is in range"))
        }
        FamilyId::C4 => (
            make_standard(StandardGraph::Cycle(4)),
            closed_form_code(ClosedFormKind::Cycle, 4).expect("C4 is in range"),
        ),
        FamilyId::C7 => (
            make_standard(StandardGraph::Cycle(7)),
            closed_form_code(ClosedFormKind::Cycle, 7).expect("C7 is in range"),
        ),
        FamilyId::Star(d) => (make_standard(StandardGraph::Star(d)), (1..=d).collect()),
    };
    Ok(CatalogEntry {
        id,
        order: graph.order(),
        gamma: code.len(),
        delta: id.family_delta(),
        graph,
        optimal_code: code,
    })
}

/// Named graphs with canonical vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardGraph {
    /// `0-1-...-(n-1)`.
    Path(usize),
    /// `0-1-...-(n-1)-0`; `n ≥ 3`.
    Cycle(usize),
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Centre 0, leaves `1..=k`.
    Star(usize),
}

/// Builds a [`StandardGraph`]. Panics on a cycle with fewer than 3 vertices.
///
/// # Examples
///
/// ```
/// use idcode::families::{make_standard, StandardGraph};
///
/// assert_eq!(make_standard(StandardGraph::CompleteBipartite(3, 3)).size(), 9);
/// assert_eq!(make_standard(StandardGraph::Path(4)).edges(), &[(0, 1), (1, 2), (2, 3)]);
/// ```
pub fn make_standard(kind: StandardGraph) -> Graph {
    let built = match kind {
        StandardGraph::Path(n) => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        StandardGraph::Cycle(n) => {
            assert!(n >= 3, "a cycle needs at least 3 vertices");
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        StandardGraph::CompleteBipartite(a, b) => {
            Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        }
        StandardGraph::Star(k) => Graph::new(k + 1, (1..=k).map(|i| (0, i))),
    };
    built.expect("standard graphs are simple")
}

/// Matches `g` against `F_Δ` and returns the member together with a map
/// from catalog vertex ids to vertices of `g`.
pub fn recognize(g: &Graph, delta: usize) -> Option<(FamilyId, Vec<usize>)> {
    if delta < 3 {
        return None;
    }
    let candidates = if delta == 3 { FamilyId::f3() } else { vec![FamilyId::Star(delta)] };
    candidates.into_iter().find_map(|id| {
        let entry = make_family(id).expect("candidate ids are valid");
        if entry.graph.order() != g.order() || entry.graph.size() != g.size() {
            return None;
        }
        iso::find_isomorphism(&entry.graph, g).map(|map| (id, map))
    })
}

/// The member of `F_Δ` isomorphic to `g`, if any. For `Δ = 3` the star
/// `K_{1,3}` is reported as `T0`.
///
/// # Examples
///
/// ```
/// use idcode::families::{in_f_delta, make_standard, FamilyId, StandardGraph};
///
/// let c7 = make_standard(StandardGraph::Cycle(7));
/// assert_eq!(in_f_delta(&c7, 3), Some(FamilyId::C7));
/// assert_eq!(in_f_delta(&c7, 4), None);
/// ```
pub fn in_f_delta(g: &Graph, delta: usize) -> Option<FamilyId> {
    recognize(g, delta).map(|(id, _)| id)
}

/// The catalog code of a tree `T0..T11` that contains every vertex of
/// degree at most 2; with `independent`, one that is also an independent
/// set.
pub fn tree_code_all_low_degree(id: FamilyId, independent: bool) -> Result<VertexSet, FamilyError> {
    match id.validate()? {
        FamilyId::T(2) => Err(FamilyError::UnsupportedForT2),
        FamilyId::T(3) if independent => Err(FamilyError::UnsupportedForT3),
        FamilyId::T(_) => Ok(make_family(id)?.optimal_code),
        other => Err(FamilyError::NotATree(other)),
    }
}

/// How [`tree_plus_edge_code`] obtained its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeEdgeRoute {
    /// The catalog code already identifies `T + e`.
    CatalogCode,
    /// The `T3` leaf swap `{s} ∪ C ∖ {u'}`.
    LeafSwap,
    /// A code vertex shifted off an end of `e`, then redundant vertices
    /// pruned.
    Shift,
    /// Exact search on `T + e`.
    Exact,
}

/// An identifying code of `T + e` with `3|C| < 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePlusEdge {
    pub code: VertexSet,
    pub route: TreeEdgeRoute,
}

/// Checks `e` against `T` and returns `T + e`.
pub fn admissible_tree_edge(tree: &Graph, (a, b): (usize, usize)) -> Result<Graph, FamilyError> {
    if a == b || a >= tree.order() || b >= tree.order() || tree.has_edge(a, b) {
        return Err(FamilyError::NotANonEdge(a, b));
    }
    if !tree.nbhd(a).is_disjoint(tree.nbhd(b)) {
        return Err(FamilyError::CreatesTriangle(a, b));
    }
    if tree.degree(a) >= 3 || tree.degree(b) >= 3 {
        return Err(FamilyError::DegreeExceeded(a, b));
    }
    Ok(tree.with_edge(a, b).expect("checked to be a new edge"))
}

/// A code of size below `2n/3` for a catalog tree plus an admissible edge.
///
/// For `T2` the catalog code is reused. For `T3` the catalog code is used
/// unless `e` joins two leaves at distance 4, in which case the leaf next
/// to `u` on the same support vertex `s` is swapped for `s`. For the other
/// trees a code vertex at an end `u` of `e` is shifted to a neighbour, so
/// that the new edge changes only the code neighbourhood of `u`, and the
/// result is pruned. Every candidate is verified; if none reaches the
/// bound the exact solver decides.
pub fn tree_plus_edge_code(id: FamilyId, e: (usize, usize)) -> Result<TreePlusEdge, FamilyError> {
    let entry = match id.validate()? {
        FamilyId::T(_) => make_family(id)?,
        other => return Err(FamilyError::NotATree(other)),
    };
    let g = admissible_tree_edge(&entry.graph, e)?;
    let n = g.order();
    let good = |c: &VertexSet| 3 * c.len() < 2 * n && is_identifying(&g, c);
    let (a, b) = e;
    let catalog = entry.optimal_code.clone();

    let mut candidates: Vec<(VertexSet, TreeEdgeRoute)> = Vec::new();
    match id {
        FamilyId::T(2) | FamilyId::T(3) => {
            candidates.push((prune_redundant(&g, &catalog, &VertexSet::new()), TreeEdgeRoute::CatalogCode));
            if id == FamilyId::T(3) {
                for (u, v) in [(a, b), (b, a)] {
                    if let Some(swap) = t3_leaf_swap(&entry.graph, &catalog, u, v) {
                        candidates.push((prune_redundant(&g, &swap, &VertexSet::new()), TreeEdgeRoute::LeafSwap));
                    }
                }
            }
        }
        _ => {
            for u in [a, b] {
                for &w in entry.graph.neighbors(u) {
                    let mut shifted = catalog.clone();
                    shifted.remove(u);
                    shifted.insert(w);
                    if is_identifying(&g, &shifted) {
                        candidates.push((prune_redundant(&g, &shifted, &VertexSet::new()), TreeEdgeRoute::Shift));
                    }
                }
            }
        }
    }
    if let Some((code, route)) = candidates.into_iter().find(|(c, _)| good(c)) {
        return Ok(TreePlusEdge { code, route });
    }
    let code = gamma_id_exact(&g, None).expect("T + e is small and identifiable").code;
    Ok(TreePlusEdge { code, route: TreeEdgeRoute::Exact })
}

/// `{s} ∪ C ∖ {u'}` when `u`, `v` are leaves at distance 4, `s` is the
/// support vertex of `u` and `u'` the other leaf on `s`.
fn t3_leaf_swap(tree: &Graph, code: &VertexSet, u: usize, v: usize) -> Option<VertexSet> {
    if tree.degree(u) != 1 || tree.degree(v) != 1 || tree_distance(tree, u, v) != 4 {
        return None;
    }
    let s = tree.neighbors(u)[0];
    let u2 = *tree.neighbors(s).iter().find(|&&x| x != u && tree.degree(x) == 1)?;
    let mut c = code.clone();
    c.remove(u2);
    c.insert(s);
    Some(c)
}

fn tree_distance(g: &Graph, from: usize, to: usize) -> usize {
    let mut dist = vec![usize::MAX; g.order()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist[to]
}

/// A connected triangle-free graph determined by `(n, target_edges, seed)`.
///
/// A uniformly random recursive spanning tree is grown first; the
/// remaining vertex pairs are then visited in random order and each is
/// added when it closes no triangle, until `target_edges` is reached or no
/// pair is left.
///
/// # Examples
///
/// ```
/// use idcode::families::random_triangle_free;
///
/// let g = random_triangle_free(12, 16, 7);
/// assert!(g.is_connected() && g.is_triangle_free());
/// assert_eq!(g, random_triangle_free(12, 16, 7));
/// ```
pub fn random_triangle_free(n: usize, target_edges: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut adj = vec![VertexSet::new(); n];
    let mut edges = Vec::new();
    let add = |a: usize, b: usize, adj: &mut Vec<VertexSet>, edges: &mut Vec<(usize, usize)>| {
        adj[a].insert(b);
        adj[b].insert(a);
        edges.push((a.min(b), a.max(b)));
    };
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        add(order[i], parent, &mut adj, &mut edges);
    }
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !adj[a].contains(b)).collect();
    pairs.shuffle(&mut rng);
    for (a, b) in pairs {
        if edges.len() >= target_edges {
            break;
        }
        if adj[a].is_disjoint(&adj[b]) {
            add(a, b, &mut adj, &mut edges);
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A random connected triangle-free graph plus `t` extra edges, each
/// closing at least one triangle. Returns the graph and the planted edges
/// (which form a valid triangle-deletion set). Fewer than `t` edges are
/// planted if the base graph has no suitable pair left.
pub fn planted_triangles(n: usize, base_edges: usize, t: usize, seed: u64) -> (Graph, Vec<(usize, usize)>) {
    let base = random_triangle_free(n, base_edges, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !base.has_edge(a, b) && !base.nbhd(a).is_disjoint(base.nbhd(b)))
        .collect();
    pairs.shuffle(&mut rng);
    let planted: Vec<(usize, usize)> = pairs.into_iter().take(t).collect();
    let g = Graph::new(n, base.edges().iter().copied().chain(planted.iter().copied()))
        .expect("planted pairs are non-edges");
    (g, planted)
}
