/*!
Immutable simple undirected graphs on the vertex ids `0..n`.

Besides basic adjacency queries this module carries the structural helpers
the constructor depends on: twin detection, triangle witnesses, components,
deletion with an explicit id map, bridge-based cycle-edge selection and the
boundary decomposition around an edge.
*/

use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Errors raised when building or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("the graph has no edge lying on a cycle")]
    NoCycleEdge,
}

/// A simple undirected graph with vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted. Adjacency lists are
/// sorted and the closed neighbourhoods `N[v]` are precomputed as bitsets,
/// since nearly every query in the crate is phrased in terms of them.
///
/// # Examples
///
/// ```
/// use idcode::Graph;
///
/// let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
/// assert_eq!(p3.closed_neighborhood(1).unwrap().to_vec(), vec![0, 1, 2]);
/// assert_eq!(p3.find_open_twins(), Some((0, 2)));
/// ```
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    closed: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints
    /// outside `0..n`. Edge orientation is irrelevant.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &list {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let closed = (0..n)
            .map(|v| {
                let mut s: VertexSet = adj[v].iter().copied().collect();
                s.insert(v);
                s
            })
            .collect();
        Ok(Graph { n, edges: list, adj, closed })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("edgeless graph is valid")
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list with `u < v` in every pair.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Closed neighbourhood `N[v]` as a precomputed set. Panics if `v` is
    /// out of range; see [`Graph::closed_neighborhood`] for a checked form.
    pub fn nbhd(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// The full vertex set `{0, ..., n-1}`.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Returns an error unless every member of `s` is a vertex.
    pub fn check_vertices(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) if v >= self.n => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<&VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(&self.closed[v])
    }

    /// `N(v)`.
    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().copied().collect())
    }

    /// Lexicographically smallest pair `u < v` with `N[u] = N[v]`.
    pub fn find_closed_twins(&self) -> Option<(usize, usize)> {
        first_equal_pair(self.n, |v| &self.closed[v])
    }

    /// Lexicographically smallest pair `u < v` with `N(u) = N(v)`.
    pub fn find_open_twins(&self) -> Option<(usize, usize)> {
        first_equal_pair(self.n, |v| &self.adj[v])
    }

    /// A graph is identifiable exactly when it has no closed twins.
    pub fn is_identifiable(&self) -> bool {
        self.find_closed_twins().is_none()
    }

    /// Lexicographically smallest triangle `(a, b, c)` with `a < b < c`.
    pub fn triangle_witness(&self) -> Option<(usize, usize, usize)> {
        for &(a, b) in &self.edges {
            let common = self.closed[a].intersection(&self.closed[b]);
            if let Some(c) = common.iter().find(|&c| c > b) {
                return Some((a, b, c));
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle_witness().is_none()
    }

    /// Connected components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::singleton(s);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True for the null graph as well as for any graph with one component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Removes the vertices in `vertices` (with their incident edges) and
    /// the listed `edges`, then re-indexes the surviving vertices in
    /// increasing order. Returns the new graph and the id map.
    pub fn delete(&self, vertices: &VertexSet, edges: &[(usize, usize)]) -> Result<(Graph, IdMap), GraphError> {
        self.check_vertices(vertices)?;
        for &(a, b) in edges {
            if !self.has_edge(a, b) {
                return Err(GraphError::NotAnEdge(a, b));
            }
        }
        let dropped: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let map = IdMap::keeping(self.n, &self.vertex_set().difference(vertices));
        let kept = self
            .edges
            .iter()
            .filter(|e| !dropped.contains(e))
            .filter_map(|&(a, b)| Some((map.to_new(a)?, map.to_new(b)?)));
        let g = Graph::new(map.new_order(), kept.collect::<Vec<_>>())?;
        Ok((g, map))
    }

    /// Subgraph induced by `keep`, with the id map from `self` to it.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, IdMap) {
        self.delete(&self.vertex_set().difference(keep), &[]).expect("complement of a vertex subset is valid")
    }

    /// Same vertex ids, listed edges removed.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut dropped = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if !self.has_edge(a, b) {
                return Err(GraphError::NotAnEdge(a, b));
            }
            dropped.push((a.min(b), a.max(b)));
        }
        Graph::new(self.n, self.edges.iter().copied().filter(|e| !dropped.contains(e)))
    }

    /// Same vertex ids with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
            .expect("relabelling by a permutation preserves validity")
    }

    /// All bridges, sorted, found with one iterative low-link DFS pass.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut clock = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (x, parent, i) = *top;
                if i < self.adj[x].len() {
                    top.2 += 1;
                    let y = self.adj[x][i];
                    if disc[y] == usize::MAX {
                        disc[y] = clock;
                        low[y] = clock;
                        clock += 1;
                        stack.push((y, x, 0));
                    } else if y != parent {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[x]);
                        if low[x] > disc[parent] {
                            out.push((parent.min(x), parent.max(x)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Among the edges lying on a cycle (the non-bridges), one maximising
    /// `deg(u) + deg(v)`; ties go to the lexicographically smallest edge.
    pub fn pick_cycle_edge(&self) -> Result<(usize, usize), GraphError> {
        let bridges = self.bridges();
        self.edges
            .iter()
            .filter(|e| bridges.binary_search(e).is_err())
            .max_by(|&&(a, b), &&(c, d)| {
                let (s, t) = (self.degree(a) + self.degree(b), self.degree(c) + self.degree(d));
                s.cmp(&t).then((c, d).cmp(&(a, b)))
            })
            .copied()
            .ok_or(GraphError::NoCycleEdge)
    }

    /// The sets `N_u`, `N_v`, `A`, `A_uv` and its complement around the
    /// edge `uv`.
    pub fn boundary_decomposition(&self, u: usize, v: usize) -> Result<BoundaryDecomposition, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut n_u = self.open_neighborhood(u)?;
        n_u.remove(v);
        let mut n_v = self.open_neighborhood(v)?;
        n_v.remove(u);
        let a = n_u.union(&n_v);
        let mut a_uv = a.clone();
        a_uv.insert(u);
        a_uv.insert(v);
        let abar_uv = self.vertex_set().difference(&a_uv);
        Ok(BoundaryDecomposition { u, v, n_u, n_v, a, a_uv, abar_uv })
    }
}

fn first_equal_pair<'a, T: Ord + ?Sized + 'a>(n: usize, key: impl Fn(usize) -> &'a T) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
    order.windows(2).filter(|w| key(w[0]) == key(w[1])).map(|w| (w[0], w[1])).min()
}

/// Vertex sets around an edge `uv`, as used by the main induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub u: usize,
    pub v: usize,
    /// `N(u) ∖ {v}`.
    pub n_u: VertexSet,
    /// `N(v) ∖ {u}`.
    pub n_v: VertexSet,
    /// `N_u ∪ N_v`.
    pub a: VertexSet,
    /// `A ∪ {u, v}`.
    pub a_uv: VertexSet,
    /// `V ∖ A_uv`.
    pub abar_uv: VertexSet,
}

/// Correspondence between vertex ids of a graph and of a graph obtained
/// from it by deleting vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl IdMap {
    /// The map that keeps exactly `kept` (a subset of `0..old_order`) and
    /// numbers the survivors in increasing order.
    pub fn keeping(old_order: usize, kept: &VertexSet) -> IdMap {
        let mut old_to_new = vec![None; old_order];
        let new_to_old: Vec<usize> = kept.iter().collect();
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        IdMap { old_to_new, new_to_old }
    }

    /// Identity map on `0..n`.
    pub fn identity(n: usize) -> IdMap {
        IdMap::keeping(n, &VertexSet::full(n))
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn new_order(&self) -> usize {
        self.new_to_old.len()
    }

    /// Images of the members of `s` that survived.
    pub fn set_to_new(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.to_new(v)).collect()
    }

    pub fn set_to_old(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_old(v)).collect()
    }

    /// The composite `self` followed by `next`.
    pub fn then(&self, next: &IdMap) -> IdMap {
        let old_to_new = self.old_to_new.iter().map(|x| x.and_then(|m| next.to_new(m))).collect();
        let new_to_old = next.new_to_old.iter().map(|&m| self.to_old(m)).collect();
        IdMap { old_to_new, new_to_old }
    }
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

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn closed_neighborhoods() {
        let p3 = path(3);
        assert_eq!(p3.closed_neighborhood(1).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(p3.closed_neighborhood(0).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(Graph::empty(3).closed_neighborhood(2).unwrap().to_vec(), vec![2]);
        assert!(p3.closed_neighborhood(3).is_err());
    }

    #[test]
    fn twins() {
        let k2 = path(2);
        let k3 = cycle(3);
        assert_eq!(k2.find_closed_twins(), Some((0, 1)));
        assert_eq!(path(3).find_closed_twins(), None);
        assert_eq!(k3.find_closed_twins(), Some((0, 1)));
        assert_eq!(cycle(4).find_open_twins(), Some((0, 2)));
        assert_eq!(path(3).find_open_twins(), Some((0, 2)));
        assert_eq!(path(4).find_open_twins(), None);
    }

    #[test]
    fn open_twin_oracle_on_p4() {
        let g = path(4);
        for a in 0..4 {
            for b in a + 1..4 {
                assert_ne!(g.open_neighborhood(a).unwrap(), g.open_neighborhood(b).unwrap());
            }
        }
    }

    #[test]
    fn triangles() {
        assert_eq!(cycle(3).triangle_witness(), Some((0, 1, 2)));
        assert_eq!(cycle(4).triangle_witness(), None);
        let p = petersen();
        let brute = (0..10).any(|a| {
            (a + 1..10).any(|b| (b + 1..10).any(|c| p.has_edge(a, b) && p.has_edge(b, c) && p.has_edge(a, c)))
        });
        assert!(!brute);
        assert_eq!(p.triangle_witness(), None);
    }

    #[test]
    fn components_sorted() {
        assert_eq!(cycle(5).components(), vec![VertexSet::full(5)]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components(), vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
        assert_eq!(Graph::empty(3).components().len(), 3);
    }

    #[test]
    fn deletion() {
        let (g, map) = cycle(4).delete(&VertexSet::new(), &[(0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2), (2, 3)]);
        assert_eq!(map, IdMap::identity(4));
        let (g, map) = path(3).delete(&VertexSet::singleton(1), &[]).unwrap();
        assert_eq!(g, Graph::empty(2));
        assert_eq!((map.to_new(2), map.to_old(1)), (Some(1), 2));
        assert_eq!(cycle(4).delete(&VertexSet::new(), &[]).unwrap().0, cycle(4));
        assert!(cycle(4).delete(&VertexSet::new(), &[(0, 2)]).is_err());
        assert!(cycle(4).delete(&VertexSet::singleton(9), &[]).is_err());
    }

    #[test]
    fn cycle_edge_choice() {
        // C4 plus a pendant vertex 4 at 0: cycle edges (0,1),(0,3) sum to 5.
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.pick_cycle_edge(), Ok((0, 1)));
        assert_eq!(path(6).pick_cycle_edge(), Err(GraphError::NoCycleEdge));
        assert_eq!(cycle(5).pick_cycle_edge(), Ok((0, 1)));
    }

    #[test]
    fn bridges_of_two_cycles_joined_by_a_path() {
        let g = Graph::new(8, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)]).unwrap();
        assert_eq!(g.bridges(), vec![(2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn boundary() {
        let b = cycle(4).boundary_decomposition(0, 1).unwrap();
        assert_eq!((b.n_u.to_vec(), b.n_v.to_vec()), (vec![3], vec![2]));
        assert_eq!(b.a.to_vec(), vec![2, 3]);
        assert!(b.abar_uv.is_empty());
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let b = star.boundary_decomposition(0, 1).unwrap();
        assert_eq!((b.n_u.to_vec(), b.n_v.to_vec()), (vec![2, 3], vec![]));
        assert!(b.abar_uv.is_empty());
        let b = cycle(6).boundary_decomposition(0, 1).unwrap();
        assert_eq!(b.abar_uv.to_vec(), vec![3, 4]);
        assert!(cycle(6).boundary_decomposition(0, 2).is_err());
    }

    #[test]
    fn id_map_composition() {
        let a = IdMap::keeping(5, &VertexSet::from([0, 2, 3, 4]));
        let b = IdMap::keeping(4, &VertexSet::from([1, 3]));
        let c = a.then(&b);
        assert_eq!((c.to_old(0), c.to_old(1)), (2, 4));
        assert_eq!((c.to_new(2), c.to_new(0), c.to_new(1)), (Some(0), None, None));
    }
}
