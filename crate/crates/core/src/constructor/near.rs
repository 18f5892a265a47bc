use std::collections::BTreeMap;

use crate::bondy::greedy_xy_identifying;
use crate::codecheck::{prune_redundant, unseparated_vertices};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

use super::builder::Builder;
use super::{
    certified_bound, check_input, issue, CaseLabel, Certificate, ConstructError, ConstructOptions, TriangleDeletion,
};

/// Largest `t` for which certificates also report the minimum deletion
/// size.
pub const MAX_BRUTE_FORCE_T: usize = 4;

/// Edges whose removal leaves `g` triangle-free, chosen greedily: each
/// round removes the edge on the most remaining triangles, ties going to
/// the lexicographically smallest edge.
///
/// Every removed edge lies on a triangle of the current graph, so a
/// connected graph stays connected.
///
/// # Examples
///
/// ```
/// use idcode::constructor::triangle_deletion_set;
/// use idcode::Graph;
///
/// let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
/// assert_eq!(triangle_deletion_set(&k4), vec![(0, 1), (2, 3)]);
/// ```
pub fn triangle_deletion_set(g: &Graph) -> Vec<(usize, usize)> {
    let mut h = g.clone();
    let mut out = Vec::new();
    loop {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(a, b) in h.edges() {
            for c in h.nbhd(a).intersection(h.nbhd(b)).iter().filter(|&c| c > b) {
                for e in [(a, b), (a, c), (b, c)] {
                    *counts.entry(e).or_default() += 1;
                }
            }
        }
        let mut best: Option<((usize, usize), usize)> = None;
        for (&e, &k) in &counts {
            if best.is_none_or(|(_, bk)| k > bk) {
                best = Some((e, k));
            }
        }
        let Some((e, _)) = best else { break };
        h = h.without_edges(&[e]).expect("counted edges exist");
        out.push(e);
    }
    out
}

/// The fewest edges whose deletion makes `g` triangle-free, if that number
/// is at most `limit`.
pub fn min_triangle_deletion_size(g: &Graph, limit: usize) -> Option<usize> {
    fn hits_all(g: &Graph, k: usize) -> bool {
        let Some((a, b, c)) = g.triangle_witness() else { return true };
        k > 0
            && [(a, b), (a, c), (b, c)]
                .iter()
                .any(|&e| hits_all(&g.without_edges(&[e]).expect("triangle edges exist"), k - 1))
    }
    (0..=limit).find(|&k| hits_all(g, k))
}

fn validate_deletion_set(g: &Graph, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, ConstructError> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        let e = (a.min(b), a.max(b));
        if !g.has_edge(e.0, e.1) {
            return Err(ConstructError::InvalidDeletionSet(format!("{a}-{b} is not an edge")));
        }
        if out.contains(&e) {
            return Err(ConstructError::InvalidDeletionSet(format!("{a}-{b} is listed twice")));
        }
        out.push(e);
    }
    Ok(out)
}

/// A verified code of a connected identifiable graph with `Δ ≥ 3` that
/// becomes triangle-free after deleting the `t` edges `e_t` (found by
/// [`triangle_deletion_set`] when absent), certified against
/// `Δ·|C| ≤ (Δ-1)·n + 4tΔ + 1`. With `t = 0` the triangle-free bound is
/// certified instead.
///
/// The code of `G - E_t` is built first; the vertices it fails to
/// separate in `G` are then identified by a greedy `(S, V)`-identifying
/// patch.
pub fn construct_near_triangle_free(
    g: &Graph,
    e_t: Option<&[(usize, usize)]>,
    opts: &ConstructOptions,
) -> Result<Certificate, ConstructError> {
    check_input(g)?;
    let delta = g.max_degree();
    if delta < 3 {
        return Err(ConstructError::DeltaTooSmall(delta));
    }
    let edges = match e_t {
        Some(list) => validate_deletion_set(g, list)?,
        None => triangle_deletion_set(g),
    };
    let gt = g.without_edges(&edges).expect("deletion set was validated");
    if let Some((a, b, c)) = gt.triangle_witness() {
        return Err(ConstructError::InvalidDeletionSet(format!("the triangle {a}-{b}-{c} remains")));
    }
    if !gt.is_connected() {
        return Err(ConstructError::InvalidDeletionSet("deleting the edges disconnects the graph".to_string()));
    }

    let mut builder = Builder::new(opts);
    let root: Vec<usize> = (0..g.order()).collect();
    let code_t = builder.build(&gt, &root);

    let all = g.vertex_set();
    let mut damage = Vec::with_capacity(edges.len());
    for &(a, b) in &edges {
        let h = gt.with_edge(a, b).expect("deleted edges are absent from G - E_t");
        let d = unseparated_vertices(&h, &code_t, &all).len();
        if d > 4 {
            return Err(ConstructError::InvariantViolated(format!("adding {a}-{b} leaves {d} vertices unseparated")));
        }
        damage.push(d);
    }
    let t = edges.len();
    let unseparated = unseparated_vertices(g, &code_t, &all);
    if unseparated.len() > 4 * t {
        return Err(ConstructError::InvariantViolated(format!(
            "{} unseparated vertices after restoring {t} edges",
            unseparated.len()
        )));
    }
    let patch =
        greedy_xy_identifying(g, &unseparated, &all).map_err(|e| ConstructError::InvariantViolated(e.to_string()))?;
    let joined = code_t.union(&patch);
    let code = prune_redundant(g, &joined, &VertexSet::new());
    builder.step(
        CaseLabel::CorollaryPatch,
        format!("t={t}, |S|={}, patch {}, size {} -> {}", unseparated.len(), patch.len(), joined.len(), code.len()),
    );

    let bound = if t == 0 {
        certified_bound(g)
    } else {
        let d = delta as u64;
        ((d - 1) * g.order() as u64 + 4 * t as u64 * d + 1, d, None)
    };
    let deletion = TriangleDeletion {
        t_min: (t <= MAX_BRUTE_FORCE_T).then(|| min_triangle_deletion_size(g, t).expect("t edges suffice")),
        edges,
        t,
        damage,
        unseparated,
        patch,
    };
    issue(g, code, bound, Some(deletion), builder.into_trace())
}
