/*!
Certified construction of identifying codes.

[`construct_triangle_free`] builds an identifying code of a connected
triangle-free graph `G` with maximum degree `Δ` and issues a
[`Certificate`] stating the bound it meets:

| graph                         | certified bound on `|C|`              |
|-------------------------------|----------------------------------------|
| `Δ ≥ 3`, `G ∉ F_Δ`            | `((Δ-1)·n) / Δ`                        |
| `Δ ≥ 3`, `G ∈ F_Δ`            | `((Δ-1)·n + 1) / Δ`                    |
| path, `n` odd / even          | `(n+1)/2` / `(n+2)/2`                  |
| `C4`, `C5`                    | `6/2`                                  |
| cycle, `n ≥ 6` even / odd     | `n/2` / `(n+3)/2`                      |
| single vertex                 | `1/1`                                  |

The builder removes a cycle edge `uv` with the largest degree sum,
recurses on `G - uv`, and repairs the returned code when adding `uv` back
breaks it: by the boundary code when `V = N[u] ∪ N[v]`, by single swaps
into the boundary, by peeling off exceptional components of
`G - N[u] - N[v]`, or by assembling a code of the graph `G*` spanned by
the boundary and the small components with codes of the large
components. Every candidate is verified before it is used; a subproblem
whose code misses its bound is handed to the exact solver.

[`construct_near_triangle_free`] extends this to graphs that become
triangle-free after deleting `t` edges, certifying
`Δ·|C| ≤ (Δ-1)·n + 4tΔ + 1`.
*/

mod builder;
mod near;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::codecheck::is_identifying;
use crate::edgelist::write_edge_list;
use crate::exact::DEFAULT_NODE_BUDGET;
use crate::families::{self, FamilyId};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub use near::{construct_near_triangle_free, min_triangle_deletion_size, triangle_deletion_set, MAX_BRUTE_FORCE_T};

/// Tuning knobs for the constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Trees up to this order are solved exactly, as are subproblems of
    /// this order whose structural code misses its bound.
    pub fallback_threshold: usize,
    /// Node budget for each exact search.
    pub node_budget: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { fallback_threshold: 16, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// The kind of a construction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// Closed-form code of a path, or a path plus one edge.
    Delta2Path,
    /// Closed-form code of a cycle, or a cycle plus one chord.
    Delta2Cycle,
    /// Code of a tree outside the exceptional family.
    TreeBase,
    /// Catalog code of an exceptional graph, or of a catalog tree plus an
    /// edge.
    FamilyHit,
    /// The cycle edge removed before recursing.
    CycleEdge,
    /// Boundary code `V ∖ {u', v'}` when `V = N[u] ∪ N[v]`.
    ClaimA,
    /// A code vertex swapped for a boundary vertex.
    ClaimB,
    /// An exceptional component of `G - N[u] - N[v]` peeled off.
    ClaimC,
    /// A code of `G*` containing `u` and `v`.
    GStar,
    /// Union of the `G*` code with the codes of the large components.
    ComponentAssembly,
    /// Exact search on a subproblem.
    ExactFallback,
    /// Broken code repaired by an `(S, V)`-identifying patch.
    GreedyPatch,
    /// Redundant code vertices removed.
    Prune,
    /// The triangle-deletion patch.
    CorollaryPatch,
}

/// One entry of a construction trace. Vertex ids in `detail` refer to the
/// input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStep {
    pub label: CaseLabel,
    /// Recursion depth at which the step was taken.
    pub depth: usize,
    pub detail: String,
}

/// The triangle-deletion data of a near-triangle-free certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDeletion {
    /// The deleted edges, in the order they were chosen.
    pub edges: Vec<(usize, usize)>,
    pub t: usize,
    /// Size of a minimum deletion set, computed when `t ≤ 4`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_min: Option<usize>,
    /// For each deleted edge, the number of vertices left in unseparated
    /// pairs when that edge alone is added back under the triangle-free
    /// code.
    pub damage: Vec<usize>,
    /// Vertices in pairs the triangle-free code fails to separate in the
    /// input graph.
    pub unseparated: VertexSet,
    /// The `(S, V)`-identifying patch.
    pub patch: VertexSet,
}

/// A constructed code with the bound it is certified against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// SHA-256 (hex) of the canonical edge list of the input.
    pub input_hash: String,
    pub n: usize,
    pub delta: usize,
    pub code: VertexSet,
    /// The bound is `bound_den · |code| ≤ bound_num`.
    pub bound_num: u64,
    pub bound_den: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyId>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle_deletion: Option<TriangleDeletion>,
    pub trace: Vec<CaseStep>,
}

impl Certificate {
    /// `bound_den · |code| - bound_num`; non-positive when the bound holds.
    pub fn slack(&self) -> i64 {
        (self.bound_den * self.code.len() as u64) as i64 - self.bound_num as i64
    }

    pub fn bound_met(&self) -> bool {
        self.slack() <= 0
    }

    /// Serializes to TOML with a fixed field order.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("certificates serialize to TOML")
    }

    pub fn from_toml(text: &str) -> Result<Certificate, toml::de::Error> {
        toml::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph contains the triangle {0}-{1}-{2}")]
    NotTriangleFree(usize, usize, usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not identifiable: {0} and {1} are closed twins")]
    NotIdentifiable(usize, usize),
    #[error("maximum degree {0} is below 3")]
    DeltaTooSmall(usize),
    #[error("invalid triangle deletion set: {0}")]
    InvalidDeletionSet(String),
    #[error("code of size {} misses the bound {}/{}", .0.code.len(), .0.bound_num, .0.bound_den)]
    BoundMissed(Box<Certificate>),
    #[error("constructed code failed verification")]
    NotVerified(Box<Certificate>),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

/// `Δ·|C| - ((Δ-1)·n + extra)` for a code `C` of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub delta: usize,
    pub n: usize,
    pub code_size: usize,
    /// `Δ·|C|`.
    pub lhs: i64,
    /// `(Δ-1)·n + extra`.
    pub rhs: i64,
    pub slack: i64,
    pub holds: bool,
}

/// Compares `Δ·|C|` with `(Δ-1)·n + extra_num` in integer arithmetic.
///
/// # Examples
///
/// ```
/// use idcode::constructor::bound_check;
/// use idcode::families::{make_standard, StandardGraph};
/// use idcode::VertexSet;
///
/// let c6 = make_standard(StandardGraph::Cycle(6));
/// let r = bound_check(&c6, &VertexSet::from([0, 2, 4]), 0);
/// assert_eq!((r.slack, r.holds), (0, true));
/// ```
pub fn bound_check(g: &Graph, c: &VertexSet, extra_num: i64) -> BoundReport {
    bound_report(g.max_degree(), g.order(), c.len(), extra_num)
}

/// [`bound_check`] with an explicit `Δ`, for checking a code against the
/// bound of a larger degree class.
pub fn bound_report(delta: usize, n: usize, code_size: usize, extra_num: i64) -> BoundReport {
    let lhs = (delta * code_size) as i64;
    let rhs = (delta.saturating_sub(1) * n) as i64 + extra_num;
    BoundReport { delta, n, code_size, lhs, rhs, slack: lhs - rhs, holds: lhs <= rhs }
}

/// The certified bound `(num, den)` for a connected triangle-free graph,
/// with the exceptional family member it belongs to.
pub fn certified_bound(g: &Graph) -> (u64, u64, Option<FamilyId>) {
    let n = g.order() as u64;
    let delta = g.max_degree();
    match delta {
        0 => (n, 1, None),
        1 => (n, 1, None),
        2 if g.is_tree() => (if n % 2 == 1 { n + 1 } else { n + 2 }, 2, None),
        2 => match n {
            4 | 5 => (6, 2, None),
            _ if n.is_multiple_of(2) => (n, 2, None),
            _ => (n + 3, 2, None),
        },
        _ => {
            let family = families::in_f_delta(g, delta);
            let d = delta as u64;
            ((d - 1) * n + u64::from(family.is_some()), d, family)
        }
    }
}

/// SHA-256 of the canonical edge list, in lowercase hex.
pub fn input_hash(g: &Graph) -> String {
    format!("{:x}", Sha256::digest(write_edge_list(g).as_bytes()))
}

fn check_input(g: &Graph) -> Result<(), ConstructError> {
    if g.order() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ConstructError::NotConnected);
    }
    if let Some((a, b)) = g.find_closed_twins() {
        return Err(ConstructError::NotIdentifiable(a, b));
    }
    Ok(())
}

fn issue(
    g: &Graph,
    code: VertexSet,
    (bound_num, bound_den, family): (u64, u64, Option<FamilyId>),
    triangle_deletion: Option<TriangleDeletion>,
    trace: Vec<CaseStep>,
) -> Result<Certificate, ConstructError> {
    let cert = Certificate {
        input_hash: input_hash(g),
        n: g.order(),
        delta: g.max_degree(),
        verified: is_identifying(g, &code),
        code,
        bound_num,
        bound_den,
        family,
        triangle_deletion,
        trace,
    };
    if !cert.verified {
        return Err(ConstructError::NotVerified(Box::new(cert)));
    }
    if !cert.bound_met() {
        return Err(ConstructError::BoundMissed(Box::new(cert)));
    }
    Ok(cert)
}

/// A verified code of a connected triangle-free graph meeting the bound in
/// the module table.
///
/// # Examples
///
/// ```
/// use idcode::constructor::construct_triangle_free;
/// use idcode::families::{make_standard, StandardGraph};
///
/// let c6 = make_standard(StandardGraph::Cycle(6));
/// let cert = construct_triangle_free(&c6, &Default::default()).unwrap();
/// assert_eq!(cert.code.to_vec(), vec![0, 2, 4]);
/// ```
pub fn construct_triangle_free(g: &Graph, opts: &ConstructOptions) -> Result<Certificate, ConstructError> {
    if let Some((a, b, c)) = g.triangle_witness() {
        return Err(ConstructError::NotTriangleFree(a, b, c));
    }
    check_input(g)?;
    let mut builder = builder::Builder::new(opts);
    let root: Vec<usize> = (0..g.order()).collect();
    let code = builder.build(g, &root);
    issue(g, code, certified_bound(g), None, builder.into_trace())
}

/// The result of constructing codes component by component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCodes {
    /// Union of the component codes, in the ids of the input graph.
    pub code: VertexSet,
    /// Each component's vertex set with its certificate (in the
    /// component's own ids, numbered in increasing order of input id).
    pub components: Vec<(VertexSet, Certificate)>,
}

/// Runs [`construct_triangle_free`] on every component of a possibly
/// disconnected graph. The certified bound applies to each component
/// separately.
pub fn construct_by_component(g: &Graph, opts: &ConstructOptions) -> Result<ComponentCodes, ConstructError> {
    if g.order() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    let mut code = VertexSet::new();
    let mut components = Vec::new();
    for comp in g.components() {
        let (h, map) = g.induced(&comp);
        let cert = construct_triangle_free(&h, opts).map_err(|e| match e {
            ConstructError::NotTriangleFree(a, b, c) => {
                ConstructError::NotTriangleFree(map.to_old(a), map.to_old(b), map.to_old(c))
            }
            ConstructError::NotIdentifiable(a, b) => ConstructError::NotIdentifiable(map.to_old(a), map.to_old(b)),
            other => other,
        })?;
        code.union_with(&map.set_to_old(&cert.code));
        components.push((comp, cert));
    }
    Ok(ComponentCodes { code, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, make_standard, StandardGraph};

    #[test]
    fn bound_check_examples() {
        let t11 = make_family(FamilyId::T(11)).unwrap();
        let r = bound_check(&t11.graph, &t11.optimal_code, 1);
        assert_eq!((r.lhs, r.rhs, r.slack), (45, 45, 0));
        let k33 = make_standard(StandardGraph::CompleteBipartite(3, 3));
        let r = bound_check(&k33, &k33.vertex_set(), 0);
        assert_eq!(r.slack, 6);
        assert!(!r.holds);
    }

    #[test]
    fn certified_bounds() {
        assert_eq!(certified_bound(&make_standard(StandardGraph::Path(5))), (6, 2, None));
        assert_eq!(certified_bound(&make_standard(StandardGraph::Path(6))), (8, 2, None));
        assert_eq!(certified_bound(&make_standard(StandardGraph::Cycle(4))), (6, 2, None));
        assert_eq!(certified_bound(&make_standard(StandardGraph::Cycle(9))), (12, 2, None));
        assert_eq!(certified_bound(&make_standard(StandardGraph::Star(3))), (9, 3, Some(FamilyId::T(0))));
        assert_eq!(certified_bound(&make_standard(StandardGraph::CompleteBipartite(3, 3))), (12, 3, None));
        assert_eq!(certified_bound(&Graph::empty(1)), (1, 1, None));
    }

    #[test]
    fn small_examples() {
        let opts = ConstructOptions::default();
        let c6 = make_standard(StandardGraph::Cycle(6));
        assert_eq!(construct_triangle_free(&c6, &opts).unwrap().code.len(), 3);
        let c7 = make_standard(StandardGraph::Cycle(7));
        let cert = construct_triangle_free(&c7, &opts).unwrap();
        assert_eq!(cert.code.len(), 5);
        assert_eq!(cert.bound_den * 5, cert.bound_num);
        let k33 = make_standard(StandardGraph::CompleteBipartite(3, 3));
        assert_eq!(construct_triangle_free(&k33, &opts).unwrap().code.len(), 4);
        let chord = c6.with_edge(0, 3).unwrap();
        let cert = construct_triangle_free(&chord, &opts).unwrap();
        assert!(3 * cert.code.len() <= 12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let opts = ConstructOptions::default();
        let k3 = make_standard(StandardGraph::Cycle(3));
        assert_eq!(construct_triangle_free(&k3, &opts), Err(ConstructError::NotTriangleFree(0, 1, 2)));
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(construct_triangle_free(&two_edges, &opts), Err(ConstructError::NotConnected));
        let k2 = make_standard(StandardGraph::Path(2));
        assert_eq!(construct_triangle_free(&k2, &opts), Err(ConstructError::NotIdentifiable(0, 1)));
        assert_eq!(construct_triangle_free(&Graph::empty(0), &opts), Err(ConstructError::EmptyGraph));
    }

    #[test]
    fn certificate_round_trips() {
        let k33 = make_standard(StandardGraph::CompleteBipartite(3, 3));
        let cert = construct_triangle_free(&k33, &ConstructOptions::default()).unwrap();
        let text = cert.to_toml();
        assert_eq!(Certificate::from_toml(&text).unwrap(), cert);
        assert!(text.starts_with("input_hash = "));
    }

    #[test]
    fn components_are_handled_separately() {
        let g = Graph::new(8, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let r = construct_by_component(&g, &ConstructOptions::default()).unwrap();
        assert_eq!(r.components.len(), 3);
        assert!(is_identifying(&g, &r.code));
        let k2_and_p3 = Graph::new(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            construct_by_component(&k2_and_p3, &ConstructOptions::default()),
            Err(ConstructError::NotIdentifiable(0, 1))
        );
    }
}
