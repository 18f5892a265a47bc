/*!
Exact minimum identifying codes and the closed forms for paths and cycles.

The search treats an `(X, Y)`-identifying code as a hitting set. Every
`x ∈ X` contributes the constraint `N[x] ∩ Y` (domination) and every pair
of `X` at distance at most two contributes `(N[x] Δ N[y]) ∩ Y`
(separation). Pairs further apart have disjoint closed neighbourhoods and
are separated as soon as both are dominated.

Branch and bound works on 128-bit masks. At each node it branches on the
unhit constraint with the fewest remaining candidates; the `i`-th child
takes the `i`-th candidate and forbids the earlier ones, so the subtrees
are disjoint. The lower bound is a greedy packing of pairwise disjoint
constraints. All choices are made in increasing vertex order, so the
witness is deterministic.
*/

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codecheck::{is_identifying, Violation};
use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

/// Default limit on explored search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Largest graph order the bitmask search accepts.
pub const MAX_EXACT_ORDER: usize = 128;

/// An optimal code with its search statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub size: usize,
    pub code: VertexSet,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is not identifiable: {0} and {1} are closed twins")]
    NotIdentifiable(usize, usize),
    #[error("X is not Y-identifiable: {0:?} cannot be resolved within Y")]
    NotYIdentifiable(Violation),
    #[error("node budget of {budget} exhausted before optimality was proved")]
    BudgetExceeded {
        budget: u64,
        /// Best valid code found so far; not proved optimal.
        best: Option<VertexSet>,
    },
    #[error("exact search supports at most {MAX_EXACT_ORDER} vertices, got {0}")]
    TooLarge(usize),
    #[error("forced vertex {0} is not in Y")]
    ForcedOutsideY(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Knobs for [`solve`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Node limit; `None` means [`DEFAULT_NODE_BUDGET`].
    pub budget: Option<u64>,
    /// Vertices every returned code must contain.
    pub forced: VertexSet,
    /// A known valid code used as the initial incumbent. Ignored if it is
    /// not a valid `(X, Y)`-identifying code containing `forced`.
    pub incumbent: Option<VertexSet>,
}

/// `γID(G)` with an optimal witness.
///
/// # Examples
///
/// ```
/// use idcode::{exact::gamma_id_exact, Graph};
///
/// let p5 = Graph::new(5, (1..5).map(|i| (i - 1, i))).unwrap();
/// assert_eq!(gamma_id_exact(&p5, None).unwrap().size, 3);
/// ```
pub fn gamma_id_exact(g: &Graph, budget: Option<u64>) -> Result<ExactResult, ExactError> {
    let v = g.vertex_set();
    solve(g, &v, &v, &SearchOptions { budget, ..SearchOptions::default() })
}

/// Minimum `C ⊆ Y` that dominates `X` and separates all pairs of `X`.
pub fn min_xy_identifying_exact(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<ExactResult, ExactError> {
    solve(g, x, y, &SearchOptions::default())
}

/// The general search: minimum `(X, Y)`-identifying code containing
/// `opts.forced`.
pub fn solve(g: &Graph, x: &VertexSet, y: &VertexSet, opts: &SearchOptions) -> Result<ExactResult, ExactError> {
    g.check_vertices(x)?;
    g.check_vertices(y)?;
    g.check_vertices(&opts.forced)?;
    if g.order() > MAX_EXACT_ORDER {
        return Err(ExactError::TooLarge(g.order()));
    }
    if let Some(f) = opts.forced.difference(y).first() {
        return Err(ExactError::ForcedOutsideY(f));
    }
    let whole = x == &g.vertex_set() && y == &g.vertex_set();
    let constraints = build_constraints(g, x, y).map_err(|v| match v {
        Violation::Unseparated(a, b) if whole => ExactError::NotIdentifiable(a, b),
        other => ExactError::NotYIdentifiable(other),
    })?;

    let forced = to_mask(&opts.forced);
    let open: Vec<u128> = constraints.into_iter().filter(|s| s & forced == 0).collect();
    let budget = opts.budget.unwrap_or(DEFAULT_NODE_BUDGET);

    let greedy = forced | greedy_cover(&open);
    let mut best = greedy;
    if let Some(hint) = &opts.incumbent {
        let h = to_mask(hint);
        let hint_ok = h & forced == forced && h & !to_mask(y) == 0 && open.iter().all(|s| s & h != 0);
        if hint_ok && h.count_ones() < best.count_ones() {
            best = h;
        }
    }

    let mut search = Search { best, nodes: 0, budget, aborted: false, pool: Vec::new() };
    search.dfs(forced, 0, &open, 0);
    let code = from_mask(search.best);
    if search.aborted {
        return Err(ExactError::BudgetExceeded { budget, best: Some(code) });
    }
    Ok(ExactResult { size: code.len(), code, nodes_explored: search.nodes })
}

fn to_mask(s: &VertexSet) -> u128 {
    let w = s.words();
    let lo = w.first().copied().unwrap_or(0) as u128;
    let hi = w.get(1).copied().unwrap_or(0) as u128;
    lo | (hi << 64)
}

fn from_mask(mut m: u128) -> VertexSet {
    let mut s = VertexSet::new();
    while m != 0 {
        s.insert(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    s
}

/// Hitting-set constraints for `(X, Y)`-identification, with supersets of
/// other constraints dropped. Fails with the first unresolvable condition.
fn build_constraints(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<Vec<u128>, Violation> {
    let ym = to_mask(y);
    let closed: Vec<u128> = (0..g.order()).map(|v| to_mask(g.nbhd(v))).collect();
    let mut raw = Vec::new();
    for a in x.iter() {
        let s = closed[a] & ym;
        if s == 0 {
            return Err(Violation::Undominated(a));
        }
        raw.push(s);
    }
    let xm = to_mask(x);
    for a in x.iter() {
        // Vertices within distance two of `a`.
        let mut near = 0u128;
        for &b in g.neighbors(a) {
            near |= closed[b];
        }
        let mut rest = near & xm & !((1u128 << a) | ((1u128 << a) - 1));
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let s = (closed[a] ^ closed[b]) & ym;
            if s == 0 {
                return Err(Violation::Unseparated(a, b));
            }
            raw.push(s);
        }
    }
    raw.sort_unstable_by_key(|s| (s.count_ones(), s.trailing_zeros()));
    raw.dedup();
    let mut kept: Vec<u128> = Vec::new();
    for s in raw {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    Ok(kept)
}

/// Repeatedly takes the vertex hitting the most open constraints.
fn greedy_cover(sets: &[u128]) -> u128 {
    let mut open: Vec<u128> = sets.to_vec();
    let mut chosen = 0u128;
    while !open.is_empty() {
        let mut hits = [0u32; 128];
        for &s in &open {
            let mut m = s;
            while m != 0 {
                hits[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let v = (0..128).max_by(|&a, &b| hits[a].cmp(&hits[b]).then(b.cmp(&a))).expect("non-empty range");
        chosen |= 1 << v;
        open.retain(|s| s & (1 << v) == 0);
    }
    chosen
}

/// Greedy packing of pairwise disjoint sets, small sets first.
fn packing_bound(sets: &[u128]) -> u32 {
    let mut used = 0u128;
    let mut count = 0;
    for small in [true, false] {
        for &s in sets {
            if (s.count_ones() <= 2) == small && s & used == 0 {
                used |= s;
                count += 1;
            }
        }
    }
    count
}

struct Search {
    best: u128,
    nodes: u64,
    budget: u64,
    aborted: bool,
    pool: Vec<Vec<u128>>,
}

impl Search {
    /// `open` holds the candidate masks (already stripped of excluded
    /// vertices) of every constraint not yet hit by `chosen`.
    fn dfs(&mut self, chosen: u128, excluded: u128, open: &[u128], depth: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let size = chosen.count_ones();
        if open.is_empty() {
            if size < self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        if size + packing_bound(open) >= self.best.count_ones() {
            return;
        }
        let pivot = *open.iter().min_by_key(|s| s.count_ones()).expect("open is non-empty");

        if self.pool.len() <= depth {
            self.pool.resize_with(depth + 1, Vec::new);
        }
        let mut child = std::mem::take(&mut self.pool[depth]);
        let mut forbidden = excluded;
        let mut rest = pivot;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            let bit = 1u128 << c;
            child.clear();
            let mut dead = false;
            for &s in open {
                if s & bit == 0 {
                    let t = s & !forbidden;
                    if t == 0 {
                        dead = true;
                        break;
                    }
                    child.push(t);
                }
            }
            if !dead {
                self.dfs(chosen | bit, forbidden, &child, depth + 1);
                if self.aborted {
                    break;
                }
            }
            forbidden |= bit;
        }
        self.pool[depth] = child;
    }
}

/// Which closed form to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedFormKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{kind:?} on {n} vertices is outside the closed form's domain")]
    OutOfDomain { kind: ClosedFormKind, n: usize },
}

/// `γID` of the path or cycle on `n` vertices (vertices in cyclic order).
///
/// Paths are defined for `n = 1` and `n ≥ 3`; cycles for `n ≥ 4`.
///
/// # Examples
///
/// ```
/// use idcode::exact::{gamma_id_closed_form, ClosedFormKind::*};
///
/// assert_eq!(gamma_id_closed_form(Path, 4), Ok(3));
/// assert_eq!(gamma_id_closed_form(Cycle, 6), Ok(3));
/// assert_eq!(gamma_id_closed_form(Cycle, 7), Ok(5));
/// ```
pub fn gamma_id_closed_form(kind: ClosedFormKind, n: usize) -> Result<usize, ClosedFormError> {
    match kind {
        ClosedFormKind::Path if n == 1 || n >= 3 => Ok(n / 2 + 1),
        ClosedFormKind::Cycle if n == 4 || n == 5 => Ok(3),
        ClosedFormKind::Cycle if n >= 6 && n.is_multiple_of(2) => Ok(n / 2),
        ClosedFormKind::Cycle if n >= 7 => Ok((n + 3) / 2),
        _ => Err(ClosedFormError::OutOfDomain { kind, n }),
    }
}

/// An optimal code for the path `0-1-...-(n-1)` or the cycle on `0..n`
/// in that order, of the size given by [`gamma_id_closed_form`].
pub fn closed_form_code(kind: ClosedFormKind, n: usize) -> Result<VertexSet, ClosedFormError> {
    gamma_id_closed_form(kind, n)?;
    let evens = |upto: usize| (0..upto).step_by(2).collect::<VertexSet>();
    Ok(match kind {
        ClosedFormKind::Path if n % 2 == 1 => evens(n),
        ClosedFormKind::Path => {
            let mut c = evens(n - 3);
            c.extend([n - 3, n - 2]);
            c
        }
        ClosedFormKind::Cycle if n <= 5 => VertexSet::from([0, 1, 2]),
        ClosedFormKind::Cycle if n.is_multiple_of(2) => evens(n),
        ClosedFormKind::Cycle => {
            let mut c = evens(n);
            c.insert(1);
            c
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("expected an odd cycle length of at least 7, got {0}")]
    BadOddLength(usize),
    #[error("expected an even cycle length of at least 6, got {0}")]
    BadEvenLength(usize),
    #[error("{0}-{1} is not a chord of the cycle")]
    NotAChord(usize, usize),
    #[error("chord {0}-{1} creates a triangle")]
    CreatesTriangle(usize, usize),
    #[error("no candidate code identifies the cycle with chord {0}-{1}")]
    NoCodeFound(usize, usize),
}

fn cycle_with_chord(n: usize, a: usize, b: usize) -> Result<Graph, ChordError> {
    let d = a.abs_diff(b);
    if a >= n || b >= n || d == 0 || d == 1 || d == n - 1 {
        return Err(ChordError::NotAChord(a, b));
    }
    if d == 2 || d == n - 2 {
        return Err(ChordError::CreatesTriangle(a, b));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).chain([(a, b)])).expect("chord is a new edge"))
}

/// An identifying code of size at most `k + 1` for the odd cycle
/// `C_{2k+1}` (vertices in cyclic order) plus the chord `a-b`.
///
/// The candidates are the rotations of `{0, 2, ..., 2k}`, which take every
/// other vertex and one adjacent pair; the first that identifies the
/// graph is returned.
pub fn odd_cycle_plus_chord_code(n: usize, (a, b): (usize, usize)) -> Result<VertexSet, ChordError> {
    if n < 7 || n.is_multiple_of(2) {
        return Err(ChordError::BadOddLength(n));
    }
    let g = cycle_with_chord(n, a, b)?;
    (0..n)
        .map(|r| (0..=n / 2).map(|i| (r + 2 * i) % n).collect::<VertexSet>())
        .find(|c| is_identifying(&g, c))
        .ok_or(ChordError::NoCodeFound(a, b))
}

/// A code of size `n / 2` for the even cycle `C_n` plus the chord `a-b`:
/// the odd-indexed vertices when both chord ends are even, otherwise the
/// even-indexed ones.
pub fn even_cycle_plus_chord_code(n: usize, (a, b): (usize, usize)) -> Result<VertexSet, ChordError> {
    if n < 6 || n % 2 == 1 {
        return Err(ChordError::BadEvenLength(n));
    }
    let g = cycle_with_chord(n, a, b)?;
    let start = usize::from(a % 2 == 0 && b % 2 == 0);
    let code: VertexSet = (start..n).step_by(2).collect();
    if is_identifying(&g, &code) {
        Ok(code)
    } else {
        Err(ChordError::NoCodeFound(a, b))
    }
}
