use std::collections::BTreeMap;

use crate::bondy::greedy_xy_identifying;
use crate::codecheck::{is_identifying, prune_redundant_in_order, unseparated_vertices};
use crate::exact::{
    self, closed_form_code, even_cycle_plus_chord_code, odd_cycle_plus_chord_code, ClosedFormKind, ExactError,
    SearchOptions, MAX_EXACT_ORDER,
};
use crate::families::{self, FamilyId};
use crate::graph::{BoundaryDecomposition, Graph, IdMap};
use crate::vertex_set::VertexSet;

use super::{certified_bound, CaseLabel, CaseStep, ConstructOptions};

/// How many induced `P3`s of an exceptional component are tried before
/// giving up on peeling it off.
const MAX_P3_ATTEMPTS: usize = 4;

/// Runs the recursive construction and records its trace.
///
/// Every method works on a local graph whose vertex `i` is vertex
/// `root[i]` of the input; trace details use input ids.
pub(super) struct Builder<'o> {
    opts: &'o ConstructOptions,
    trace: Vec<CaseStep>,
    depth: usize,
}

/// Tracks the smallest identifying candidate seen and whether one fits
/// the bound.
struct Candidates {
    bound: (u64, u64),
    best: Option<VertexSet>,
}

impl Candidates {
    fn new(bound: (u64, u64)) -> Self {
        Candidates { bound, best: None }
    }

    /// Records an identifying code; returns `true` if it meets the bound.
    fn offer(&mut self, code: VertexSet) -> bool {
        let fits = fits(self.bound, &code);
        if self.best.as_ref().is_none_or(|b| code.len() < b.len()) {
            self.best = Some(code);
        }
        fits
    }

    fn fits(&self) -> bool {
        self.best.as_ref().is_some_and(|b| fits(self.bound, b))
    }
}

fn fits((num, den): (u64, u64), code: &VertexSet) -> bool {
    den * code.len() as u64 <= num
}

fn lift(root: &[usize], map: &IdMap) -> Vec<usize> {
    (0..map.new_order()).map(|i| root[map.to_old(i)]).collect()
}

fn show(root: &[usize], s: &VertexSet) -> String {
    let mut ids: Vec<usize> = s.iter().map(|v| root[v]).collect();
    ids.sort_unstable();
    let parts: Vec<String> = ids.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Vertices of a connected graph with maximum degree at most 2 in path or
/// cycle order. Paths start at their smaller end, cycles at vertex 0 and
/// continue to its smaller neighbour.
fn walk(g: &Graph) -> (Vec<usize>, ClosedFormKind) {
    let n = g.order();
    let start = (0..n).find(|&v| g.degree(v) <= 1);
    let kind = if start.is_some() { ClosedFormKind::Path } else { ClosedFormKind::Cycle };
    let mut order = vec![start.unwrap_or(0)];
    let mut prev = usize::MAX;
    while order.len() < n {
        let cur = *order.last().expect("order is non-empty");
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("connected graph keeps walking until every vertex is seen");
        prev = cur;
        order.push(next);
    }
    (order, kind)
}

/// Code vertices in the order pruning tries to drop them: high degree
/// first, ties by id.
fn prune_order(g: &Graph, c: &VertexSet) -> Vec<usize> {
    let mut order: Vec<usize> = c.iter().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

impl<'o> Builder<'o> {
    pub(super) fn new(opts: &'o ConstructOptions) -> Self {
        Builder { opts, trace: Vec::new(), depth: 0 }
    }

    pub(super) fn into_trace(self) -> Vec<CaseStep> {
        self.trace
    }

    pub(super) fn step(&mut self, label: CaseLabel, detail: String) {
        self.trace.push(CaseStep { label, depth: self.depth, detail });
    }

    /// An identifying code of the connected triangle-free identifiable
    /// graph `g`, within its certified bound unless every route failed.
    pub(super) fn build(&mut self, g: &Graph, root: &[usize]) -> VertexSet {
        let code = self.build_inner(g, root);
        debug_assert!(is_identifying(g, &code), "builder produced a non-identifying code");
        self.finish(g, root, code)
    }

    fn recurse(&mut self, g: &Graph, root: &[usize]) -> VertexSet {
        self.depth += 1;
        let code = self.build(g, root);
        self.depth -= 1;
        code
    }

    /// Prunes the code and falls back to exact search if it misses the
    /// bound.
    fn finish(&mut self, g: &Graph, root: &[usize], code: VertexSet) -> VertexSet {
        let pruned = prune_redundant_in_order(g, &code, &VertexSet::new(), &prune_order(g, &code));
        if pruned.len() < code.len() {
            let dropped = code.difference(&pruned);
            self.step(CaseLabel::Prune, format!("dropped {}", show(root, &dropped)));
        }
        let (num, den, _) = certified_bound(g);
        if fits((num, den), &pruned) {
            return pruned;
        }
        self.exact_fallback(g, pruned)
    }

    /// Exact search seeded with `incumbent`; returns the better code.
    fn exact_fallback(&mut self, g: &Graph, incumbent: VertexSet) -> VertexSet {
        if g.order() > MAX_EXACT_ORDER {
            return incumbent;
        }
        let v = g.vertex_set();
        let opts = SearchOptions {
            budget: Some(self.opts.node_budget),
            forced: VertexSet::new(),
            incumbent: Some(incumbent.clone()),
        };
        let (code, optimal) = match exact::solve(g, &v, &v, &opts) {
            Ok(r) => (r.code, true),
            Err(ExactError::BudgetExceeded { best: Some(c), .. }) => (c, false),
            Err(_) => return incumbent,
        };
        let status = if optimal { "optimal" } else { "budget exhausted" };
        self.step(
            CaseLabel::ExactFallback,
            format!("n={}, size {} -> {} ({status})", g.order(), incumbent.len(), code.len()),
        );
        if code.len() < incumbent.len() {
            code
        } else {
            incumbent
        }
    }

    fn build_inner(&mut self, g: &Graph, root: &[usize]) -> VertexSet {
        let n = g.order();
        if n == 1 {
            self.step(CaseLabel::Delta2Path, "single vertex".to_string());
            return VertexSet::singleton(0);
        }
        let delta = g.max_degree();
        if delta <= 2 {
            return self.delta2(g);
        }
        if let Some((id, map)) = families::recognize(g, delta) {
            let entry = families::make_family(id).expect("recognized ids are valid");
            self.step(CaseLabel::FamilyHit, format!("{id}, n={n}"));
            return entry.optimal_code.iter().map(|c| map[c]).collect();
        }
        if g.is_tree() {
            return self.tree_base(g);
        }

        let (u, v) = g.pick_cycle_edge().expect("a connected graph that is not a tree has a cycle edge");
        let gp = g.without_edges(&[(u, v)]).expect("cycle edge is an edge");
        self.step(
            CaseLabel::CycleEdge,
            format!("{}-{}, degree sum {}, n={n}, m={}", root[u], root[v], g.degree(u) + g.degree(v), g.size()),
        );
        let dp = gp.max_degree();
        if dp == 2 {
            return self.delta2_plus_edge(g, &gp, (u, v), root);
        }
        if dp == 3 {
            if let Some(code) = self.tree_plus_edge(&gp, (u, v), root) {
                return code;
            }
        }
        let cp = self.recurse(&gp, root);
        if is_identifying(g, &cp) {
            return cp;
        }
        self.repair(g, (u, v), cp, root)
    }

    fn delta2(&mut self, g: &Graph) -> VertexSet {
        let (order, kind) = walk(g);
        let label = match kind {
            ClosedFormKind::Path => CaseLabel::Delta2Path,
            ClosedFormKind::Cycle => CaseLabel::Delta2Cycle,
        };
        self.step(label, format!("n={}", g.order()));
        closed_form_code(kind, g.order())
            .expect("connected identifiable graphs of maximum degree 2 are in range")
            .iter()
            .map(|p| order[p])
            .collect()
    }

    /// `g = gp + uv` where `gp` is a path or a cycle.
    fn delta2_plus_edge(&mut self, g: &Graph, gp: &Graph, (u, v): (usize, usize), root: &[usize]) -> VertexSet {
        let n = g.order();
        let (order, kind) = walk(gp);
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let to_graph = |c: &VertexSet| -> VertexSet { c.iter().map(|p| order[p]).collect() };
        let label = match kind {
            ClosedFormKind::Path => CaseLabel::Delta2Path,
            ClosedFormKind::Cycle => CaseLabel::Delta2Cycle,
        };
        if kind == ClosedFormKind::Cycle {
            let chord = (pos[u], pos[v]);
            let code = if n.is_multiple_of(2) {
                even_cycle_plus_chord_code(n, chord)
            } else {
                odd_cycle_plus_chord_code(n, chord)
            };
            if let Ok(c) = code {
                self.step(label, format!("cycle on {n} vertices plus chord {}-{}", root[u], root[v]));
                return to_graph(&c);
            }
        }
        let base = to_graph(&closed_form_code(kind, n).expect("G - e is identifiable"));
        if is_identifying(g, &base) {
            self.step(label, format!("code of G - {}-{} kept, n={n}", root[u], root[v]));
            return base;
        }
        for x in g.vertex_set().difference(&base).iter() {
            let mut c = base.clone();
            c.insert(x);
            if is_identifying(g, &c) {
                self.step(label, format!("code of G - {}-{} plus {}, n={n}", root[u], root[v], root[x]));
                return c;
            }
        }
        self.greedy_patch(g, base, root)
    }

    /// `g = gp + uv` where `gp` is a catalog tree.
    fn tree_plus_edge(&mut self, gp: &Graph, (u, v): (usize, usize), root: &[usize]) -> Option<VertexSet> {
        let (id, map) = families::recognize(gp, 3)?;
        if !matches!(id, FamilyId::T(_)) {
            return None;
        }
        let mut inv = vec![0; map.len()];
        for (c, &x) in map.iter().enumerate() {
            inv[x] = c;
        }
        let r = families::tree_plus_edge_code(id, (inv[u], inv[v])).ok()?;
        self.step(CaseLabel::FamilyHit, format!("G - {}-{} is {id}, code by {:?}", root[u], root[v], r.route));
        Some(r.code.iter().map(|c| map[c]).collect())
    }

    fn tree_base(&mut self, g: &Graph) -> VertexSet {
        let n = g.order();
        if n <= self.opts.fallback_threshold {
            match exact::gamma_id_exact(g, Some(self.opts.node_budget)) {
                Ok(r) => {
                    self.step(CaseLabel::TreeBase, format!("exact, n={n}, size {}", r.size));
                    return r.code;
                }
                Err(ExactError::BudgetExceeded { best: Some(c), .. }) => {
                    self.step(CaseLabel::TreeBase, format!("exact search stopped by budget, n={n}, size {}", c.len()));
                    return c;
                }
                Err(_) => {}
            }
        }
        let none = VertexSet::new();
        let all = g.vertex_set();
        let mut best = prune_redundant_in_order(g, &all, &none, &prune_order(g, &all));
        let low: VertexSet = (0..n).filter(|&x| g.degree(x) <= 2).collect();
        if is_identifying(g, &low) {
            let c = prune_redundant_in_order(g, &low, &none, &prune_order(g, &low));
            if c.len() < best.len() {
                best = c;
            }
        }
        self.step(CaseLabel::TreeBase, format!("greedy, n={n}, size {}", best.len()));
        best
    }

    /// Adds an `(S, V)`-identifying set for the vertices `c` fails on.
    fn greedy_patch(&mut self, g: &Graph, c: VertexSet, root: &[usize]) -> VertexSet {
        let v = g.vertex_set();
        let mut s = unseparated_vertices(g, &c, &v);
        s.extend((0..g.order()).filter(|&x| g.nbhd(x).is_disjoint(&c)));
        let patch = greedy_xy_identifying(g, &s, &v).expect("an identifiable graph identifies every subset");
        self.step(CaseLabel::GreedyPatch, format!("S={}, patch {}", show(root, &s), show(root, &patch)));
        c.union(&patch)
    }

    /// `cp` identifies `g - uv` but not `g`.
    fn repair(&mut self, g: &Graph, (u, v): (usize, usize), cp: VertexSet, root: &[usize]) -> VertexSet {
        let bd = g.boundary_decomposition(u, v).expect("uv is an edge");
        let (num, den, _) = certified_bound(g);
        let mut cands = Candidates::new((num, den));

        if bd.abar_uv.is_empty() {
            if let Some(c) = self.claim_a(g, &bd, root) {
                if cands.offer(c) {
                    return cands.best.expect("offered");
                }
            }
        }

        for w in cp.difference(&VertexSet::from([u, v])).iter() {
            for z in bd.a.difference(&cp).iter() {
                let mut c = cp.clone();
                c.remove(w);
                c.insert(z);
                if is_identifying(g, &c) {
                    self.step(CaseLabel::ClaimB, format!("swap {} for {}", root[w], root[z]));
                    if cands.offer(c) {
                        return cands.best.expect("offered");
                    }
                }
            }
        }

        let delta = g.max_degree();
        let (guv, gmap) = g.induced(&bd.abar_uv);
        let comps: Vec<VertexSet> = guv.components().iter().map(|c| gmap.set_to_old(c)).collect();
        for comp in comps.iter().filter(|c| c.len() >= 3) {
            let (f, fmap) = g.induced(comp);
            if let Some((id, cat)) = families::recognize(&f, delta) {
                let cat: Vec<usize> = cat.iter().map(|&x| fmap.to_old(x)).collect();
                if let Some(c) = self.claim_c(g, &bd, comp, id, &cat, root) {
                    if cands.offer(c) {
                        return cands.best.expect("offered");
                    }
                }
            }
        }

        if let Some(c) = self.g_star(g, &bd, &comps, root) {
            if cands.offer(c) {
                return cands.best.expect("offered");
            }
        }

        if !cands.fits() {
            let c = self.greedy_patch(g, cp, root);
            cands.offer(c);
        }
        cands.best.expect("the greedy patch always yields a code")
    }

    /// `V = N[u] ∪ N[v]`: the code `V ∖ {u', v'}`.
    fn claim_a(&mut self, g: &Graph, bd: &BoundaryDecomposition, root: &[usize]) -> Option<VertexSet> {
        for a in bd.n_u.iter() {
            for b in bd.n_v.iter() {
                let mut c = g.vertex_set();
                c.remove(a);
                c.remove(b);
                if is_identifying(g, &c) {
                    self.step(CaseLabel::ClaimA, format!("V minus {{{}, {}}}", root[a], root[b]));
                    return Some(c);
                }
            }
        }
        None
    }

    /// Peels off an exceptional component `comp` of `G - N[u] - N[v]`.
    /// `cat` maps catalog vertices of `id` to vertices of `g`.
    fn claim_c(
        &mut self,
        g: &Graph,
        bd: &BoundaryDecomposition,
        comp: &VertexSet,
        id: FamilyId,
        cat: &[usize],
        root: &[usize],
    ) -> Option<VertexSet> {
        match id {
            FamilyId::Star(_) | FamilyId::T(0) => self.claim_c_star(g, bd, comp, cat[0], root, id),
            FamilyId::P4 => {
                let path = [cat[0], cat[1], cat[2], cat[3]];
                if g.degree(path[0]) == 1 && g.degree(path[3]) == 1 {
                    self.claim_c_p4(g, bd, path, root)
                } else {
                    self.claim_c_p3(g, comp, id, root)
                }
            }
            _ => self.claim_c_p3(g, comp, id, root),
        }
    }

    /// Code of `g` minus the rest of `comp`, completed on `comp`.
    fn peel(
        &mut self,
        g: &Graph,
        removed: &VertexSet,
        root: &[usize],
        completions: &[VertexSet],
    ) -> Option<(VertexSet, VertexSet)> {
        let (gs, smap) = g.delete(removed, &[]).expect("removed vertices exist");
        if gs.order() < 3 || !gs.is_connected() {
            return None;
        }
        let cs = smap.set_to_old(&self.recurse(&gs, &lift(root, &smap)));
        completions.iter().find_map(|extra| {
            let c = cs.union(extra);
            is_identifying(g, &c).then(|| (c, extra.clone()))
        })
    }

    fn claim_c_star(
        &mut self,
        g: &Graph,
        bd: &BoundaryDecomposition,
        comp: &VertexSet,
        centre: usize,
        root: &[usize],
        id: FamilyId,
    ) -> Option<VertexSet> {
        let attach = comp.iter().find(|&x| x != centre && !g.nbhd(x).is_disjoint(&bd.a))?;
        let mut rest = comp.clone();
        rest.remove(attach);
        let completions: Vec<VertexSet> = rest
            .iter()
            .map(|drop| {
                let mut c = rest.clone();
                c.remove(drop);
                c
            })
            .collect();
        let (code, extra) = self.peel(g, &rest, root, &completions)?;
        self.step(
            CaseLabel::ClaimC,
            format!("{id} component at {}, kept {}, added {}", root[centre], root[attach], show(root, &extra)),
        );
        Some(code)
    }

    fn claim_c_p4(
        &mut self,
        g: &Graph,
        bd: &BoundaryDecomposition,
        mut path: [usize; 4],
        root: &[usize],
    ) -> Option<VertexSet> {
        if g.nbhd(path[1]).is_disjoint(&bd.a) {
            path.reverse();
        }
        let [x1, x2, x3, x4] = path;
        let removed = VertexSet::from([x3, x4]);
        let (gs, smap) = g.delete(&removed, &[]).expect("removed vertices exist");
        if gs.order() < 3 || !gs.is_connected() {
            return None;
        }
        let cs = smap.set_to_old(&self.recurse(&gs, &lift(root, &smap)));
        let mut with_x3 = cs.clone();
        with_x3.insert(x3);
        let mut swapped = cs;
        swapped.remove(x1);
        swapped.extend([x2, x3]);
        let code = [with_x3, swapped].into_iter().find(|c| is_identifying(g, c))?;
        self.step(CaseLabel::ClaimC, format!("pendant P4 at {}, removed {{{}, {}}}", root[x2], root[x3], root[x4]));
        Some(code)
    }

    /// Removes an induced `P3` of `comp` whose deletion keeps `g` connected
    /// and completes the recursive code with two of its vertices.
    fn claim_c_p3(&mut self, g: &Graph, comp: &VertexSet, id: FamilyId, root: &[usize]) -> Option<VertexSet> {
        let mut attempts = 0;
        for x2 in comp.iter() {
            let nb: Vec<usize> = g.neighbors(x2).iter().copied().filter(|&w| comp.contains(w)).collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let (x1, x3) = (nb[i], nb[j]);
                    let p = VertexSet::from([x1, x2, x3]);
                    let (rest, _) = g.delete(&p, &[]).expect("path vertices exist");
                    if rest.order() < 3 || !rest.is_connected() {
                        continue;
                    }
                    if attempts == MAX_P3_ATTEMPTS {
                        return None;
                    }
                    attempts += 1;
                    let completions = [VertexSet::from([x1, x3]), VertexSet::from([x1, x2]), VertexSet::from([x2, x3])];
                    if let Some((code, extra)) = self.peel(g, &p, root, &completions) {
                        self.step(
                            CaseLabel::ClaimC,
                            format!(
                                "{id} component, removed P3 {}-{}-{}, added {}",
                                root[x1],
                                root[x2],
                                root[x3],
                                show(root, &extra)
                            ),
                        );
                        return Some(code);
                    }
                }
            }
        }
        None
    }

    /// The marked set `B*`: per class of `B_A` vertices with equal
    /// boundary neighbourhoods, the pendant partners of the class, plus
    /// one partnerless class member when some member has no partner.
    fn b_star(g: &Graph, a: &VertexSet, b: &VertexSet) -> VertexSet {
        let b_a: VertexSet = b.iter().filter(|&x| !g.nbhd(x).is_disjoint(a)).collect();
        let b_l = b.difference(&b_a);
        let mut classes: BTreeMap<VertexSet, Vec<usize>> = BTreeMap::new();
        for x in b_a.iter() {
            classes.entry(g.nbhd(x).intersection(a)).or_default().push(x);
        }
        let mut out = VertexSet::new();
        for members in classes.values() {
            let partners: Vec<usize> =
                members.iter().filter_map(|&x| g.neighbors(x).iter().copied().find(|&y| b_l.contains(y))).collect();
            out.extend(partners.iter().copied());
            if partners.len() < members.len() {
                let lone = members
                    .iter()
                    .copied()
                    .find(|&x| g.neighbors(x).iter().all(|&y| !b_l.contains(y)))
                    .expect("fewer partners than members leaves a partnerless member");
                out.insert(lone);
            }
        }
        out
    }

    /// A code of `G* = G[A ∪ B ∪ {u, v}]` containing `u` and `v`, where `B`
    /// collects the components of `G - N[u] - N[v]` with at most two
    /// vertices, joined with codes of the larger components.
    fn g_star(
        &mut self,
        g: &Graph,
        bd: &BoundaryDecomposition,
        comps: &[VertexSet],
        root: &[usize],
    ) -> Option<VertexSet> {
        let b: VertexSet = comps.iter().filter(|c| c.len() <= 2).flat_map(|c| c.iter()).collect();
        let star_set = bd.a_uv.union(&b);
        let (gs, smap) = g.induced(&star_set);
        let b_star = Self::b_star(g, &bd.a, &b);
        let delta = g.max_degree() as u64;
        let star_bound = ((delta - 1) * star_set.len() as u64, delta);

        let a: Vec<usize> = bd.a.iter().collect();
        let mut drops: Vec<VertexSet> = Vec::new();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                drops.push(VertexSet::from([a[i], a[j]]));
            }
        }
        drops.extend(a.iter().map(|&x| VertexSet::singleton(x)));
        drops.push(VertexSet::new());

        let mut chosen: Option<(VertexSet, String)> = None;
        let mut fallback: Option<VertexSet> = None;
        for s in &drops {
            let c = star_set.difference(&b_star).difference(s);
            if !is_identifying(&gs, &smap.set_to_new(&c)) {
                continue;
            }
            if fits(star_bound, &c) {
                chosen = Some((c, format!("B*={}, boundary dropped {}", show(root, &b_star), show(root, s))));
                break;
            }
            if fallback.as_ref().is_none_or(|f| c.len() < f.len()) {
                fallback = Some(c);
            }
        }
        if chosen.is_none() && gs.order() <= MAX_EXACT_ORDER {
            let all = gs.vertex_set();
            let opts = SearchOptions {
                budget: Some(self.opts.node_budget),
                forced: VertexSet::from([smap.to_new(bd.u)?, smap.to_new(bd.v)?]),
                incumbent: fallback.as_ref().map(|f| smap.set_to_new(f)),
            };
            let found = match exact::solve(&gs, &all, &all, &opts) {
                Ok(r) => Some(r.code),
                Err(ExactError::BudgetExceeded { best, .. }) => best,
                Err(_) => None,
            };
            if let Some(c) = found {
                self.step(CaseLabel::ExactFallback, format!("G* with u, v forced, n={}, size {}", gs.order(), c.len()));
                chosen = Some((smap.set_to_old(&c), "exact".to_string()));
            }
        }
        let (mut code, how) = chosen.or_else(|| fallback.map(|f| (f, "over bound".to_string())))?;
        self.step(CaseLabel::GStar, format!("n*={}, size {}, {how}", star_set.len(), code.len()));

        let large: Vec<&VertexSet> = comps.iter().filter(|c| c.len() >= 3).collect();
        for k in &large {
            let (gk, kmap) = g.induced(k);
            let ck = self.recurse(&gk, &lift(root, &kmap));
            code.union_with(&kmap.set_to_old(&ck));
        }
        if !large.is_empty() {
            self.step(CaseLabel::ComponentAssembly, format!("{} components, size {}", large.len(), code.len()));
        }
        is_identifying(g, &code).then_some(code)
    }
}
