//! Fractional cuts by path generation.
//!
//! Both LPs here are covering problems: minimise `Σ cost(e)·w(e)` subject to
//! every relevant path having interior weight at least 1. The path family is
//! exponential, so constraints are generated on demand: a weighted shortest
//! path search acts as separation oracle, and a violated path (length below
//! `1 - separation_tol`) is added to the restricted LP. The restricted LP is
//! solved through its dual, a packing problem `max Σ y_P` whose columns are
//! paths, so every new constraint is a new dual column and the simplex
//! restarts from the previous optimal basis. The primal weights are read off
//! as the dual prices of the element rows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{arc_dijkstra, vertex_dijkstra, DirectedGraph, Distance, Flavor, Instance};
use crate::simplex::{BoundedSimplex, LpStatus};

/// Nonnegative weight per node (or per arc, in the edge flavor).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction(pub Vec<f64>);

impl WeightFunction {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self(vec![value; n])
    }

    pub fn get(&self, v: usize) -> f64 {
        self.0.get(v).copied().unwrap_or(0.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Sum over elements not in `frozen`.
    pub fn free_sum(&self, frozen: &[bool]) -> f64 {
        self.0
            .iter()
            .zip(frozen)
            .filter(|(_, &f)| !f)
            .map(|(w, _)| *w)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpConfig {
    /// Pivot and feasibility tolerance inside the simplex.
    pub simplex_eps: f64,
    /// A path is violated when its length is below `1 - separation_tol`.
    pub separation_tol: f64,
}

impl Default for LpConfig {
    fn default() -> Self {
        Self {
            simplex_eps: 1e-9,
            separation_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub weights: WeightFunction,
    pub value: f64,
    /// Number of path constraints generated.
    pub constraint_count: usize,
    /// Separation rounds.
    pub iterations: usize,
    /// The generated path constraints, as element lists.
    pub paths: Vec<Vec<usize>>,
}

/// Restricted covering LP held in dual form.
pub(crate) struct PathLp {
    lp: BoundedSimplex,
    row_of: BTreeMap<usize, usize>,
    cap: Option<f64>,
    pub(crate) paths: Vec<Vec<usize>>,
    seen: BTreeSet<Vec<usize>>,
    pivot_scale: usize,
}

impl PathLp {
    pub(crate) fn new(cfg: &LpConfig, cap: Option<f64>, pivot_scale: usize) -> Self {
        Self {
            lp: BoundedSimplex::new(cfg.simplex_eps),
            row_of: BTreeMap::new(),
            cap,
            paths: Vec::new(),
            seen: BTreeSet::new(),
            pivot_scale,
        }
    }

    /// Adds the constraint `Σ_{e in path} w(e) >= 1`; false when it was
    /// already present.
    pub(crate) fn add_path(
        &mut self,
        path: Vec<usize>,
        cost: impl Fn(usize) -> f64,
    ) -> Result<bool> {
        if self.seen.contains(&path) {
            return Ok(false);
        }
        let mut entries = Vec::with_capacity(path.len());
        for &e in &path {
            let row = match self.row_of.get(&e) {
                Some(&r) => r,
                None => {
                    let r = self.lp.add_row(cost(e))?;
                    self.row_of.insert(e, r);
                    if let Some(cap) = self.cap {
                        // Dual of the box constraint w(e) <= cap.
                        self.lp.add_column(-cap, f64::INFINITY, &[(r, -1.0)]);
                    }
                    r
                }
            };
            entries.push((row, 1.0));
        }
        self.lp.add_column(1.0, f64::INFINITY, &entries);
        self.seen.insert(path.clone());
        self.paths.push(path);
        Ok(true)
    }

    pub(crate) fn solve(&mut self) -> Result<()> {
        let budget = 10 * self.pivot_scale * self.paths.len().max(1);
        let remaining = budget.saturating_sub(self.lp.pivots());
        match self.lp.solve(remaining)? {
            LpStatus::Optimal => Ok(()),
            LpStatus::Unbounded => Err(Error::SolverStall(
                "restricted dual unbounded; a path has no cuttable element".into(),
            )),
        }
    }

    pub(crate) fn weights(&self, size: usize) -> Vec<f64> {
        let mut w = vec![0.0; size];
        for (&e, &r) in &self.row_of {
            let mut x = self.lp.dual(r).max(0.0);
            if let Some(cap) = self.cap {
                x = x.min(cap);
            }
            w[e] = x;
        }
        w
    }
}

fn check_node(g: &DirectedGraph, v: usize) -> Result<()> {
    if v < g.node_count() {
        Ok(())
    } else {
        Err(Error::NodeOutOfRange {
            node: v,
            n: g.node_count(),
        })
    }
}

/// Minimum fractional `(s, t)` vertex cut in which every node of `frozen`
/// counts with weight 1 and every other interior node carries a weight in
/// `[0, cap]`. Frozen nodes are excluded from the objective.
pub fn min_capped_vertex_cut(
    g: &DirectedGraph,
    frozen: &[bool],
    s: usize,
    t: usize,
    cap: f64,
    cfg: &LpConfig,
) -> Result<LpResult> {
    min_capped_vertex_cut_seeded(g, frozen, s, t, cap, cfg, &[])
}

/// As [`min_capped_vertex_cut`], starting from the given path constraints.
/// Seed paths through frozen nodes are dropped (they are already satisfied).
/// The optimum does not depend on the seeds beyond solver tolerance.
pub fn min_capped_vertex_cut_seeded(
    g: &DirectedGraph,
    frozen: &[bool],
    s: usize,
    t: usize,
    cap: f64,
    cfg: &LpConfig,
    seed_paths: &[Vec<usize>],
) -> Result<LpResult> {
    check_node(g, s)?;
    check_node(g, t)?;
    if s == t {
        return Err(Error::InvalidConfig("capped cut needs s != t".into()));
    }
    if !(cap > 0.0) {
        return Err(Error::InvalidConfig(format!("cap {cap} must be positive")));
    }
    let n = g.node_count();
    let mut lp = PathLp::new(cfg, Some(cap), n);
    for p in seed_paths {
        let usable = !p.is_empty() && (p.len() as f64) * cap >= 1.0 - cfg.separation_tol;
        if usable && p.iter().all(|&v| !frozen[v] && v != s && v != t) {
            lp.add_path(p.clone(), |_| 1.0)?;
        }
    }
    if !lp.paths.is_empty() {
        lp.solve()?;
    }
    let mut eff = vec![0.0; n];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let w = lp.weights(n);
        for v in 0..n {
            eff[v] = if frozen[v] { 1.0 } else { w[v] };
        }
        let search = vertex_dijkstra(g, &eff, s, None, Some(t));
        let violated = match search.dist[t] {
            Distance::Finite(d) => d < 1.0 - cfg.separation_tol,
            Distance::Infinite => false,
        };
        if !violated {
            let value = w.iter().sum();
            return Ok(LpResult {
                weights: WeightFunction(w),
                value,
                constraint_count: lp.paths.len(),
                iterations,
                paths: lp.paths,
            });
        }
        let path = search.interior_path(s, t);
        if path.is_empty() {
            return Err(Error::Infeasible(format!(
                "arc ({s}, {t}) leaves no interior vertex to cut"
            )));
        }
        if (path.len() as f64) * cap < 1.0 - cfg.separation_tol {
            return Err(Error::Infeasible(format!(
                "path with {} interior vertices cannot reach distance 1 under cap {cap}",
                path.len()
            )));
        }
        if lp.paths.len() >= 10 * n * n {
            return Err(Error::SolverStall(format!(
                "generated {} path constraints",
                lp.paths.len()
            )));
        }
        if !lp.add_path(path, |_| 1.0)? {
            // Already in the LP: only solver round-off separates it from 1.
            let value = w.iter().sum();
            return Ok(LpResult {
                weights: WeightFunction(w),
                value,
                constraint_count: lp.paths.len(),
                iterations,
                paths: lp.paths,
            });
        }
        lp.solve()?;
    }
}

/// Same optimum as [`min_capped_vertex_cut`], computed combinatorially.
///
/// The dual of the capped LP is a flow problem on the node-split graph:
/// every unit of `s -> t` flow earns 1, each free interior node carries one
/// unit at no charge and any further unit at `cap`. Successive shortest
/// augmenting paths run until the cheapest one costs at least 1. Adding a
/// return arc `t -> s` of cost -1 turns the flow into an optimal
/// circulation, and with `D` its residual distances from `s`,
/// `w(v) = D(v_out) - D(v_in)` is a primal optimum. Frozen nodes are dropped from the network, since any
/// path through one already has length at least 1.
pub fn min_capped_vertex_cut_flow(
    g: &DirectedGraph,
    frozen: &[bool],
    s: usize,
    t: usize,
    cap: f64,
) -> Result<LpResult> {
    check_node(g, s)?;
    check_node(g, t)?;
    if s == t {
        return Err(Error::InvalidConfig("capped cut needs s != t".into()));
    }
    if !(cap > 0.0) {
        return Err(Error::InvalidConfig(format!("cap {cap} must be positive")));
    }
    let n = g.node_count();
    let free = |v: usize| v != s && v != t && !frozen[v];
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        if free(v) {
            net.add_arc(2 * v, 2 * v + 1, 1, 0.0);
            net.add_arc(2 * v, 2 * v + 1, UNBOUNDED, cap);
        }
    }
    for u in 0..n {
        if !(u == s || free(u)) {
            continue;
        }
        for &(v, _) in g.out_arcs(u) {
            if v == t || free(v) {
                net.add_arc(2 * u + 1, 2 * v, UNBOUNDED, 0.0);
            }
        }
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut augmentations = 0;
    let mut total = 0;
    loop {
        let (dist, pred) = net.shortest_paths(src);
        if !(dist[sink] < 1.0 - 1e-12) {
            break;
        }
        let mut bottleneck = UNBOUNDED;
        let mut x = sink;
        while x != src {
            let a = pred[x];
            bottleneck = bottleneck.min(net.residual(a));
            x = net.tail(a);
        }
        if bottleneck >= UNBOUNDED {
            return Err(Error::Infeasible(format!(
                "an ({s}, {t}) path is too short to reach distance 1 under cap {cap}"
            )));
        }
        let mut x = sink;
        while x != src {
            let a = pred[x];
            net.push(a, bottleneck);
            x = net.tail(a);
        }
        total += bottleneck;
        augmentations += 1;
        if augmentations > 10 * n * n {
            return Err(Error::SolverStall(format!(
                "{augmentations} augmentations without convergence"
            )));
        }
    }
    // Close the flow into a circulation through a return arc of gain 1;
    // residual distances of the optimal circulation are optimal potentials.
    let back = net.add_arc(sink, src, UNBOUNDED, -1.0);
    net.push(back, total);
    let (dist, _) = net.shortest_paths(src);
    let mut w = vec![0.0; n];
    for v in (0..n).filter(|&v| free(v) && dist[2 * v].is_finite()) {
        w[v] = (dist[2 * v + 1] - dist[2 * v]).clamp(0.0, cap);
    }
    let value = w.iter().sum();
    Ok(LpResult {
        weights: WeightFunction(w),
        value,
        constraint_count: 0,
        iterations: augmentations,
        paths: Vec::new(),
    })
}

const UNBOUNDED: i64 = i64::MAX / 4;

/// Residual network with paired forward/backward arcs (`a ^ 1` is the twin).
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<f64>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: i64, cost: f64) -> usize {
        let a = self.head.len();
        self.out[u].push(a);
        self.head.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.out[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        a
    }

    fn tail(&self, a: usize) -> usize {
        self.head[a ^ 1]
    }

    fn residual(&self, a: usize) -> i64 {
        self.cap[a]
    }

    fn push(&mut self, a: usize, amount: i64) {
        if self.cap[a] < UNBOUNDED {
            self.cap[a] -= amount;
        }
        if self.cap[a ^ 1] < UNBOUNDED {
            self.cap[a ^ 1] += amount;
        }
    }

    /// Queue-based Bellman-Ford; the residual graph of a min-cost flow has
    /// no negative cycle, so this terminates.
    fn shortest_paths(&self, src: usize) -> (Vec<f64>, Vec<usize>) {
        let nodes = self.out.len();
        let mut dist = vec![f64::INFINITY; nodes];
        let mut pred = vec![usize::MAX; nodes];
        let mut queued = vec![false; nodes];
        let mut queue = alloc::collections::VecDeque::new();
        dist[src] = 0.0;
        queue.push_back(src);
        queued[src] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &a in &self.out[u] {
                if self.cap[a] <= 0 {
                    continue;
                }
                let v = self.head[a];
                let nd = dist[u] + self.cost[a];
                if nd < dist[v] - 1e-12 {
                    dist[v] = nd;
                    pred[v] = a;
                    if !queued[v] {
                        queued[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        (dist, pred)
    }
}

/// Minimum fractional multicut: minimise `Σ cost·w` subject to every
/// demand pair being at weighted distance at least 1 (interior vertices in
/// the vertex flavor, arcs in the edge flavor). No upper bounds.
pub fn fractional_multicut(inst: &Instance, cfg: &LpConfig) -> Result<LpResult> {
    let pairs = inst.demand_pairs();
    let g = &inst.graph;
    let size = inst.element_count();
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(s, t) in &pairs {
        by_source.entry(s).or_default().push(t);
    }
    let mut lp = PathLp::new(cfg, None, g.node_count().max(1));
    let cost = |e: usize| inst.costs[e];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let w = lp.weights(size);
        let mut added = 0usize;
        let mut repeated = 0usize;
        for (&s, targets) in &by_source {
            let found: Vec<Vec<usize>> = match inst.flavor {
                Flavor::Vertex => {
                    let search = vertex_dijkstra(g, &w, s, None, None);
                    let mut out = Vec::new();
                    for &t in targets {
                        if let Distance::Finite(d) = search.dist[t] {
                            if d < 1.0 - cfg.separation_tol {
                                let p = search.interior_path(s, t);
                                if p.is_empty() {
                                    return Err(Error::Infeasible(format!(
                                        "demand ({s}, {t}) is joined by an arc"
                                    )));
                                }
                                out.push(p);
                            }
                        }
                    }
                    out
                }
                Flavor::Edge => {
                    let (dist, pred) = arc_dijkstra(g, &w, s, None);
                    let mut out = Vec::new();
                    for &t in targets {
                        if let Distance::Finite(d) = dist[t] {
                            if d < 1.0 - cfg.separation_tol {
                                let mut p = Vec::new();
                                let mut v = t;
                                while v != s {
                                    let a = pred[v];
                                    p.push(a);
                                    v = g.arc(a).0;
                                }
                                p.reverse();
                                out.push(p);
                            }
                        }
                    }
                    out
                }
            };
            for p in found {
                if lp.add_path(p, cost)? {
                    added += 1;
                } else {
                    repeated += 1;
                }
            }
        }
        if added == 0 {
            let _ = repeated;
            let value = w.iter().zip(&inst.costs).map(|(a, b)| a * b).sum();
            return Ok(LpResult {
                weights: WeightFunction(w),
                value,
                constraint_count: lp.paths.len(),
                iterations,
                paths: lp.paths,
            });
        }
        let n = g.node_count();
        if lp.paths.len() > 10 * n * n {
            return Err(Error::SolverStall(format!(
                "generated {} path constraints",
                lp.paths.len()
            )));
        }
        lp.solve()?;
    }
}

/// Per-pair fractional cuts together with the frozen integral set `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCutFamily {
    pub frozen: Vec<bool>,
    pub per_pair: BTreeMap<(usize, usize), WeightFunction>,
    pub cap: f64,
}

impl FractionalCutFamily {
    /// Effective node weights for one pair: frozen nodes count 1.
    pub fn effective_weights(&self, pair: (usize, usize)) -> Vec<f64> {
        let w = &self.per_pair[&pair];
        self.frozen
            .iter()
            .enumerate()
            .map(|(v, &f)| if f { 1.0 } else { w.get(v) })
            .collect()
    }
}

/// `Σ_{(s,t) in remaining} Σ_{v not frozen} w_{s,t}(v)`.
pub fn mass(family: &FractionalCutFamily, remaining_pairs: &[(usize, usize)]) -> f64 {
    remaining_pairs
        .iter()
        .map(|p| family.per_pair[p].free_sum(&family.frozen))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{vdist_weighted, Demands};
    use crate::instances::gen_figure1;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, arcs.iter().copied()).unwrap()
    }

    fn cut(g: &DirectedGraph, frozen: &[bool], s: usize, t: usize, cap: f64) -> Result<LpResult> {
        min_capped_vertex_cut(g, frozen, s, t, cap, &LpConfig::default())
    }

    #[test]
    fn single_interior_node_carries_full_cut() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let r = cut(&g, &[false; 3], 0, 2, 1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!((r.weights.get(1) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_disjoint_paths() {
        // s=0, a=1, b=2, t=3
        let g = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let r = cut(&g, &[false; 4], 0, 3, 1.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
        assert_eq!(r.constraint_count, 2);
    }

    #[test]
    fn capped_long_path() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let r = cut(&g, &[false; 6], 0, 5, 0.5).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!(r.weights.as_slice().iter().all(|&x| x <= 0.5 + 1e-12));
    }

    #[test]
    fn frozen_node_already_cuts() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let r = cut(&g, &[false, true, false], 0, 2, 0.25).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.constraint_count, 0);
    }

    #[test]
    fn unreachable_pair_is_free() {
        let g = graph(3, &[(0, 1)]);
        let r = cut(&g, &[false; 3], 0, 2, 1.0).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn infeasible_cases() {
        let g = graph(2, &[(0, 1)]);
        assert!(matches!(
            cut(&g, &[false; 2], 0, 1, 1.0),
            Err(Error::Infeasible(_))
        ));
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(
            cut(&g, &[false; 4], 0, 3, 0.25),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            cut(&g, &[false; 4], 0, 0, 0.25),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            cut(&g, &[false; 4], 0, 3, 0.0),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn separation_certificate_holds() {
        // 3x3 layered grid between s=0 and t=10
        let mut arcs = vec![];
        for i in 1..=3 {
            arcs.push((0, i));
            arcs.push((i + 6, 10));
            for j in 4..=6 {
                arcs.push((i, j));
                arcs.push((j, j + 3));
            }
        }
        let g = graph(11, &arcs);
        let frozen = vec![false; 11];
        let r = cut(&g, &frozen, 0, 10, 0.4).unwrap();
        let d = vdist_weighted(&g, r.weights.as_slice(), 0)[10]
            .finite()
            .unwrap();
        assert!(d >= 1.0 - 1e-6);
        // Summing all 27 path constraints gives 9·Σw >= 27, and 1/3 on every
        // node attains it under the 0.4 cap.
        assert!((r.value - 3.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn seeded_solve_matches_cold_solve() {
        let g = graph(6, &[(0, 1), (1, 5), (0, 2), (2, 3), (3, 5), (0, 4), (4, 5)]);
        let frozen = vec![false; 6];
        let cold = cut(&g, &frozen, 0, 5, 1.0).unwrap();
        let mut fz = frozen.clone();
        fz[1] = true;
        let warm =
            min_capped_vertex_cut_seeded(&g, &fz, 0, 5, 1.0, &LpConfig::default(), &cold.paths)
                .unwrap();
        let fresh = cut(&g, &fz, 0, 5, 1.0).unwrap();
        assert!((warm.value - fresh.value).abs() < 1e-9);
        assert!(fresh.value <= cold.value + 1e-9);
    }

    #[test]
    fn flow_solver_matches_path_lp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..300 {
            let n = rng.random_range(4..14);
            let mut arcs = vec![];
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.random_bool(0.25) {
                        arcs.push((i, j));
                    }
                }
            }
            let g = graph(n, &arcs);
            let frozen: Vec<bool> = (0..n).map(|_| rng.random_bool(0.15)).collect();
            let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
            if s == t {
                continue;
            }
            let cap = [0.2, 0.35, 0.5, 1.0][rng.random_range(0..4)];
            let lp = cut(&g, &frozen, s, t, cap);
            let flow = min_capped_vertex_cut_flow(&g, &frozen, s, t, cap);
            match (lp, flow) {
                (Ok(a), Ok(b)) => {
                    assert!(
                        (a.value - b.value).abs() < 1e-6,
                        "{} vs {}",
                        a.value,
                        b.value
                    );
                    let mut eff = b.weights.0.clone();
                    for v in 0..n {
                        if frozen[v] {
                            eff[v] = 1.0;
                        }
                        assert!(b.weights.0[v] <= cap + 1e-12);
                    }
                    if let Some(d) = vdist_weighted(&g, &eff, s)[t].finite() {
                        assert!(d >= 1.0 - 1e-9, "{d}");
                    }
                    checked += 1;
                }
                (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {}
                (a, b) => panic!("disagree: {a:?} / {b:?}"),
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn flow_solver_examples() {
        let g = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let r = min_capped_vertex_cut_flow(&g, &[false; 4], 0, 3, 1.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let r = min_capped_vertex_cut_flow(&g, &[false; 6], 0, 5, 0.5).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(
            min_capped_vertex_cut_flow(&g, &[false; 4], 0, 3, 0.25),
            Err(Error::Infeasible(_))
        ));
        let g = graph(2, &[(0, 1)]);
        assert!(matches!(
            min_capped_vertex_cut_flow(&g, &[false; 2], 0, 1, 1.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn figure1_fractional_value() {
        let inst = gen_figure1();
        let r = fractional_multicut(&inst, &LpConfig::default()).unwrap();
        assert!((r.value - 1.5).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn multicut_trivial_cases() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let inst = Instance::new(
            g.clone(),
            Flavor::Vertex,
            vec![1.0; 3],
            None,
            Demands::Pairs(vec![(0, 2)]),
        )
        .unwrap();
        let r = fractional_multicut(&inst, &LpConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let empty = Instance::new(
            g.clone(),
            Flavor::Vertex,
            vec![1.0; 3],
            None,
            Demands::Pairs(vec![]),
        )
        .unwrap();
        let r = fractional_multicut(&empty, &LpConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.weights.as_slice().iter().all(|&x| x == 0.0));
        let bad = Instance::new(
            g,
            Flavor::Vertex,
            vec![1.0; 3],
            None,
            Demands::Pairs(vec![(0, 1)]),
        )
        .unwrap();
        assert!(matches!(
            fractional_multicut(&bad, &LpConfig::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn mass_examples() {
        let n = 5;
        let l = 4.0;
        let mut per_pair = BTreeMap::new();
        per_pair.insert((0, 4), WeightFunction::constant(n, 1.0 / l));
        per_pair.insert((1, 4), WeightFunction::constant(n, 1.0 / l));
        let family = FractionalCutFamily {
            frozen: vec![false; n],
            per_pair,
            cap: 4.0 / l,
        };
        assert_eq!(mass(&family, &[]), 0.0);
        assert!((mass(&family, &[(0, 4)]) - n as f64 / l).abs() < 1e-12);
        let both = mass(&family, &[(0, 4), (1, 4)]);
        assert!((both - 2.0 * n as f64 / l).abs() < 1e-12);
        assert!(both <= (n * n * n) as f64);
        let mut frozen_family = family.clone();
        frozen_family.frozen[2] = true;
        assert!((mass(&frozen_family, &[(0, 4)]) - 4.0 / l).abs() < 1e-12);
        assert_eq!(frozen_family.effective_weights((0, 4))[2], 1.0);
    }
}
