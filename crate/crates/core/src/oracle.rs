//! Exact answers for small instances: minimum integral multicut by
//! branch-and-bound, the fractional LP over explicitly enumerated paths,
//! single-pair minimum vertex cuts by max-flow, and the resulting gap.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fraccut::{fractional_multicut, LpConfig, LpResult, PathLp, WeightFunction};
use crate::graph::{check_cut, CutSet, Demands, DirectedGraph, Flavor, Instance};

/// Default element budget of [`exact_integral_multicut`].
pub const DEFAULT_ELEMENT_BUDGET: usize = 24;
/// Default path budget of [`exact_fractional_multicut_small`].
pub const DEFAULT_PATH_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub integral_opt: f64,
    pub integral_cut: CutSet,
    pub fractional_opt: f64,
    pub fractional_weights: WeightFunction,
    /// `integral / fractional`, or 1 when both are 0.
    pub gap: f64,
    pub paths_enumerated: usize,
}

/// Rejects demands that no cut can separate (vertex pairs joined by an arc).
fn check_cuttable(inst: &Instance) -> Result<()> {
    if inst.flavor == Flavor::Vertex {
        for (s, t) in inst.demand_pairs() {
            if inst.graph.has_arc(s, t) {
                return Err(Error::Infeasible(format!(
                    "demand ({s}, {t}) is joined by an arc"
                )));
            }
        }
    }
    Ok(())
}

fn budget_check(inst: &Instance, budget: usize) -> Result<Vec<usize>> {
    let elems = inst.cuttable_elements();
    if elems.len() > budget {
        return Err(Error::BudgetExceeded {
            limit: budget,
            found: elems.len(),
        });
    }
    Ok(elems)
}

/// `a` beats `b`: lower cost, ties by the lexicographically smaller set.
fn better(a: &CutSet, b: &CutSet) -> bool {
    let tol = 1e-9 * a.cost.abs().max(b.cost.abs()).max(1.0);
    if (a.cost - b.cost).abs() <= tol {
        a.elements < b.elements
    } else {
        a.cost < b.cost
    }
}

/// Elements of one uncut demand path under `cut` (shortest by element
/// count, first violated pair in demand order), or `None` when every demand
/// is cut.
fn uncut_path(inst: &Instance, pairs: &[(usize, usize)], cut: &[bool]) -> Option<Vec<usize>> {
    let g = &inst.graph;
    for &(s, t) in pairs {
        // BFS over nodes; `via[v]` is (previous node, arc index).
        let n = g.node_count();
        let mut via = vec![(usize::MAX, usize::MAX); n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &(v, a) in g.out_arcs(u) {
                let open = match inst.flavor {
                    Flavor::Vertex => v == t || !cut[v],
                    Flavor::Edge => !cut[a],
                };
                if seen[v] || !open {
                    continue;
                }
                seen[v] = true;
                via[v] = (u, a);
                if v == t {
                    found = true;
                    break;
                }
                queue.push_back(v);
            }
            if found {
                break;
            }
        }
        if found {
            let mut path = Vec::new();
            let mut v = t;
            while v != s {
                let (u, a) = via[v];
                match inst.flavor {
                    Flavor::Vertex => {
                        if u != s {
                            path.push(u);
                        }
                    }
                    Flavor::Edge => path.push(a),
                }
                v = u;
            }
            path.reverse();
            return Some(path);
        }
    }
    None
}

struct BranchAndBound<'a> {
    inst: &'a Instance,
    pairs: Vec<(usize, usize)>,
    cuttable: Vec<bool>,
    lp: LpConfig,
    big: f64,
    best: Option<CutSet>,
}

impl BranchAndBound<'_> {
    /// Lower bound on any completion: chosen cost plus the LP with chosen
    /// elements free and excluded elements priced out.
    fn bound(&self, chosen: &[bool], excluded: &[bool], chosen_cost: f64) -> Result<f64> {
        let mut residual = self.inst.clone();
        residual.weights = None;
        residual.demands = crate::graph::Demands::Pairs(self.pairs.clone());
        for e in 0..residual.costs.len() {
            if chosen[e] {
                residual.costs[e] = 0.0;
            } else if excluded[e] || !self.cuttable[e] {
                residual.costs[e] = self.big;
            }
        }
        Ok(chosen_cost + fractional_multicut(&residual, &self.lp)?.value)
    }

    fn search(
        &mut self,
        chosen: &mut Vec<bool>,
        excluded: &mut Vec<bool>,
        cost: f64,
    ) -> Result<()> {
        if let Some(best) = &self.best {
            if cost > best.cost + 1e-9 {
                return Ok(());
            }
        }
        let Some(path) = uncut_path(self.inst, &self.pairs, chosen) else {
            let cut = CutSet::new(self.inst, (0..chosen.len()).filter(|&e| chosen[e]))?;
            if self.best.as_ref().is_none_or(|b| better(&cut, b)) {
                self.best = Some(cut);
            }
            return Ok(());
        };
        if let Some(best) = &self.best {
            if self.bound(chosen, excluded, cost)? > best.cost + 1e-6 {
                return Ok(());
            }
        }
        let options: Vec<usize> = path
            .into_iter()
            .filter(|&e| self.cuttable[e] && !excluded[e])
            .collect();
        let mut newly_excluded = Vec::new();
        for e in options {
            chosen[e] = true;
            self.search(chosen, excluded, cost + self.inst.costs[e])?;
            chosen[e] = false;
            excluded[e] = true;
            newly_excluded.push(e);
        }
        for e in newly_excluded {
            excluded[e] = false;
        }
        Ok(())
    }
}

/// Minimum-cost integral multicut, ties broken by the lexicographically
/// smallest element set. Fails with `BudgetExceeded` when the instance has
/// more than `budget` cuttable elements.
pub fn exact_integral_multicut(inst: &Instance, budget: usize) -> Result<CutSet> {
    let elems = budget_check(inst, budget)?;
    check_cuttable(inst)?;
    let size = inst.element_count();
    let mut cuttable = vec![false; size];
    for e in elems {
        cuttable[e] = true;
    }
    let mut bb = BranchAndBound {
        inst,
        pairs: inst.demand_pairs(),
        cuttable,
        lp: LpConfig::default(),
        big: 1.0 + inst.costs.iter().sum::<f64>(),
        best: None,
    };
    bb.search(&mut vec![false; size], &mut vec![false; size], 0.0)?;
    bb.best
        .ok_or_else(|| Error::Infeasible("no integral multicut exists".into()))
}

/// Same answer as [`exact_integral_multicut`] by trying every subset of the
/// cuttable elements.
pub fn exact_integral_multicut_naive(inst: &Instance, budget: usize) -> Result<CutSet> {
    let elems = budget_check(inst, budget.min(30))?;
    check_cuttable(inst)?;
    let mut best: Option<CutSet> = None;
    for mask in 0u64..(1u64 << elems.len()) {
        let cut = CutSet::new(
            inst,
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )?;
        if best.as_ref().is_some_and(|b| !better(&cut, b)) {
            continue;
        }
        if check_cut(inst, &cut)?.is_empty() {
            best = Some(cut);
        }
    }
    best.ok_or_else(|| Error::Infeasible("no integral multicut exists".into()))
}

/// All simple demand paths as element lists: interior nodes in the vertex
/// flavor, arcs in the edge flavor.
pub fn enumerate_demand_paths(inst: &Instance, budget: usize) -> Result<Vec<Vec<usize>>> {
    let g = &inst.graph;
    let n = g.node_count();
    let mut out = Vec::new();
    for (s, t) in inst.demand_pairs() {
        // Iterative DFS: stack of (node, next out-arc position).
        let mut on_path = vec![false; n];
        let mut nodes = vec![s];
        let mut arcs: Vec<usize> = Vec::new();
        let mut cursor = vec![0usize];
        on_path[s] = true;
        while let Some(&u) = nodes.last() {
            let pos = *cursor.last().expect("parallel stacks");
            let out_arcs = g.out_arcs(u);
            if pos == out_arcs.len() {
                on_path[u] = false;
                nodes.pop();
                cursor.pop();
                arcs.pop();
                continue;
            }
            *cursor.last_mut().expect("parallel stacks") += 1;
            let (v, a) = out_arcs[pos];
            if v == t {
                let path = match inst.flavor {
                    Flavor::Vertex => nodes[1..].to_vec(),
                    Flavor::Edge => {
                        let mut p = arcs.clone();
                        p.push(a);
                        p
                    }
                };
                out.push(path);
                if out.len() > budget {
                    return Err(Error::BudgetExceeded {
                        limit: budget,
                        found: out.len(),
                    });
                }
                continue;
            }
            if on_path[v] {
                continue;
            }
            on_path[v] = true;
            nodes.push(v);
            cursor.push(0);
            arcs.push(a);
        }
    }
    Ok(out)
}

/// Fractional multicut LP over every simple demand path at once, with no
/// separation oracle. `constraint_count` is the number of paths.
pub fn exact_fractional_multicut_small(inst: &Instance) -> Result<LpResult> {
    exact_fractional_multicut_budget(inst, DEFAULT_PATH_BUDGET)
}

pub fn exact_fractional_multicut_budget(inst: &Instance, budget: usize) -> Result<LpResult> {
    let paths = enumerate_demand_paths(inst, budget)?;
    if paths.iter().any(|p| p.is_empty()) {
        return Err(Error::Infeasible("a demand is joined by an arc".into()));
    }
    let cfg = LpConfig::default();
    let mut lp = PathLp::new(&cfg, None, inst.node_count().max(1));
    let count = paths.len();
    for p in paths {
        lp.add_path(p, |e| inst.costs[e])?;
    }
    if count > 0 {
        lp.solve()?;
    }
    let w = lp.weights(inst.element_count());
    let value = w.iter().zip(&inst.costs).map(|(a, b)| a * b).sum();
    Ok(LpResult {
        weights: WeightFunction(w),
        value,
        constraint_count: count,
        iterations: 1,
        paths: lp.paths,
    })
}

/// Capped single-pair vertex cut LP over every simple `s -> t` path avoiding
/// `frozen`, the explicit counterpart of
/// [`min_capped_vertex_cut`](crate::fraccut::min_capped_vertex_cut).
pub fn exact_capped_vertex_cut_small(
    g: &DirectedGraph,
    frozen: &[bool],
    s: usize,
    t: usize,
    cap: f64,
) -> Result<LpResult> {
    let n = g.node_count();
    let inst = Instance::new(
        g.clone(),
        Flavor::Vertex,
        vec![1.0; n],
        None,
        Demands::Pairs(vec![(s, t)]),
    )?;
    let paths: Vec<Vec<usize>> = enumerate_demand_paths(&inst, DEFAULT_PATH_BUDGET)?
        .into_iter()
        .filter(|p| p.iter().all(|&v| !frozen[v]))
        .collect();
    let cfg = LpConfig::default();
    if paths
        .iter()
        .any(|p| (p.len() as f64) * cap < 1.0 - cfg.separation_tol)
    {
        return Err(Error::Infeasible(format!(
            "an ({s}, {t}) path is too short for cap {cap}"
        )));
    }
    let mut lp = PathLp::new(&cfg, Some(cap), n.max(1));
    let count = paths.len();
    for p in paths {
        lp.add_path(p, |_| 1.0)?;
    }
    if count > 0 {
        lp.solve()?;
    }
    let w = lp.weights(n);
    let value = w.iter().sum();
    Ok(LpResult {
        weights: WeightFunction(w),
        value,
        constraint_count: count,
        iterations: 1,
        paths: lp.paths,
    })
}

/// Dinic max-flow on an explicit arc list.
struct Dinic {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, f: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if u == t {
            return f;
        }
        while it[u] < self.adj[u].len() {
            let e = self.adj[u][it[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.augment(v, t, f.min(self.cap[e]), level, it);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return flow;
            }
            let mut it = vec![0; self.adj.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }
}

/// Minimum number of interior vertices separating `s` from `t`, by unit
/// node-capacity max-flow on the split graph.
pub fn menger_min_vertex_cut(g: &DirectedGraph, s: usize, t: usize) -> Result<usize> {
    let n = g.node_count();
    for v in [s, t] {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
    }
    if s == t || g.has_arc(s, t) {
        return Err(Error::Infeasible(format!(
            "({s}, {t}) has no interior vertex to cut"
        )));
    }
    let inf = n as i64 + 1;
    let mut flow = Dinic::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { inf } else { 1 };
        flow.add(2 * v, 2 * v + 1, c);
    }
    for &(u, v) in g.arcs() {
        flow.add(2 * u + 1, 2 * v, inf);
    }
    Ok(flow.max_flow(2 * s + 1, 2 * t) as usize)
}

/// Exact integral and fractional optima and their ratio.
pub fn empirical_gap(inst: &Instance) -> Result<OracleReport> {
    empirical_gap_budget(inst, DEFAULT_ELEMENT_BUDGET)
}

pub fn empirical_gap_budget(inst: &Instance, element_budget: usize) -> Result<OracleReport> {
    let cut = exact_integral_multicut(inst, element_budget)?;
    let frac = exact_fractional_multicut_small(inst)?;
    let gap = if cut.cost == 0.0 && frac.value.abs() <= 1e-12 {
        1.0
    } else {
        cut.cost / frac.value
    };
    Ok(OracleReport {
        integral_opt: cut.cost,
        integral_cut: cut,
        fractional_opt: frac.value,
        fractional_weights: frac.weights,
        gap,
        paths_enumerated: frac.constraint_count,
    })
}
