//! Instance transforms between the cut problem variants, each with a
//! pull-back carrying a valid cut of the transformed instance to a valid cut
//! of the original.
//!
//! Demands are always carried as explicit pairs: each original demand
//! `(a, b)` is mapped to one pair of the transformed instance.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{vdist_weighted, CutSet, Demands, DirectedGraph, Flavor, Instance};
use crate::EPS_DIST;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionKind {
    EdgeToVertex,
    VertexToEdge,
    ToUnitCosts,
    ToUniformWeights,
    HeavyNode,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::EdgeToVertex => "edge-to-vertex",
            ReductionKind::VertexToEdge => "vertex-to-edge",
            ReductionKind::ToUnitCosts => "unit-cost",
            ReductionKind::ToUniformWeights => "uniform-weight",
            ReductionKind::HeavyNode => "heavy",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            ReductionKind::EdgeToVertex,
            ReductionKind::VertexToEdge,
            ReductionKind::ToUnitCosts,
            ReductionKind::ToUniformWeights,
            ReductionKind::HeavyNode,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// How transformed cut elements select original elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullBackRule {
    /// An original element is cut when any of its images is cut.
    Any,
    /// An original element is cut only when all of its images are cut.
    AllCopies,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionMapping {
    pub kind: ReductionKind,
    pub transformed: Instance,
    /// Original elements behind each transformed element.
    pub origin: Vec<Vec<usize>>,
    pub rule: PullBackRule,
    /// Original elements cut before the transform (heavy nodes).
    pub preprocessed_cut: Vec<usize>,
}

impl ReductionMapping {
    /// Carries a cut of the transformed instance back to `original`.
    pub fn pull_back(&self, original: &Instance, cut: &CutSet) -> Result<CutSet> {
        if cut.flavor != self.transformed.flavor {
            return Err(Error::FlavorMismatch);
        }
        let size = self.transformed.element_count();
        if let Some(&bad) = cut.elements.iter().find(|&&e| e >= size) {
            return Err(Error::InvalidInstance(format!(
                "cut element {bad} does not exist in the transformed instance"
            )));
        }
        let mut out: Vec<usize> = self.preprocessed_cut.clone();
        match self.rule {
            PullBackRule::Any => {
                for &e in &cut.elements {
                    out.extend_from_slice(&self.origin[e]);
                }
            }
            PullBackRule::AllCopies => {
                let mut copies: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
                for (e, origins) in self.origin.iter().enumerate() {
                    let hit = cut.contains(e);
                    for &o in origins {
                        let entry = copies.entry(o).or_default();
                        entry.0 += 1;
                        entry.1 += usize::from(hit);
                    }
                }
                out.extend(
                    copies
                        .into_iter()
                        .filter(|(_, (total, hit))| total == hit)
                        .map(|(o, _)| o),
                );
            }
        }
        CutSet::new(original, out)
    }
}

fn require_weights(inst: &Instance) -> Result<&[f64]> {
    inst.weights.as_deref().ok_or(Error::MissingWeights)
}

fn require_flavor(inst: &Instance, flavor: Flavor) -> Result<()> {
    if inst.flavor == flavor {
        Ok(())
    } else {
        Err(Error::FlavorMismatch)
    }
}

/// Replaces each node `v` by a path of `k = ceil(w(v) / (W/n))` copies of
/// weight `W/n`. Arcs enter the first copy and leave the last. Demand
/// `(a, b)` becomes `(last copy of a, first copy of b)`. Needs unit costs.
pub fn to_uniform_weights(inst: &Instance) -> Result<ReductionMapping> {
    require_flavor(inst, Flavor::Vertex)?;
    let w = require_weights(inst)?;
    if let Some(c) = inst.costs.iter().find(|&&c| c != 1.0) {
        return Err(Error::InvalidInstance(format!(
            "uniform-weight reduction needs unit costs, found {c}"
        )));
    }
    let n = inst.node_count();
    let total: f64 = w.iter().sum();
    let unit = if n == 0 { 0.0 } else { total / n as f64 };
    let mut first = Vec::with_capacity(n);
    let mut origin = Vec::new();
    for (v, &wv) in w.iter().enumerate() {
        let k = if unit > 0.0 {
            (libm::ceil(wv / unit - 1e-9) as usize).max(1)
        } else {
            1
        };
        first.push(origin.len());
        origin.extend(core::iter::repeat_n(vec![v], k));
    }
    let n2 = origin.len();
    let last = |v: usize| if v + 1 < n { first[v + 1] - 1 } else { n2 - 1 };
    let mut arcs = Vec::new();
    for v in 0..n {
        for c in first[v]..last(v) {
            arcs.push((c, c + 1));
        }
    }
    for &(a, b) in inst.graph.arcs() {
        arcs.push((last(a), first[b]));
    }
    let pairs = inst
        .demand_pairs()
        .into_iter()
        .map(|(a, b)| (last(a), first[b]))
        .collect();
    let transformed = Instance::new(
        DirectedGraph::new(n2, arcs)?,
        Flavor::Vertex,
        vec![1.0; n2],
        Some(vec![unit; n2]),
        Demands::Pairs(pairs),
    )?;
    Ok(ReductionMapping {
        kind: ReductionKind::ToUniformWeights,
        transformed,
        origin,
        rule: PullBackRule::Any,
        preprocessed_cut: Vec::new(),
    })
}

/// Unit-cost reduction in three passes.
///
/// 1. Contract every non-terminal node with `w(v) <= 1/(2n)` (ascending id;
///    in-neighbors get arcs to out-neighbors), double all weights, clamp at 1.
///    Demand endpoints are never contracted, since the demand would lose its
///    endpoint.
/// 2. Scale costs so that `2<cost, w> = w(V)` over non-terminal nodes, then
///    raise costs below 1 to 1. Terminal nodes get cost 1.
/// 3. Split each node into `ceil(cost)` unit-cost copies which all inherit
///    every arc and keep the node's weight.
///
/// A node is pulled back only when all its copies are cut. Demand `(a, b)`
/// maps to the first copies of `a` and `b`.
pub fn to_unit_costs(inst: &Instance) -> Result<ReductionMapping> {
    require_flavor(inst, Flavor::Vertex)?;
    let w0 = require_weights(inst)?;
    let n = inst.node_count();
    let pairs = inst.demand_pairs();
    let mut protected = vec![false; n];
    for &(a, b) in &pairs {
        protected[a] = true;
        protected[b] = true;
    }
    let terminal: Vec<bool> = (0..n).map(|v| inst.graph.is_terminal(v)).collect();

    // Pass 1: contraction on adjacency sets.
    let mut out_adj: Vec<alloc::collections::BTreeSet<usize>> = vec![Default::default(); n];
    let mut in_adj: Vec<alloc::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for &(u, v) in inst.graph.arcs() {
        out_adj[u].insert(v);
        in_adj[v].insert(u);
    }
    let low = 1.0 / (2.0 * n as f64);
    let mut alive = vec![true; n];
    for v in 0..n {
        if terminal[v] || protected[v] || w0[v] > low {
            continue;
        }
        alive[v] = false;
        let ins: Vec<usize> = core::mem::take(&mut in_adj[v]).into_iter().collect();
        let outs: Vec<usize> = core::mem::take(&mut out_adj[v]).into_iter().collect();
        for &u in &ins {
            out_adj[u].remove(&v);
        }
        for &x in &outs {
            in_adj[x].remove(&v);
        }
        for &u in &ins {
            for &x in &outs {
                if u != x {
                    out_adj[u].insert(x);
                    in_adj[x].insert(u);
                }
            }
        }
    }
    let w: Vec<f64> = w0.iter().map(|&x| (2.0 * x).min(1.0)).collect();

    // Pass 2: cost rescaling over surviving non-terminal nodes.
    let inner: Vec<usize> = (0..n).filter(|&v| alive[v] && !terminal[v]).collect();
    let cw: f64 = inner.iter().map(|&v| inst.costs[v] * w[v]).sum();
    let wsum: f64 = inner.iter().map(|&v| w[v]).sum();
    let alpha = if cw > 0.0 { wsum / (2.0 * cw) } else { 1.0 };
    let cost: Vec<f64> = (0..n)
        .map(|v| {
            if terminal[v] {
                1.0
            } else {
                (inst.costs[v] * alpha).max(1.0)
            }
        })
        .collect();

    // Pass 3: splitting.
    let mut first = vec![usize::MAX; n];
    let mut count = vec![0usize; n];
    let mut origin = Vec::new();
    for v in (0..n).filter(|&v| alive[v]) {
        let k = (libm::ceil(cost[v] - 1e-9) as usize).max(1);
        first[v] = origin.len();
        count[v] = k;
        origin.extend(core::iter::repeat_n(vec![v], k));
    }
    let n2 = origin.len();
    let mut arcs = Vec::new();
    for u in (0..n).filter(|&u| alive[u]) {
        for &x in &out_adj[u] {
            for cu in first[u]..first[u] + count[u] {
                for cx in first[x]..first[x] + count[x] {
                    arcs.push((cu, cx));
                }
            }
        }
    }
    let weights: Vec<f64> = origin.iter().map(|o| w[o[0]]).collect();
    let pairs = pairs
        .into_iter()
        .map(|(a, b)| (first[a], first[b]))
        .collect();
    let transformed = Instance::new(
        DirectedGraph::new(n2, arcs)?,
        Flavor::Vertex,
        vec![1.0; n2],
        Some(weights),
        Demands::Pairs(pairs),
    )?;
    Ok(ReductionMapping {
        kind: ReductionKind::ToUnitCosts,
        transformed,
        origin,
        rule: PullBackRule::AllCopies,
        preprocessed_cut: Vec::new(),
    })
}

/// Accounting figures for a unit-cost transform: `<cost, w>` after the cost
/// rescaling (before splitting), and the number of surviving nodes exempt
/// from the `w >= 1/(2n)` floor (terminals and protected demand endpoints).
pub fn unit_cost_accounting(inst: &Instance) -> Result<(f64, usize)> {
    let w0 = require_weights(inst)?;
    let n = inst.node_count();
    let mut protected = vec![false; n];
    for (a, b) in inst.demand_pairs() {
        protected[a] = true;
        protected[b] = true;
    }
    let terminal: Vec<bool> = (0..n).map(|v| inst.graph.is_terminal(v)).collect();
    let low = 1.0 / (2.0 * n as f64);
    let alive: Vec<bool> = (0..n)
        .map(|v| terminal[v] || protected[v] || w0[v] > low)
        .collect();
    let w: Vec<f64> = w0.iter().map(|&x| (2.0 * x).min(1.0)).collect();
    let inner: Vec<usize> = (0..n).filter(|&v| alive[v] && !terminal[v]).collect();
    let cw: f64 = inner.iter().map(|&v| inst.costs[v] * w[v]).sum();
    let wsum: f64 = inner.iter().map(|&v| w[v]).sum();
    let alpha = if cw > 0.0 { wsum / (2.0 * cw) } else { 1.0 };
    let product = inner
        .iter()
        .map(|&v| (inst.costs[v] * alpha).max(1.0) * w[v])
        .sum();
    let exempt = (0..n)
        .filter(|&v| alive[v] && (terminal[v] || w0[v] <= low))
        .count();
    Ok((product, exempt))
}

/// Label index of an arc weight: `Some(k)` for label `2^-k`, `None` for the
/// zero label.
fn arc_label(w: f64, n: usize) -> Option<u32> {
    if w <= 1.0 / (2.0 * n as f64) {
        return None;
    }
    if w >= 1.0 {
        return Some(0);
    }
    let mut k = 0u32;
    while libm::ldexp(1.0, -(k as i32 + 1)) > w {
        k += 1;
    }
    Some(k)
}

/// Weight of a label index.
fn label_weight(label: Option<u32>) -> f64 {
    label.map_or(0.0, |k| libm::ldexp(1.0, -(k as i32)))
}

/// Edge to vertex reduction. Each node `v` becomes a biclique `L_v x R_v`
/// with nodes labelled from `{1, 1/2, ..., 1/N, 0}` (`N` the next power of
/// two at least `n`; the label is the node weight), plus `v_s -> R_v` and
/// `L_v -> v_e` of weight 0. Arc `(u, v)` of weight `w` becomes
/// `(R_u[i], L_v[i])` where `i` is 0 for `w <= 1/(2n)`, 1 for `w >= 1`, and
/// otherwise the smallest power of 1/2 above `w`. Unused labels are dropped.
/// A node costs the total cost of the arcs mapped onto it and pulls back to
/// those arcs. Demand `(a, b)` maps to `(a_s, b_e)`.
pub fn edge_to_vertex(inst: &Instance) -> Result<ReductionMapping> {
    require_flavor(inst, Flavor::Edge)?;
    let w = require_weights(inst)?;
    let g = &inst.graph;
    let n = g.node_count();
    let labels: Vec<Option<u32>> = w.iter().map(|&x| arc_label(x, n.max(1))).collect();
    // Used labels per node side, ordered 1, 1/2, ..., 0.
    let key = |l: Option<u32>| l.map_or(u32::MAX, |k| k);
    let mut left: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        right[u].push(key(labels[a]));
        left[v].push(key(labels[a]));
    }
    for side in left.iter_mut().chain(right.iter_mut()) {
        side.sort_unstable();
        side.dedup();
    }
    let mut start = vec![0usize; n];
    let mut weights = Vec::new();
    let mut next = 0usize;
    let lw = |k: u32| label_weight(if k == u32::MAX { None } else { Some(k) });
    for v in 0..n {
        start[v] = next;
        weights.push(0.0);
        weights.push(0.0);
        weights.extend(left[v].iter().map(|&k| lw(k)));
        weights.extend(right[v].iter().map(|&k| lw(k)));
        next += 2 + left[v].len() + right[v].len();
    }
    let source = |v: usize| start[v];
    let sink = |v: usize| start[v] + 1;
    let lnode = |v: usize, k: u32| start[v] + 2 + left[v].binary_search(&k).expect("used label");
    let rnode = |v: usize, k: u32| {
        start[v] + 2 + left[v].len() + right[v].binary_search(&k).expect("used label")
    };
    let mut arcs = Vec::new();
    let mut origin: Vec<Vec<usize>> = vec![Vec::new(); next];
    let mut cost = vec![0.0; next];
    for v in 0..n {
        for &kl in &left[v] {
            arcs.push((lnode(v, kl), sink(v)));
            for &kr in &right[v] {
                arcs.push((lnode(v, kl), rnode(v, kr)));
            }
        }
        for &kr in &right[v] {
            arcs.push((source(v), rnode(v, kr)));
        }
    }
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        let k = key(labels[a]);
        let (x, y) = (rnode(u, k), lnode(v, k));
        arcs.push((x, y));
        for z in [x, y] {
            origin[z].push(a);
            cost[z] += inst.costs[a];
        }
    }
    let pairs = inst
        .demand_pairs()
        .into_iter()
        .map(|(a, b)| (source(a), sink(b)))
        .collect();
    let transformed = Instance::new(
        DirectedGraph::new(next, arcs)?,
        Flavor::Vertex,
        cost,
        Some(weights),
        Demands::Pairs(pairs),
    )?;
    Ok(ReductionMapping {
        kind: ReductionKind::EdgeToVertex,
        transformed,
        origin,
        rule: PullBackRule::Any,
        preprocessed_cut: Vec::new(),
    })
}

/// Node splitting: `v` becomes `v_in = 2v` and `v_out = 2v + 1` joined by an
/// arc carrying `w(v)` and `cost(v)`; every original arc `(u, v)` becomes
/// `(u_out, v_in)` with weight 0 and cost `1 + Σ cost`. A split arc pulls
/// back to its node, a rerouted arc to both of its endpoints. Demand
/// `(a, b)` maps to `(a_out, b_in)`; a demand joined by an arc has no vertex
/// cut and is rejected.
pub fn vertex_to_edge(inst: &Instance) -> Result<ReductionMapping> {
    require_flavor(inst, Flavor::Vertex)?;
    let g = &inst.graph;
    let n = g.node_count();
    let pairs = inst.demand_pairs();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| g.has_arc(a, b)) {
        return Err(Error::Infeasible(format!(
            "demand ({a}, {b}) is joined by an arc"
        )));
    }
    let big = 1.0 + inst.costs.iter().sum::<f64>();
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    arcs.extend(g.arcs().iter().map(|&(u, v)| (2 * u + 1, 2 * v)));
    let graph = DirectedGraph::new(2 * n, arcs)?;
    let m = graph.arc_count();
    let mut cost = vec![big; m];
    let mut weights = vec![0.0; m];
    let mut origin: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (a, &(x, y)) in graph.arcs().iter().enumerate() {
        if y == x + 1 && x % 2 == 0 {
            let v = x / 2;
            cost[a] = inst.costs[v];
            weights[a] = inst.weights.as_ref().map_or(0.0, |w| w[v]);
            origin[a] = vec![v];
        } else {
            origin[a] = vec![x / 2, y / 2];
        }
    }
    let pairs = pairs.into_iter().map(|(a, b)| (2 * a + 1, 2 * b)).collect();
    let transformed = Instance::new(
        graph,
        Flavor::Edge,
        cost,
        inst.weights.as_ref().map(|_| weights),
        Demands::Pairs(pairs),
    )?;
    Ok(ReductionMapping {
        kind: ReductionKind::VertexToEdge,
        transformed,
        origin,
        rule: PullBackRule::Any,
        preprocessed_cut: Vec::new(),
    })
}

/// Threshold `n^(-c/(1+c)) / 4` of the heavy-node reduction.
pub fn heavy_threshold(n: usize, c: f64) -> f64 {
    libm::pow(n as f64, -c / (1.0 + c)) / 4.0
}

/// Heavy-node self-reduction. `X1` holds every node of weight at least
/// `n^(-c/(1+c)) / 4`; the transform takes `X1` out of every path interior,
/// doubles all weights, and demands every pair at doubled weighted distance
/// at least 1. The final cut is `X1` plus the pulled-back cut.
///
/// Node ids below `n` are kept. A heavy node `h` keeps only its out-arcs and
/// gets an extra in-only copy `n + k` (the `k`-th heavy node), so it can
/// still end a demand path but never sits inside one.
///
/// The weights must cut every original demand fractionally.
pub fn heavy_node(inst: &Instance, c: f64) -> Result<ReductionMapping> {
    require_flavor(inst, Flavor::Vertex)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "exponent c = {c} must be positive"
        )));
    }
    let w = require_weights(inst)?;
    let g = &inst.graph;
    let n = g.node_count();
    for (a, b) in inst.demand_pairs() {
        let d = vdist_weighted(g, w, a)[b];
        if !d.at_least(1.0) {
            return Err(Error::InvalidInstance(format!(
                "weights leave demand ({a}, {b}) at distance {:?}",
                d.finite().unwrap_or(f64::INFINITY)
            )));
        }
    }
    let tau = heavy_threshold(n, c);
    let heavy: Vec<bool> = w.iter().map(|&x| x >= tau).collect();
    let x1: Vec<usize> = (0..n).filter(|&v| heavy[v]).collect();
    let mut sink_copy = vec![usize::MAX; n];
    for (k, &h) in x1.iter().enumerate() {
        sink_copy[h] = n + k;
    }
    let size = n + x1.len();
    let arcs = g.arcs().iter().map(|&(u, v)| {
        let head = if heavy[v] { sink_copy[v] } else { v };
        (u, head)
    });
    let graph = DirectedGraph::new(size, arcs)?;
    let mut origin: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    origin.extend(x1.iter().map(|&h| vec![h]));
    let mut doubled = vec![0.0; size];
    let mut costs = inst.costs.clone();
    for v in 0..n {
        if !heavy[v] {
            doubled[v] = 2.0 * w[v];
        }
    }
    costs.extend(x1.iter().map(|&h| inst.costs[h]));
    let mut pairs = Vec::new();
    for a in 0..n {
        let dist = vdist_weighted(&graph, &doubled, a);
        for (b, d) in dist.into_iter().enumerate() {
            if let Some(x) = d.finite() {
                if origin[b][0] != a && x >= 1.0 - EPS_DIST {
                    pairs.push((a, b));
                }
            }
        }
    }
    let transformed = Instance::new(
        graph,
        Flavor::Vertex,
        costs,
        Some(doubled),
        Demands::Pairs(pairs),
    )?;
    Ok(ReductionMapping {
        kind: ReductionKind::HeavyNode,
        transformed,
        origin,
        rule: PullBackRule::Any,
        preprocessed_cut: x1,
    })
}

/// Applies `kind` with its default parameters (`c = 1/2` for heavy nodes).
pub fn apply(kind: ReductionKind, inst: &Instance) -> Result<ReductionMapping> {
    match kind {
        ReductionKind::EdgeToVertex => edge_to_vertex(inst),
        ReductionKind::VertexToEdge => vertex_to_edge(inst),
        ReductionKind::ToUnitCosts => to_unit_costs(inst),
        ReductionKind::ToUniformWeights => to_uniform_weights(inst),
        ReductionKind::HeavyNode => heavy_node(inst, 0.5),
    }
}
