//! Directed graphs, interior-vertex distances, reachability under node
//! removal and cut validity.
//!
//! Vertex distances only count the weights of *interior* vertices of a path:
//! an arc `s -> t` gives distance 0 regardless of weights, and `vdist(s, s)`
//! is 0 by convention. Weighted distances run Dijkstra on the node-split view
//! (`v_in -> v_out` carries `w(v)`, original arcs carry 0) measured from
//! `s_out` to `t_in`, which is what the `label` recurrence below computes.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};
use crate::EPS_DIST;

/// Directed graph on nodes `0..n` with sorted, deduplicated arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    /// `(head, arc index)` per tail.
    out_adj: Vec<Vec<(usize, usize)>>,
    /// `(tail, arc index)` per head.
    in_adj: Vec<Vec<(usize, usize)>>,
}

impl DirectedGraph {
    /// Builds a graph, sorting arcs and dropping parallel copies.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            out_adj[u].push((v, i));
            in_adj[v].push((u, i));
        }
        Ok(Self {
            n,
            arcs,
            out_adj,
            in_adj,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    /// Index of arc `(u, v)` in the canonical arc order.
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_index(u, v).is_some()
    }

    /// Out-neighbors of `u` with the index of the connecting arc.
    pub fn out_arcs(&self, u: usize) -> &[(usize, usize)] {
        &self.out_adj[u]
    }

    pub fn in_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// A node without in-arcs or without out-arcs can never be the interior
    /// of a path.
    pub fn is_terminal(&self, v: usize) -> bool {
        self.in_adj[v].is_empty() || self.out_adj[v].is_empty()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }
}

/// Shortest-path length, with unreachability as its own variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(f64),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// `self >= threshold` up to [`EPS_DIST`]; unreachable counts as far.
    pub fn at_least(self, threshold: f64) -> bool {
        match self {
            Distance::Finite(d) => d >= threshold - EPS_DIST,
            Distance::Infinite => true,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.partial_cmp(b),
            (Distance::Finite(_), Distance::Infinite) => Some(Ordering::Less),
            (Distance::Infinite, Distance::Finite(_)) => Some(Ordering::Greater),
            (Distance::Infinite, Distance::Infinite) => Some(Ordering::Equal),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Key(pub f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Unweighted vertex distances from `s`: the number of interior vertices on
/// a shortest path, `None` when unreachable.
pub fn vdist_unweighted(g: &DirectedGraph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n];
    if s >= g.n {
        return dist;
    }
    dist[s] = Some(0);
    let mut queue = VecDeque::new();
    for &(v, _) in g.out_arcs(s) {
        if dist[v].is_none() {
            dist[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u].unwrap_or(0) + 1;
        for &(v, _) in g.out_arcs(u) {
            if dist[v].is_none() {
                dist[v] = Some(next);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Unweighted distances in `g` with the `removed` nodes deleted, except
/// that `s` itself is always kept.
pub(crate) fn vdist_unweighted_removed(
    g: &DirectedGraph,
    removed: &[bool],
    s: usize,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n];
    dist[s] = Some(0);
    let mut queue = VecDeque::new();
    for &(v, _) in g.out_arcs(s) {
        if !removed[v] && dist[v].is_none() {
            dist[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u].unwrap_or(0) + 1;
        for &(v, _) in g.out_arcs(u) {
            if !removed[v] && dist[v].is_none() {
                dist[v] = Some(next);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Result of a vertex-weighted Dijkstra run.
pub(crate) struct VertexSearch {
    pub dist: Vec<Distance>,
    pub pred: Vec<usize>,
}

impl VertexSearch {
    /// Interior vertices of the recorded shortest `s -> t` path, in order.
    pub fn interior_path(&self, s: usize, t: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut v = self.pred[t];
        while v != s && v != usize::MAX {
            path.push(v);
            v = self.pred[v];
        }
        path.reverse();
        path
    }
}

/// Vertex-weighted Dijkstra from `s`. Nodes in `blocked` may be reached but
/// never expanded, so they only appear as path endpoints. When `target` is
/// given the search stops once it is settled.
pub(crate) fn vertex_dijkstra(
    g: &DirectedGraph,
    weight: &[f64],
    s: usize,
    blocked: Option<&[bool]>,
    target: Option<usize>,
) -> VertexSearch {
    let n = g.n;
    let mut dist = vec![Distance::Infinite; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Distance::Finite(0.0);
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if Some(u) == target {
            break;
        }
        if u != s && blocked.is_some_and(|b| b[u]) {
            continue;
        }
        let leave = if u == s { d } else { d + weight[u] };
        for &(v, _) in g.out_arcs(u) {
            if v == s || done[v] {
                continue;
            }
            let better = match dist[v] {
                Distance::Finite(old) => leave < old,
                Distance::Infinite => true,
            };
            if better {
                dist[v] = Distance::Finite(leave);
                pred[v] = u;
                heap.push(Reverse((Key(leave), v)));
            }
        }
    }
    VertexSearch { dist, pred }
}

/// Arc-weighted Dijkstra from `s`; `pred` holds the arc index used to enter
/// each node.
pub(crate) fn arc_dijkstra(
    g: &DirectedGraph,
    weight: &[f64],
    s: usize,
    blocked_arcs: Option<&[bool]>,
) -> (Vec<Distance>, Vec<usize>) {
    let n = g.n;
    let mut dist = vec![Distance::Infinite; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Distance::Finite(0.0);
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, a) in g.out_arcs(u) {
            if done[v] || blocked_arcs.is_some_and(|b| b[a]) {
                continue;
            }
            let nd = d + weight[a];
            let better = match dist[v] {
                Distance::Finite(old) => nd < old,
                Distance::Infinite => true,
            };
            if better {
                dist[v] = Distance::Finite(nd);
                pred[v] = a;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    (dist, pred)
}

/// Vertex-weighted distances from `s`, counting interior vertices only.
pub fn vdist_weighted(g: &DirectedGraph, w: &[f64], s: usize) -> Vec<Distance> {
    vertex_dijkstra(g, w, s, None, None).dist
}

/// Arc-weighted distances from `s`.
pub fn edge_dist_weighted(g: &DirectedGraph, w: &[f64], s: usize) -> Vec<Distance> {
    arc_dijkstra(g, w, s, None).0
}

/// Whether some `u -> v` path has all interior vertices outside `blocked`.
/// `u` and `v` may themselves be blocked.
pub fn reachable_avoiding(g: &DirectedGraph, blocked: &[bool], u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let mut seen = vec![false; g.n];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        for &(y, _) in g.out_arcs(x) {
            if y == v {
                return true;
            }
            if !seen[y] && !blocked[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Nodes `v` reachable from `s` by a path whose interior avoids `blocked`.
pub(crate) fn reach_avoiding(g: &DirectedGraph, blocked: &[bool], s: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        if x != s && blocked[x] {
            continue;
        }
        for &(y, _) in g.out_arcs(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Whether some `u -> v` path uses no arc in `blocked_arcs`.
pub fn reachable_avoiding_arcs(
    g: &DirectedGraph,
    blocked_arcs: &[bool],
    u: usize,
    v: usize,
) -> bool {
    if u == v {
        return true;
    }
    let mut seen = vec![false; g.n];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        for &(y, a) in g.out_arcs(x) {
            if blocked_arcs[a] || seen[y] {
                continue;
            }
            if y == v {
                return true;
            }
            seen[y] = true;
            stack.push(y);
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Costs and weights on nodes; cuts are sets of interior nodes.
    Vertex,
    /// Costs and weights on arcs; cuts are sets of arcs.
    Edge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Demands {
    Pairs(Vec<(usize, usize)>),
    /// Every pair at unweighted vertex distance at least `L` (vertex flavor).
    Threshold(f64),
}

/// A multicut instance. `costs` and `weights` are indexed by node in the
/// vertex flavor and by canonical arc index in the edge flavor.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: DirectedGraph,
    pub flavor: Flavor,
    pub costs: Vec<f64>,
    pub weights: Option<Vec<f64>>,
    pub demands: Demands,
}

impl Instance {
    pub fn new(
        graph: DirectedGraph,
        flavor: Flavor,
        costs: Vec<f64>,
        weights: Option<Vec<f64>>,
        demands: Demands,
    ) -> Result<Self> {
        let inst = Self {
            graph,
            flavor,
            costs,
            weights,
            demands,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Vertex-flavor instance with unit costs and threshold demands.
    pub fn unit_threshold(graph: DirectedGraph, l: f64) -> Result<Self> {
        let n = graph.node_count();
        Self::new(
            graph,
            Flavor::Vertex,
            vec![1.0; n],
            None,
            Demands::Threshold(l),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.element_count();
        if self.costs.len() != expected {
            return Err(Error::InvalidInstance(format!(
                "expected {expected} costs, found {}",
                self.costs.len()
            )));
        }
        if let Some(c) = self.costs.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::InvalidInstance(format!(
                "cost {c} is not a nonnegative real"
            )));
        }
        if let Some(w) = &self.weights {
            if w.len() != expected {
                return Err(Error::InvalidInstance(format!(
                    "expected {expected} weights, found {}",
                    w.len()
                )));
            }
            if let Some(x) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(Error::InvalidInstance(format!(
                    "weight {x} is not a nonnegative real"
                )));
            }
        }
        match &self.demands {
            Demands::Pairs(pairs) => {
                for &(s, t) in pairs {
                    self.graph.check_node(s)?;
                    self.graph.check_node(t)?;
                    if s == t {
                        return Err(Error::InvalidInstance(format!(
                            "demand pair ({s}, {s}) has equal endpoints"
                        )));
                    }
                }
            }
            Demands::Threshold(l) => {
                if self.flavor != Flavor::Vertex {
                    return Err(Error::InvalidInstance(
                        "threshold demands need the vertex flavor".into(),
                    ));
                }
                if !(l.is_finite() && *l > 0.0) {
                    return Err(Error::InvalidInstance(format!(
                        "threshold {l} must be positive"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Number of cost-carrying elements (nodes or arcs).
    pub fn element_count(&self) -> usize {
        match self.flavor {
            Flavor::Vertex => self.graph.node_count(),
            Flavor::Edge => self.graph.arc_count(),
        }
    }

    /// Elements that can lie in the interior of some path; only these are
    /// worth cutting.
    pub fn cuttable_elements(&self) -> Vec<usize> {
        match self.flavor {
            Flavor::Vertex => (0..self.node_count())
                .filter(|&v| !self.graph.is_terminal(v))
                .collect(),
            Flavor::Edge => (0..self.graph.arc_count()).collect(),
        }
    }

    /// Total fractional weight `W`.
    pub fn total_weight(&self) -> Option<f64> {
        self.weights.as_ref().map(|w| w.iter().sum())
    }

    /// `<cost, w>`.
    pub fn cost_weight_product(&self) -> Option<f64> {
        self.weights
            .as_ref()
            .map(|w| w.iter().zip(&self.costs).map(|(w, c)| w * c).sum())
    }

    /// Materialized demand pairs, sorted for threshold mode. Threshold mode
    /// only lists reachable pairs: unreachable pairs need no cutting.
    pub fn demand_pairs(&self) -> Vec<(usize, usize)> {
        match &self.demands {
            Demands::Pairs(p) => p.clone(),
            Demands::Threshold(l) => threshold_pairs(&self.graph, *l),
        }
    }

    /// Pairs `(a, b)` whose weighted distance under the instance weights is
    /// at least 1, i.e. the pairs the weights fractionally cut.
    pub fn fractionally_cut_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let w = self.weights.as_ref().ok_or(Error::MissingWeights)?;
        let n = self.node_count();
        let mut pairs = Vec::new();
        for s in 0..n {
            let dist = match self.flavor {
                Flavor::Vertex => vdist_weighted(&self.graph, w, s),
                Flavor::Edge => edge_dist_weighted(&self.graph, w, s),
            };
            for (t, d) in dist.into_iter().enumerate() {
                if t != s && d.is_finite() && d.at_least(1.0) {
                    pairs.push((s, t));
                }
            }
        }
        Ok(pairs)
    }
}

/// All reachable pairs `(s, t)`, `s != t`, at unweighted vertex distance at
/// least `l`.
pub fn threshold_pairs(g: &DirectedGraph, l: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for s in 0..g.node_count() {
        for (t, d) in vdist_unweighted(g, s).into_iter().enumerate() {
            if let Some(d) = d {
                if t != s && d as f64 >= l - EPS_DIST {
                    pairs.push((s, t));
                }
            }
        }
    }
    pairs
}

/// An integral cut: sorted, distinct element ids plus their total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSet {
    pub flavor: Flavor,
    pub elements: Vec<usize>,
    pub cost: f64,
}

impl CutSet {
    pub fn new(inst: &Instance, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        let count = inst.element_count();
        if let Some(&bad) = elements.iter().find(|&&e| e >= count) {
            return Err(Error::InvalidInstance(format!(
                "cut element {bad} does not exist ({count} elements)"
            )));
        }
        let cost = elements.iter().map(|&e| inst.costs[e]).sum();
        Ok(Self {
            flavor: inst.flavor,
            elements,
            cost,
        })
    }

    /// Node cut on a unit-cost graph.
    pub fn unit_nodes(mut nodes: Vec<usize>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        let cost = nodes.len() as f64;
        Self {
            flavor: Flavor::Vertex,
            elements: nodes,
            cost,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn mask(&self, size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for &e in &self.elements {
            m[e] = true;
        }
        m
    }
}

/// Demand pairs left uncut by `x`; empty iff `x` is a valid multicut.
pub fn check_cut(inst: &Instance, x: &CutSet) -> Result<Vec<(usize, usize)>> {
    if x.flavor != inst.flavor {
        return Err(Error::FlavorMismatch);
    }
    let mask = x.mask(inst.element_count());
    let violated = inst
        .demand_pairs()
        .into_iter()
        .filter(|&(s, t)| match inst.flavor {
            Flavor::Vertex => reachable_avoiding(&inst.graph, &mask, s, t),
            Flavor::Edge => reachable_avoiding_arcs(&inst.graph, &mask, s, t),
        })
        .collect();
    Ok(violated)
}
