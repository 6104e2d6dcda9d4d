//! Randomized level-cut algorithms for the threshold demand set: every pair
//! `(s, t)` at unweighted vertex distance at least `L`.
//!
//! [`VertexCutRun`] is the epoch algorithm, advanced one round at a time so
//! callers can inspect the state between rounds; [`vertex_cut_main`] runs it
//! to completion over several trials. [`gupta_baseline`] is the older scheme
//! with unweighted distances and a radius drawn from `[0, L]`.
//!
//! Pairs with no `s -> t` path at all need no cutting and are left out of the
//! demand set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fraccut::{min_capped_vertex_cut_flow, min_capped_vertex_cut_seeded, LpConfig};
use crate::graph::{
    reach_avoiding, threshold_pairs, vdist_unweighted_removed, vertex_dijkstra, CutSet,
    DirectedGraph, Distance,
};
use crate::EPS_DIST;

/// How each round's capped single-pair cut is computed. Both return an
/// optimum of the same LP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CappedSolver {
    /// Successive shortest paths on the dual flow problem.
    #[default]
    Flow,
    /// Path generation over the bounded simplex.
    PathLp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConfig {
    pub l: f64,
    pub seed: u64,
    /// Independent trials; `None` means `ceil(log2 n)`, at least 1.
    pub trials: Option<usize>,
    /// Base of the `log n` in the epoch trigger.
    pub epoch_log_base: f64,
    pub collect_trace: bool,
    pub solver: CappedSolver,
    /// With `PathLp`, seed each pair's candidate LP with the paths it
    /// generated last round.
    pub reuse_lp_basis: bool,
    pub lp: LpConfig,
}

impl AlgoConfig {
    pub fn new(l: f64, seed: u64) -> Self {
        Self {
            l,
            seed,
            trials: None,
            epoch_log_base: 2.0,
            collect_trace: false,
            solver: CappedSolver::Flow,
            reuse_lp_basis: false,
            lp: LpConfig::default(),
        }
    }

    pub fn trial_count(&self, n: usize) -> usize {
        self.trials
            .unwrap_or_else(|| libm::ceil(libm::log2(n.max(1) as f64)) as usize)
            .max(1)
    }

    /// Trigger factor: `log n` in base `epoch_log_base`, clamped below at 2.
    pub fn trigger_factor(&self, n: usize) -> f64 {
        let log = libm::log(n.max(1) as f64) / libm::log(self.epoch_log_base);
        log.max(2.0)
    }

    fn validate(&self, n: usize) -> Result<()> {
        if !(self.l >= 1.0 && self.l <= n as f64) {
            return Err(Error::InvalidConfig(format!(
                "L = {} outside [1, n] with n = {n}",
                self.l
            )));
        }
        if !(self.epoch_log_base > 1.0 && self.epoch_log_base.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epoch log base {} must exceed 1",
                self.epoch_log_base
            )));
        }
        if self.trials == Some(0) {
            return Err(Error::InvalidConfig("trials must be positive".into()));
        }
        Ok(())
    }
}

/// splitmix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `i`: `splitmix64(seed + (i + 1) * 0x9e3779b97f4a7c15)`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    splitmix64(seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub epoch: usize,
    pub pair: (usize, usize),
    pub d: f64,
    /// Nodes newly added to `X`, ascending.
    pub added: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub mass_at_start: f64,
    pub pairs_at_start: usize,
    pub rounds: usize,
    /// `4^epoch / L`.
    pub cap: f64,
    /// Mass of the replaced weights when this epoch was triggered.
    pub mass_replaced: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub seed: u64,
    pub trigger_factor: f64,
    pub rounds: Vec<RoundRecord>,
    pub epochs: Vec<EpochRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub cut: CutSet,
    /// Trace of the winning trial, when requested.
    pub trace: Option<RunTrace>,
    pub trials_run: usize,
    pub best_trial: usize,
    pub epochs: usize,
    pub rounds: usize,
}

/// One remaining demand pair. An empty weight vector stands for all zeros.
#[derive(Debug, Clone)]
struct PairState {
    pair: (usize, usize),
    w: Vec<f64>,
    free_sum: f64,
    separated: bool,
    paths: Vec<Vec<usize>>,
}

fn free_sum(w: &[f64], frozen: &[bool]) -> f64 {
    w.iter()
        .zip(frozen)
        .filter(|(_, &f)| !f)
        .map(|(x, _)| *x)
        .sum()
}

/// Everything a caller may want to check about one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundEvent {
    pub record: RoundRecord,
    /// Effective node weights the level cut used (frozen nodes at 1).
    pub weights: Vec<f64>,
    /// `(replaced mass, adopted mass)` when this round started an epoch.
    pub transition: Option<(f64, f64)>,
}

/// State of one trial of the epoch algorithm.
#[derive(Debug, Clone)]
pub struct VertexCutRun<'g> {
    g: &'g DirectedGraph,
    l: f64,
    lp: LpConfig,
    solver: CappedSolver,
    reuse: bool,
    factor: f64,
    rng: ChaCha8Rng,
    frozen: Vec<bool>,
    pairs: Vec<PairState>,
    x_dirty: bool,
    epoch: usize,
    round: usize,
    trace: RunTrace,
}

impl<'g> VertexCutRun<'g> {
    /// Sets up one trial seeded with `seed` (not derived further).
    pub fn new(g: &'g DirectedGraph, cfg: &AlgoConfig, seed: u64) -> Result<Self> {
        let n = g.node_count();
        cfg.validate(n)?;
        let init = vec![1.0 / cfg.l; n];
        let init_sum = n as f64 / cfg.l;
        let pairs: Vec<PairState> = threshold_pairs(g, cfg.l)
            .into_iter()
            .map(|pair| PairState {
                pair,
                w: init.clone(),
                free_sum: init_sum,
                separated: false,
                paths: Vec::new(),
            })
            .collect();
        let factor = cfg.trigger_factor(n);
        let mass = init_sum * pairs.len() as f64;
        let trace = RunTrace {
            seed,
            trigger_factor: factor,
            rounds: Vec::new(),
            epochs: vec![EpochRecord {
                epoch: 1,
                mass_at_start: mass,
                pairs_at_start: pairs.len(),
                rounds: 0,
                cap: 4.0 / cfg.l,
                mass_replaced: None,
            }],
        };
        Ok(Self {
            g,
            l: cfg.l,
            lp: cfg.lp,
            solver: cfg.solver,
            reuse: cfg.reuse_lp_basis && cfg.solver == CappedSolver::PathLp,
            factor,
            rng: ChaCha8Rng::seed_from_u64(seed),
            frozen: vec![false; n],
            pairs,
            x_dirty: false,
            epoch: 1,
            round: 0,
            trace,
        })
    }

    pub fn is_done(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn epoch(&self) -> usize {
        self.epoch
    }

    /// Current per-node cap `4^epoch / L`.
    pub fn cap(&self) -> f64 {
        libm::pow(4.0, self.epoch as f64) / self.l
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn cut_nodes(&self) -> Vec<usize> {
        (0..self.frozen.len()).filter(|&v| self.frozen[v]).collect()
    }

    pub fn remaining_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|p| p.pair).collect()
    }

    /// Stored weights `w_{s,t}` of a remaining pair (zeros when none).
    pub fn pair_weights(&self, pair: (usize, usize)) -> Option<Vec<f64>> {
        let n = self.frozen.len();
        self.pairs.iter().find(|p| p.pair == pair).map(|p| {
            if p.w.is_empty() {
                vec![0.0; n]
            } else {
                p.w.clone()
            }
        })
    }

    /// Current `mass` of the stored weights over the remaining pairs.
    pub fn mass(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| free_sum(&p.w, &self.frozen))
            .sum()
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    fn refresh_after_cut(&mut self) {
        if !self.x_dirty {
            return;
        }
        self.x_dirty = false;
        let mut sources: Vec<usize> = self
            .pairs
            .iter()
            .filter(|p| !p.separated)
            .map(|p| p.pair.0)
            .collect();
        sources.sort_unstable();
        sources.dedup();
        for s in sources {
            let reach = reach_avoiding(self.g, &self.frozen, s);
            for p in self.pairs.iter_mut().filter(|p| p.pair.0 == s) {
                if !reach[p.pair.1] {
                    p.separated = true;
                }
            }
        }
        for p in &mut self.pairs {
            p.free_sum = free_sum(&p.w, &self.frozen);
        }
    }

    /// Runs one round; `None` once no demand pair remains.
    pub fn step(&mut self) -> Result<Option<RoundEvent>> {
        if self.pairs.is_empty() {
            return Ok(None);
        }
        self.refresh_after_cut();
        let cap = self.cap();
        // Candidate weights. A pair already separated by X has the zero
        // function as its exact optimum.
        let mut candidates: Vec<(Vec<f64>, f64, Vec<Vec<usize>>)> =
            Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            if p.separated {
                candidates.push((Vec::new(), 0.0, Vec::new()));
                continue;
            }
            let (s, t) = p.pair;
            let seeds: &[Vec<usize>] = if self.reuse { &p.paths } else { &[] };
            let res = match self.solver {
                CappedSolver::Flow => min_capped_vertex_cut_flow(self.g, &self.frozen, s, t, cap)?,
                CappedSolver::PathLp => {
                    min_capped_vertex_cut_seeded(self.g, &self.frozen, s, t, cap, &self.lp, seeds)?
                }
            };
            let sum = free_sum(&res.weights.0, &self.frozen);
            let paths = if self.reuse { res.paths } else { Vec::new() };
            candidates.push((res.weights.0, sum, paths));
        }
        let old_mass: f64 = self.pairs.iter().map(|p| p.free_sum).sum();
        let new_mass: f64 = candidates.iter().map(|c| c.1).sum();
        let mut transition = None;
        let triggered = old_mass > self.factor * new_mass;
        for (p, (w, sum, paths)) in self.pairs.iter_mut().zip(candidates) {
            if triggered {
                p.w = w;
                p.free_sum = sum;
            }
            if self.reuse {
                p.paths = paths;
            }
        }
        if triggered {
            self.epoch += 1;
            transition = Some((old_mass, new_mass));
            self.trace.epochs.push(EpochRecord {
                epoch: self.epoch,
                mass_at_start: new_mass,
                pairs_at_start: self.pairs.len(),
                rounds: 0,
                cap: self.cap(),
                mass_replaced: Some(old_mass),
            });
        }

        let idx = self.rng.random_range(0..self.pairs.len());
        let chosen = self.pairs.swap_remove(idx);
        let d: f64 = self.rng.random();
        let weights = self.level_weights(&chosen)?;
        let cut = level_cut_nodes(self.g, &weights, chosen.pair.0, d);
        let added: Vec<usize> = cut.into_iter().filter(|&v| !self.frozen[v]).collect();
        for &v in &added {
            self.frozen[v] = true;
        }
        if !added.is_empty() {
            self.x_dirty = true;
        }
        self.round += 1;
        let record = RoundRecord {
            round: self.round,
            epoch: self.epoch,
            pair: chosen.pair,
            d,
            added,
        };
        if let Some(e) = self.trace.epochs.last_mut() {
            e.rounds += 1;
        }
        self.trace.rounds.push(record.clone());
        Ok(Some(RoundEvent {
            record,
            weights,
            transition,
        }))
    }

    /// Effective weights of the chosen pair for its level cut: frozen nodes
    /// at 1, free nodes at `w`. Solver tolerance can leave the free-path
    /// distance to `t` a hair under 1; free weights are then scaled up so it
    /// is at least 1 and the cut stays exactly valid.
    fn level_weights(&self, p: &PairState) -> Result<Vec<f64>> {
        let n = self.frozen.len();
        let mut eff: Vec<f64> = (0..n)
            .map(|v| {
                if self.frozen[v] {
                    1.0
                } else {
                    p.w.get(v).copied().unwrap_or(0.0)
                }
            })
            .collect();
        let (s, t) = p.pair;
        let search = vertex_dijkstra(self.g, &eff, s, Some(&self.frozen), Some(t));
        if let Distance::Finite(dfree) = search.dist[t] {
            if dfree < 1.0 {
                if dfree <= 1.0 - 1e-3 {
                    return Err(Error::SolverStall(format!(
                        "weights of pair ({s}, {t}) leave it at distance {dfree}"
                    )));
                }
                for v in 0..n {
                    if !self.frozen[v] {
                        eff[v] /= dfree;
                    }
                }
            }
        }
        Ok(eff)
    }

    /// Runs the remaining rounds and returns the cut.
    pub fn finish(mut self) -> Result<(CutSet, RunTrace)> {
        while self.step()?.is_some() {}
        Ok((CutSet::unit_nodes(self.cut_nodes()), self.trace))
    }
}

/// `{ v : dist(v) <= d <= dist(v) + w(v) }` under the given effective
/// weights, closed on both ends up to [`EPS_DIST`]. Unreachable nodes are
/// never included.
fn level_cut_nodes(g: &DirectedGraph, eff: &[f64], s: usize, d: f64) -> Vec<usize> {
    let dist = vertex_dijkstra(g, eff, s, None, None).dist;
    (0..g.node_count())
        .filter(|&v| match dist[v] {
            Distance::Finite(x) => x <= d + EPS_DIST && d <= x + eff[v] + EPS_DIST,
            Distance::Infinite => false,
        })
        .collect()
}

/// Random level cut around `s` at radius `d`: the nodes whose interval
/// `[vdist(s, v), vdist(s, v) + w(v)]` contains `d`, with nodes of `frozen`
/// weighted 1.
pub fn random_level_cut(
    g: &DirectedGraph,
    w: &[f64],
    frozen: &[bool],
    s: usize,
    d: f64,
) -> Vec<usize> {
    let eff: Vec<f64> = (0..g.node_count())
        .map(|v| if frozen[v] { 1.0 } else { w[v] })
        .collect();
    level_cut_nodes(g, &eff, s, d)
}

/// Length of `[0, 1] ∩ [a, b]`, zero when reversed.
fn clipped(a: Distance, b: Distance) -> f64 {
    let lo = match a {
        Distance::Finite(x) => x.max(0.0),
        Distance::Infinite => return 0.0,
    };
    let hi = match b {
        Distance::Finite(x) => x.min(1.0),
        Distance::Infinite => 1.0,
    };
    (hi - lo).max(0.0)
}

/// `val` for a single pair whose effective weights are `eff`.
pub fn val_single(g: &DirectedGraph, eff: &[f64], s: usize, u: usize, v: usize) -> f64 {
    let dist = vertex_dijkstra(g, eff, s, None, None).dist;
    clipped(dist[u], dist[v])
}

/// `Σ_{(s,t)} |[0, 1] ∩ [vdist_{s,t}(s, u), vdist_{s,t}(s, v)]|` over the
/// remaining pairs of `family`.
pub fn val(
    family: &crate::fraccut::FractionalCutFamily,
    remaining_pairs: &[(usize, usize)],
    g: &DirectedGraph,
    u: usize,
    v: usize,
) -> f64 {
    remaining_pairs
        .iter()
        .map(|&pair| val_single(g, &family.effective_weights(pair), pair.0, u, v))
        .sum()
}

fn best_of<F>(g: &DirectedGraph, cfg: &AlgoConfig, mut run: F) -> Result<CutResult>
where
    F: FnMut(u64) -> Result<(CutSet, RunTrace)>,
{
    cfg.validate(g.node_count())?;
    let trials = cfg.trial_count(g.node_count());
    let mut best: Option<(usize, CutSet, RunTrace)> = None;
    for i in 0..trials {
        let (cut, trace) = run(trial_seed(cfg.seed, i))?;
        if best.as_ref().is_none_or(|(_, b, _)| cut.len() < b.len()) {
            best = Some((i, cut, trace));
        }
    }
    let (best_trial, cut, trace) = best.expect("at least one trial");
    Ok(CutResult {
        cut,
        epochs: trace.epochs.len(),
        rounds: trace.rounds.len(),
        trace: cfg.collect_trace.then_some(trace),
        trials_run: trials,
        best_trial,
    })
}

/// Epoch algorithm over all pairs at vertex distance at least `cfg.l`,
/// best of `cfg.trial_count(n)` trials.
pub fn vertex_cut_main(g: &DirectedGraph, cfg: &AlgoConfig) -> Result<CutResult> {
    best_of(g, cfg, |seed| VertexCutRun::new(g, cfg, seed)?.finish())
}

/// Baseline: random remaining pair, radius `d` uniform on `[0, L)`, cut every
/// `v` with `d` in `[dist(v), dist(v) + 1]`, where `dist` is the unweighted
/// vertex distance from `s` in `G - (X - {s, t})`.
pub fn gupta_baseline(g: &DirectedGraph, cfg: &AlgoConfig) -> Result<CutResult> {
    best_of(g, cfg, |seed| gupta_trial(g, cfg.l, seed))
}

fn gupta_trial(g: &DirectedGraph, l: f64, seed: u64) -> Result<(CutSet, RunTrace)> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = threshold_pairs(g, l);
    let mut frozen = vec![false; n];
    let mut trace = RunTrace {
        seed,
        trigger_factor: 0.0,
        rounds: Vec::new(),
        epochs: vec![EpochRecord {
            epoch: 1,
            mass_at_start: 0.0,
            pairs_at_start: pairs.len(),
            rounds: 0,
            cap: 0.0,
            mass_replaced: None,
        }],
    };
    let mut round = 0;
    while !pairs.is_empty() {
        let idx = rng.random_range(0..pairs.len());
        let (s, t) = pairs.swap_remove(idx);
        let d = l * rng.random::<f64>();
        let mut removed = frozen.clone();
        removed[s] = false;
        removed[t] = false;
        let dist = vdist_unweighted_removed(g, &removed, s);
        let mut added = Vec::new();
        for v in 0..n {
            if let Some(x) = dist[v] {
                let x = x as f64;
                if x <= d + EPS_DIST && d <= x + 1.0 + EPS_DIST && !frozen[v] {
                    added.push(v);
                }
            }
        }
        for &v in &added {
            frozen[v] = true;
        }
        round += 1;
        trace.epochs[0].rounds += 1;
        trace.rounds.push(RoundRecord {
            round,
            epoch: 1,
            pair: (s, t),
            d,
            added,
        });
    }
    let nodes = (0..n).filter(|&v| frozen[v]).collect();
    Ok((CutSet::unit_nodes(nodes), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_cut, reachable_avoiding, Instance};
    use crate::instances::gen_path;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn level_cut_examples() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let w = [0.0, 0.4, 0.4, 0.0];
        let frozen = [false; 4];
        assert_eq!(random_level_cut(&g, &w, &frozen, 0, 0.5), vec![2]);
        // d = 0: s itself and every node at distance 0.
        assert_eq!(random_level_cut(&g, &w, &frozen, 0, 0.0), vec![0, 1]);
    }

    #[test]
    fn val_examples() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let eff = [0.0, 0.2, 0.5, 0.0];
        assert_eq!(val_single(&g, &eff, 0, 2, 2), 0.0);
        assert!((val_single(&g, &eff, 0, 2, 3) - 0.5).abs() < 1e-12);
        let eff = [0.0, 0.9, 0.5, 0.0];
        assert!((val_single(&g, &eff, 0, 2, 3) - 0.1).abs() < 1e-12);
        // Unreachable end point: the interval runs to 1.
        assert!((val_single(&g, &eff, 2, 3, 1) - 1.0).abs() < 1e-12);
        assert!((val_single(&g, &eff, 0, 1, 0) - 0.0).abs() < 1e-12);
    }

    #[test]
    fn no_pairs_means_empty_cut() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let cfg = AlgoConfig::new(2.0, 1);
        let r = vertex_cut_main(&g, &cfg).unwrap();
        assert!(r.cut.is_empty());
        assert_eq!(r.rounds, 0);
        let r = gupta_baseline(&g, &cfg).unwrap();
        assert!(r.cut.is_empty());
    }

    #[test]
    fn path_of_ten() {
        let inst = gen_path(10, 3.0).unwrap();
        assert_eq!(inst.demand_pairs().len(), 21);
        for seed in 0..20 {
            let cfg = AlgoConfig::new(3.0, seed);
            for r in [
                vertex_cut_main(&inst.graph, &cfg).unwrap(),
                gupta_baseline(&inst.graph, &cfg).unwrap(),
            ] {
                assert!(!r.cut.is_empty());
                assert!(check_cut(&inst, &r.cut).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn gupta_added_nodes_within_radius() {
        let inst = gen_path(10, 3.0).unwrap();
        let mut cfg = AlgoConfig::new(3.0, 5);
        cfg.collect_trace = true;
        cfg.trials = Some(1);
        let r = gupta_baseline(&inst.graph, &cfg).unwrap();
        let mut frozen = [false; 10];
        for rec in &r.trace.unwrap().rounds {
            let (s, t) = rec.pair;
            let mut removed = frozen;
            removed[s] = false;
            removed[t] = false;
            let dist = vdist_unweighted_removed(&inst.graph, &removed, s);
            for &v in &rec.added {
                let x = dist[v].unwrap() as f64;
                assert!(x <= rec.d + 1e-9 && rec.d <= x + 1.0 + 1e-9);
            }
            for &v in &rec.added {
                frozen[v] = true;
            }
        }
    }

    #[test]
    fn deterministic_runs() {
        let inst = gen_path(12, 3.0).unwrap();
        let mut cfg = AlgoConfig::new(3.0, 77);
        cfg.collect_trace = true;
        let a = vertex_cut_main(&inst.graph, &cfg).unwrap();
        let b = vertex_cut_main(&inst.graph, &cfg).unwrap();
        assert_eq!(a, b);
        let a = gupta_baseline(&inst.graph, &cfg).unwrap();
        let b = gupta_baseline(&inst.graph, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn step_level_cut_separates() {
        let inst = gen_path(12, 2.0).unwrap();
        let cfg = AlgoConfig::new(2.0, 3);
        let mut run = VertexCutRun::new(&inst.graph, &cfg, 9).unwrap();
        while let Some(ev) = run.step().unwrap() {
            let s = ev.record.pair.0;
            let dist = vertex_dijkstra(&inst.graph, &ev.weights, s, None, None).dist;
            for u in 0..12 {
                for v in 0..12 {
                    let (Distance::Finite(du), dv) = (dist[u], dist[v]) else {
                        continue;
                    };
                    let below = match dv {
                        Distance::Finite(x) => ev.record.d < x,
                        Distance::Infinite => true,
                    };
                    if du <= ev.record.d && below {
                        assert!(
                            run.frozen()[u] || !reachable_avoiding(&inst.graph, run.frozen(), u, v)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_l_rejected() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(vertex_cut_main(&g, &AlgoConfig::new(0.5, 0)).is_err());
        assert!(vertex_cut_main(&g, &AlgoConfig::new(4.0, 0)).is_err());
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn reuse_basis_stays_valid() {
        let inst: Instance = gen_path(14, 3.0).unwrap();
        let mut cfg = AlgoConfig::new(3.0, 4);
        cfg.solver = CappedSolver::PathLp;
        cfg.reuse_lp_basis = true;
        let r = vertex_cut_main(&inst.graph, &cfg).unwrap();
        assert!(check_cut(&inst, &r.cut).unwrap().is_empty());
        cfg.reuse_lp_basis = false;
        let r = vertex_cut_main(&inst.graph, &cfg).unwrap();
        assert!(check_cut(&inst, &r.cut).unwrap().is_empty());
    }
}
