//! The `solve` path: any instance is brought to a unit-cost, uniform-weight
//! threshold instance, solved there, and the cut pulled back.

use multicut_core::graph::{edge_dist_weighted, vdist_unweighted, vdist_weighted};
use multicut_core::reductions::{edge_to_vertex, to_uniform_weights, to_unit_costs};
use multicut_core::{
    check_cut, fractional_multicut, gupta_baseline, vertex_cut_main, AlgoConfig, CutResult, CutSet,
    Demands, Flavor, Instance, LpConfig, ReductionMapping,
};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Main,
    Gupta,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Main => "main",
            Algo::Gupta => "gupta",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algo: Algo,
    pub l: Option<f64>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub trace: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// Cut on the input instance.
    pub cut: CutSet,
    /// Run on the threshold instance.
    pub run: CutResult,
    pub solved_nodes: usize,
    pub solved_l: f64,
    pub reductions: Vec<ReductionMapping>,
    /// Fractional LP value of the input instance.
    pub fractional_value: f64,
    /// Demand pairs the cut leaves connected; empty unless there is a bug.
    pub violated: Vec<(usize, usize)>,
}

impl Solution {
    pub fn check(&self) -> Result<()> {
        match self.violated.first() {
            None => Ok(()),
            Some(&(s, t)) => Err(CliError::InvalidCut {
                violated: self.violated.len(),
                first: (s + 1, t + 1),
            }),
        }
    }
}

fn run_algo(inst: &Instance, l: f64, opts: &SolveOptions) -> Result<CutResult> {
    let mut cfg = AlgoConfig::new(l, opts.seed);
    cfg.trials = opts.trials;
    cfg.collect_trace = opts.trace;
    let res = match opts.algo {
        Algo::Main => vertex_cut_main(&inst.graph, &cfg)?,
        Algo::Gupta => gupta_baseline(&inst.graph, &cfg)?,
    };
    Ok(res)
}

fn weights_cut_demands(inst: &Instance) -> bool {
    let Some(w) = inst.weights.as_ref() else {
        return false;
    };
    inst.demand_pairs().iter().all(|&(s, t)| {
        let d = match inst.flavor {
            Flavor::Vertex => vdist_weighted(&inst.graph, w, s),
            Flavor::Edge => edge_dist_weighted(&inst.graph, w, s),
        };
        !d[t].is_finite() || d[t].at_least(1.0)
    })
}

/// Smallest unweighted vertex distance over reachable demand pairs.
fn min_demand_distance(inst: &Instance) -> Option<usize> {
    let mut best: Option<usize> = None;
    let pairs = inst.demand_pairs();
    let mut sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    sources.dedup();
    for s in sources {
        let dist = vdist_unweighted(&inst.graph, s);
        for &(a, b) in &pairs {
            if a == s {
                if let Some(d) = dist[b] {
                    best = Some(best.map_or(d, |x| x.min(d)));
                }
            }
        }
    }
    best
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let lp = fractional_multicut(inst, &LpConfig::default())?;
    if let Demands::Threshold(file_l) = inst.demands {
        let l = opts.l.unwrap_or(file_l);
        if l > file_l {
            return Err(CliError::Usage(format!(
                "--L {l} exceeds the instance threshold {file_l}; the cut would miss demands"
            )));
        }
        let n = inst.node_count();
        if n == 0 || inst.demand_pairs().is_empty() {
            return finish(inst, empty_solution(inst, l, lp.value));
        }
        let run = run_algo(inst, l.min(n as f64), opts)?;
        let cut = CutSet::new(inst, run.cut.elements.iter().copied())?;
        return finish(
            inst,
            Solution {
                cut,
                run,
                solved_nodes: n,
                solved_l: l,
                reductions: Vec::new(),
                fractional_value: lp.value,
                violated: Vec::new(),
            },
        );
    }

    // The reductions only keep demands the weights cut, so weights from the
    // file that leave a demand short of distance 1 are replaced by the LP's.
    let mut weighted = inst.clone();
    if !weights_cut_demands(&weighted) {
        weighted.weights = Some(lp.weights.0.clone());
    }
    let mut chain = Vec::new();
    let mut current = weighted.clone();
    if current.flavor == Flavor::Edge {
        let m = edge_to_vertex(&current)?;
        current = m.transformed.clone();
        chain.push(m);
    }
    let m = to_unit_costs(&current)?;
    current = m.transformed.clone();
    chain.push(m);
    let m = to_uniform_weights(&current)?;
    current = m.transformed.clone();
    chain.push(m);

    let Some(shortest) = min_demand_distance(&current) else {
        let mut s = empty_solution(inst, opts.l.unwrap_or(1.0), lp.value);
        s.reductions = chain;
        return finish(inst, s);
    };
    let auto_l = (shortest as f64).max(1.0);
    let l = opts.l.unwrap_or(auto_l);
    if l > auto_l {
        return Err(CliError::Usage(format!(
            "--L {l} exceeds {auto_l}, the shortest demand distance after reduction"
        )));
    }
    let threshold = Instance::new(
        current.graph.clone(),
        Flavor::Vertex,
        current.costs.clone(),
        None,
        Demands::Threshold(l),
    )?;
    let run = run_algo(&threshold, l, opts)?;
    let mut cut = CutSet::new(&threshold, run.cut.elements.iter().copied())?;
    // Pull back stage by stage: each mapping's original is the previous
    // stage's transformed instance.
    for i in (0..chain.len()).rev() {
        let original = if i == 0 {
            &weighted
        } else {
            &chain[i - 1].transformed
        };
        cut = chain[i].pull_back(original, &cut)?;
    }
    let cut = CutSet::new(inst, cut.elements)?;
    finish(
        inst,
        Solution {
            cut,
            run,
            solved_nodes: current.node_count(),
            solved_l: l,
            reductions: chain,
            fractional_value: lp.value,
            violated: Vec::new(),
        },
    )
}

fn empty_solution(inst: &Instance, l: f64, fractional_value: f64) -> Solution {
    Solution {
        cut: CutSet::new(inst, []).expect("empty cut"),
        run: CutResult {
            cut: CutSet::new(inst, []).expect("empty cut"),
            trace: None,
            trials_run: 0,
            best_trial: 0,
            epochs: 0,
            rounds: 0,
        },
        solved_nodes: inst.node_count(),
        solved_l: l,
        reductions: Vec::new(),
        fractional_value,
        violated: Vec::new(),
    }
}

fn finish(inst: &Instance, mut s: Solution) -> Result<Solution> {
    s.violated = check_cut(inst, &s.cut)?;
    Ok(s)
}

/// Errors with [`CliError::InvalidCut`] unless `cut` separates every demand.
pub fn verify(inst: &Instance, cut: &CutSet) -> Result<()> {
    let violated = check_cut(inst, cut)?;
    match violated.first() {
        None => Ok(()),
        Some(&(s, t)) => Err(CliError::InvalidCut {
            violated: violated.len(),
            first: (s + 1, t + 1),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;

    fn opts(algo: Algo) -> SolveOptions {
        SolveOptions {
            algo,
            l: None,
            seed: 3,
            trials: Some(1),
            trace: false,
        }
    }

    #[test]
    fn weights_that_miss_a_demand_are_replaced() {
        // Arc 3 -> 1 has weight 0 but (3, 1) is a demand.
        let inst = parse(
            "p dmc edge 3 3\na 1 3 1.04 0\na 2 1 0.93 1.68\na 3 1 1.33 0\nd 1 2\nd 2 3\nd 3 1\n",
        )
        .unwrap();
        assert!(!weights_cut_demands(&inst));
        for algo in [Algo::Main, Algo::Gupta] {
            let sol = solve(&inst, &opts(algo)).unwrap();
            assert!(sol.violated.is_empty());
        }
    }

    #[test]
    fn threshold_l_override_is_bounded() {
        let inst = parse("p dmc vertex 4 3\na 1 2\na 2 3\na 3 4\nt 2\n").unwrap();
        let mut o = opts(Algo::Main);
        o.l = Some(1.0);
        assert!(solve(&inst, &o).unwrap().violated.is_empty());
        o.l = Some(3.0);
        assert!(matches!(solve(&inst, &o), Err(CliError::Usage(_))));
    }
}
