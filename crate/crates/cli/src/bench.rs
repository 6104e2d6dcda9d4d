//! Benchmark sweeps. One job per `(n, seed)` generates the instance, solves
//! the LP once, runs both algorithms (and the exact oracle on tiny
//! instances), and checks every main-algorithm run round by round.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use multicut_core::cutter::{trial_seed, VertexCutRun};
use multicut_core::instances::{generate, Family, GeneratorSpec};
use multicut_core::oracle::exact_integral_multicut;
use multicut_core::{
    check_cut, fractional_multicut, gupta_baseline, AlgoConfig, CutSet, Demands, Instance, LpConfig,
};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Threshold as a function of `n`: `n^(p/q)`, `n^x`, `n`, or a constant.
/// Evaluated values are rounded up and clamped to `[1, n]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LRule {
    Power(f64),
    Constant(f64),
}

impl LRule {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("cannot parse L rule {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "n" {
            return Ok(LRule::Power(1.0));
        }
        if let Some(exp) = t.strip_prefix("n^") {
            let exp = exp
                .strip_prefix('(')
                .and_then(|e| e.strip_suffix(')'))
                .unwrap_or(exp);
            let x = match exp.split_once('/') {
                Some((p, q)) => {
                    let p: f64 = p.parse().map_err(|_| bad())?;
                    let q: f64 = q.parse().map_err(|_| bad())?;
                    if q == 0.0 {
                        return Err(bad());
                    }
                    p / q
                }
                None => exp.parse().map_err(|_| bad())?,
            };
            if !x.is_finite() {
                return Err(bad());
            }
            return Ok(LRule::Power(x));
        }
        let c: f64 = t.parse().map_err(|_| bad())?;
        if !(c.is_finite() && c > 0.0) {
            return Err(bad());
        }
        Ok(LRule::Constant(c))
    }

    pub fn eval(self, n: usize) -> f64 {
        let raw = match self {
            LRule::Power(x) => (n as f64).powf(x),
            LRule::Constant(c) => c,
        };
        // Guard against n^(2/3) landing a hair above an integer.
        let l = (raw - 1e-9).ceil();
        l.clamp(1.0, n.max(1) as f64)
    }
}

pub fn parse_family(s: &str) -> Result<Family> {
    Ok(match s {
        "layered" => Family::Layered,
        "random-dag" | "dag" => Family::RandomDag,
        "path" => Family::Path,
        "grid" => Family::Grid,
        "figure1" | "fig1" => Family::Figure1,
        _ => return Err(CliError::Usage(format!("unknown family {s:?}"))),
    })
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Layered => "layered",
        Family::RandomDag => "random-dag",
        Family::Path => "path",
        Family::Grid => "grid",
        Family::Figure1 => "figure1",
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub l_rule: LRule,
    /// Seeds `0..seeds`.
    pub seeds: u64,
    pub trials: usize,
    pub workers: usize,
    pub arc_prob: f64,
    /// Run the exact oracle when the instance has at most this many
    /// cuttable elements.
    pub oracle_budget: usize,
}

impl BenchSpec {
    pub fn new(family: Family, sizes: Vec<usize>, l_rule: LRule, seeds: u64) -> Self {
        Self {
            family,
            sizes,
            l_rule,
            seeds,
            trials: 1,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            arc_prob: 0.5,
            oracle_budget: 16,
        }
    }
}

/// One CSV line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub seed: u64,
    pub algo: String,
    pub cut_cost: f64,
    pub frac_value: f64,
    pub epochs: usize,
    pub rounds: usize,
    pub millis: f64,
}

/// A row plus the checks made while producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub row: BenchRow,
    pub valid: bool,
    /// Per-round epoch checks; always true for non-main rows.
    pub epoch_checks: bool,
    /// First failed check, if any.
    pub failure: Option<String>,
}

impl BenchRecord {
    pub fn ok(&self) -> bool {
        self.valid && self.epoch_checks
    }
}

/// `ceil(3 log2(n^3) / log2(max(2, log2 n))) + 1`.
pub fn epoch_bound(n: usize) -> usize {
    let n = n as f64;
    let num = 3.0 * (n * n * n).log2();
    let den = n.log2().max(2.0).log2();
    (num / den).ceil() as usize + 1
}

/// One trial of the main algorithm, checked after every round: stored
/// weights of remaining pairs stay within `4^epoch / L` on free nodes, and
/// every epoch change follows a mass drop by more than the trigger factor.
/// The epoch count is checked against [`epoch_bound`] when `n >= 16`.
pub fn checked_main_trial(
    inst: &Instance,
    cfg: &AlgoConfig,
    seed: u64,
) -> Result<(CutSet, usize, usize, Option<String>)> {
    let g = &inst.graph;
    let n = g.node_count();
    let factor = cfg.trigger_factor(n);
    let mut run = VertexCutRun::new(g, cfg, seed)?;
    let mut failure = None;
    let initial = 4.0 / cfg.l + 1e-9;
    for pair in run.remaining_pairs() {
        if let Some(w) = run.pair_weights(pair) {
            if w.iter().any(|&x| x > initial) {
                failure.get_or_insert_with(|| format!("initial weight above 4/L for {pair:?}"));
            }
        }
    }
    while let Some(ev) = run.step()? {
        if failure.is_some() {
            continue;
        }
        let bound = 4f64.powi(run.epoch() as i32) / cfg.l + 1e-9;
        let frozen = run.frozen().to_vec();
        'pairs: for pair in run.remaining_pairs() {
            if let Some(w) = run.pair_weights(pair) {
                for v in (0..n).filter(|&v| !frozen[v]) {
                    if w[v] > bound {
                        failure = Some(format!(
                            "round {}: weight {} of node {v} above {bound}",
                            ev.record.round, w[v]
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        if let Some((old, new)) = ev.transition {
            if !(old > factor * new) {
                failure.get_or_insert_with(|| {
                    format!(
                        "round {}: epoch change without mass drop ({old} vs {factor} * {new})",
                        ev.record.round
                    )
                });
            }
        }
    }
    let epochs = run.trace().epochs.len();
    let rounds = run.trace().rounds.len();
    if n >= 16 && epochs > epoch_bound(n) {
        failure.get_or_insert_with(|| format!("{epochs} epochs exceed {}", epoch_bound(n)));
    }
    let (cut, _) = run.finish()?;
    Ok((cut, epochs, rounds, failure))
}

fn run_job(spec: &BenchSpec, n: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let l = spec.l_rule.eval(n);
    let mut gen = GeneratorSpec::new(spec.family, n, l, seed);
    gen.arc_prob = spec.arc_prob;
    let inst = generate(&gen)?;
    let n_actual = inst.node_count();
    let l = match inst.demands {
        Demands::Threshold(t) => t.min(n_actual.max(1) as f64),
        Demands::Pairs(_) => l,
    };
    let family = family_name(spec.family).to_string();
    let row = |algo: &str, cost: f64, frac: f64, epochs, rounds, millis| BenchRow {
        family: family.clone(),
        n,
        l,
        seed,
        algo: algo.to_string(),
        cut_cost: cost,
        frac_value: frac,
        epochs,
        rounds,
        millis,
    };

    let frac = fractional_multicut(&inst, &LpConfig::default())?.value;
    let mut cfg = AlgoConfig::new(l, seed);
    cfg.trials = Some(spec.trials);
    let mut out = Vec::new();

    // Main: the same trials `vertex_cut_main` would run, each checked.
    let start = Instant::now();
    let mut best: Option<(CutSet, usize, usize)> = None;
    let mut failure = None;
    for i in 0..spec.trials {
        let (cut, epochs, rounds, fail) = checked_main_trial(&inst, &cfg, trial_seed(seed, i))?;
        if failure.is_none() {
            failure = fail;
        }
        if best.as_ref().is_none_or(|b| cut.cost < b.0.cost) {
            best = Some((cut, epochs, rounds));
        }
    }
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let (cut, epochs, rounds) = best.expect("at least one trial");
    let valid = check_cut(&inst, &cut)?.is_empty();
    out.push(BenchRecord {
        row: row("main", cut.cost, frac, epochs, rounds, millis),
        valid,
        epoch_checks: failure.is_none(),
        failure,
    });

    let start = Instant::now();
    let res = gupta_baseline(&inst.graph, &cfg)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    out.push(BenchRecord {
        row: row("gupta", res.cut.cost, frac, res.epochs, res.rounds, millis),
        valid: check_cut(&inst, &res.cut)?.is_empty(),
        epoch_checks: true,
        failure: None,
    });

    if inst.cuttable_elements().len() <= spec.oracle_budget {
        let start = Instant::now();
        let cut = exact_integral_multicut(&inst, spec.oracle_budget)?;
        let millis = start.elapsed().as_secs_f64() * 1e3;
        out.push(BenchRecord {
            row: row("exact", cut.cost, frac, 0, 0, millis),
            valid: check_cut(&inst, &cut)?.is_empty(),
            epoch_checks: true,
            failure: None,
        });
    }
    Ok(out)
}

fn algo_rank(a: &str) -> usize {
    match a {
        "main" => 0,
        "gupta" => 1,
        _ => 2,
    }
}

/// Runs the sweep on `spec.workers` threads. Records come back sorted by
/// `(n, seed, algo)` whatever the scheduling.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>> {
    if spec.trials == 0 {
        return Err(CliError::Usage("trials must be positive".into()));
    }
    let jobs: Vec<(usize, u64)> = spec
        .sizes
        .iter()
        .flat_map(|&n| (0..spec.seeds).map(move |s| (n, s)))
        .collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Result<Vec<BenchRecord>>>> = Mutex::new(Vec::new());
    let workers = spec.workers.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, seed)) = jobs.get(i) else { break };
                let r = run_job(spec, n, seed);
                results.lock().expect("bench worker panicked").push(r);
            });
        }
    });
    let mut records = Vec::new();
    for r in results.into_inner().expect("bench worker panicked") {
        records.extend(r?);
    }
    records.sort_by(|a, b| {
        (a.row.n, a.row.seed, algo_rank(&a.row.algo)).cmp(&(
            b.row.n,
            b.row.seed,
            algo_rank(&b.row.algo),
        ))
    });
    Ok(records)
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io {
        path: "csv".into(),
        message: e.to_string(),
    };
    for r in records {
        w.serialize(&r.row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io {
        path: "csv".into(),
        message: e.to_string(),
    })?;
    Ok(())
}

pub fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    })
}
