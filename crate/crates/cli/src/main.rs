use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use multicut_core::instances::{generate, GeneratorSpec};
use multicut_core::oracle::{
    empirical_gap_budget, exact_integral_multicut, DEFAULT_ELEMENT_BUDGET,
};
use multicut_core::reductions::apply;
use multicut_core::{fractional_multicut, Error, Instance, LpConfig, ReductionKind};

use multicut::bench::{self, median, parse_family, BenchSpec, LRule};
use multicut::error::{CliError, Result};
use multicut::format::{
    flavor_name, parse, parse_cut, parse_map, serialize, serialize_cut, serialize_map,
};
use multicut::pipeline::{solve, verify, Algo, SolveOptions};
use multicut::report::{instance_digest, ConfigEcho, RunReport, SolvedEcho, TraceEcho};

#[derive(Parser)]
#[command(
    name = "multicut",
    version,
    about = "Directed vertex and edge multicut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Main,
    Gupta,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceTo {
    /// Edge instance to vertex instance.
    Vertex,
    /// Vertex instance to edge instance.
    Edge,
    UnitCost,
    UniformWeight,
    Heavy,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and check the cut.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "main")]
        algo: AlgoArg,
        /// Distance threshold; defaults to the instance's own.
        #[arg(long = "L")]
        l: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent trials; defaults to ceil(log2 n).
        #[arg(long)]
        trials: Option<usize>,
        /// Include the per-round trace in the JSON report.
        #[arg(long)]
        trace: bool,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        cut_out: Option<PathBuf>,
    },
    /// Minimum-cost integral multicut by exhaustive search.
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget: usize,
        #[arg(long)]
        cut_out: Option<PathBuf>,
    },
    /// Integral optimum over fractional optimum.
    Gap {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget: usize,
    },
    /// Check that a cut separates every demand pair.
    Verify { file: PathBuf, cut: PathBuf },
    /// Apply one reduction, writing the new instance and its mapping.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: ReduceTo,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Map a cut of a reduced instance back to the original.
    Pullback {
        original: PathBuf,
        transformed: PathBuf,
        map: PathBuf,
        cut: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a benchmark instance.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long = "L", default_value_t = 1.0)]
        l: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        layers: usize,
        #[arg(long, default_value_t = 0)]
        width: usize,
        #[arg(long, default_value_t = 0.5)]
        arc_prob: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both algorithms over a size and seed sweep and write CSV.
    Bench {
        #[arg(long, default_value = "layered")]
        family: String,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// `n^(p/q)`, `n^x`, `n` or a constant.
        #[arg(long = "L-rule", default_value = "n^(2/3)")]
        l_rule: String,
        /// Seeds 0..k.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        arc_prob: f64,
        /// Also run the exact oracle on instances with at most this many
        /// cuttable elements.
        #[arg(long, default_value_t = 16)]
        oracle_budget: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load(path: &Path) -> Result<Instance> {
    parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn cmd_solve(
    file: &Path,
    opts: SolveOptions,
    json: Option<&Path>,
    cut_out: Option<&Path>,
) -> Result<()> {
    let inst = load(file)?;
    let start = Instant::now();
    let sol = solve(&inst, &opts)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = RunReport {
        instance_digest: instance_digest(&inst),
        command: "solve".into(),
        config: ConfigEcho {
            algo: opts.algo.name().into(),
            l: opts.l,
            seed: opts.seed,
            trials: opts.trials,
            trace: opts.trace,
        },
        flavor: flavor_name(inst.flavor).into(),
        cut: sol.cut.elements.iter().map(|e| e + 1).collect(),
        cut_cost: sol.cut.cost,
        fractional_value: Some(sol.fractional_value),
        epochs: sol.run.epochs,
        rounds: sol.run.rounds,
        trials: sol.run.trials_run,
        wall_ms,
        seed: opts.seed,
        valid: sol.violated.is_empty(),
        solved: SolvedEcho {
            nodes: sol.solved_nodes,
            l: sol.solved_l,
            reductions: sol
                .reductions
                .iter()
                .map(|m| m.kind.name().into())
                .collect(),
        },
        trace: sol.run.trace.as_ref().map(TraceEcho::from),
    };
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        write(path, &text)?;
    }
    if let Some(path) = cut_out {
        write(path, &serialize_cut(&inst, &sol.cut))?;
    }
    if json != Some(Path::new("-")) {
        println!(
            "{} cut of cost {} ({} elements), fractional {:.6}, {} epochs, {} rounds",
            opts.algo.name(),
            sol.cut.cost,
            sol.cut.len(),
            sol.fractional_value,
            sol.run.epochs,
            sol.run.rounds
        );
    }
    sol.check()
}

fn cmd_exact(file: &Path, budget: usize, cut_out: Option<&Path>) -> Result<()> {
    let inst = load(file)?;
    let cut = exact_integral_multicut(&inst, budget)?;
    let text = serialize_cut(&inst, &cut);
    match cut_out {
        Some(path) => {
            write(path, &text)?;
            println!("optimum {}", cut.cost);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_gap(file: &Path, budget: usize) -> std::result::Result<(), (i32, String)> {
    let inst = load(file).map_err(|e| (e.exit_code(), e.to_string()))?;
    match empirical_gap_budget(&inst, budget) {
        Ok(r) => {
            println!(
                "gap {:.6} integral {} fractional {:.6}",
                r.gap, r.integral_opt, r.fractional_opt
            );
            Ok(())
        }
        Err(e @ Error::BudgetExceeded { .. }) => Err((3, e.to_string())),
        Err(e) => Err((1, e.to_string())),
    }
}

fn cmd_verify(file: &Path, cut: &Path) -> Result<()> {
    let inst = load(file)?;
    let cut = parse_cut(&read(cut)?, &inst).map_err(|source| CliError::Parse {
        path: cut.display().to_string(),
        source,
    })?;
    verify(&inst, &cut)?;
    println!("valid cut of cost {}", cut.cost);
    Ok(())
}

fn cmd_reduce(file: &Path, to: ReduceTo, out: &Path, map_out: Option<&Path>) -> Result<()> {
    let mut inst = load(file)?;
    let kind = match to {
        ReduceTo::Vertex => ReductionKind::EdgeToVertex,
        ReduceTo::Edge => ReductionKind::VertexToEdge,
        ReduceTo::UnitCost => ReductionKind::ToUnitCosts,
        ReduceTo::UniformWeight => ReductionKind::ToUniformWeights,
        ReduceTo::Heavy => ReductionKind::HeavyNode,
    };
    // Every reduction but vertex-to-edge reads fractional weights; files
    // without them get the LP optimum.
    if kind != ReductionKind::VertexToEdge && inst.weights.is_none() {
        inst.weights = Some(fractional_multicut(&inst, &LpConfig::default())?.weights.0);
    }
    let mapping = apply(kind, &inst)?;
    write(out, &serialize(&mapping.transformed))?;
    if let Some(path) = map_out {
        write(path, &serialize_map(&mapping))?;
    }
    Ok(())
}

fn cmd_pullback(
    original: &Path,
    transformed: &Path,
    map: &Path,
    cut: &Path,
    out: Option<&Path>,
) -> Result<()> {
    let orig = load(original)?;
    let trans = load(transformed)?;
    let parse_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| CliError::Parse { path, source }
    };
    let cut = parse_cut(&read(cut)?, &trans).map_err(parse_err(cut))?;
    let mapping = parse_map(&read(map)?, trans, orig.element_count()).map_err(parse_err(map))?;
    let back = mapping.pull_back(&orig, &cut)?;
    write(out.unwrap_or(Path::new("-")), &serialize_cut(&orig, &back))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    family: &str,
    n: usize,
    l: f64,
    seed: u64,
    layers: usize,
    width: usize,
    arc_prob: f64,
    out: Option<&Path>,
) -> Result<()> {
    let mut spec = GeneratorSpec::new(parse_family(family)?, n, l, seed);
    spec.layers = layers;
    spec.width = width;
    spec.arc_prob = arc_prob;
    let inst = generate(&spec)?;
    write(out.unwrap_or(Path::new("-")), &serialize(&inst))
}

fn cmd_bench(spec: BenchSpec, csv: Option<&Path>) -> Result<()> {
    let records = bench::run_bench(&spec)?;
    match csv {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            bench::write_csv(file, &records)?;
        }
        None => bench::write_csv(std::io::stdout().lock(), &records)?,
    }
    let mut err = std::io::stderr().lock();
    for algo in ["main", "gupta"] {
        let costs = records
            .iter()
            .filter(|r| r.row.algo == algo)
            .map(|r| r.row.cut_cost)
            .collect();
        if let Some(m) = median(costs) {
            let _ = writeln!(err, "median {algo} cut cost {m}");
        }
    }
    let fracs = records
        .iter()
        .filter(|r| r.row.algo == "main")
        .map(|r| r.row.frac_value)
        .collect();
    if let Some(m) = median(fracs) {
        let _ = writeln!(err, "median LP value {m:.4}");
    }
    let bad: Vec<_> = records.iter().filter(|r| !r.ok()).collect();
    for r in &bad {
        let _ = writeln!(
            err,
            "failed check: n={} seed={} algo={} valid={} {}",
            r.row.n,
            r.row.seed,
            r.row.algo,
            r.valid,
            r.failure.as_deref().unwrap_or("")
        );
    }
    if !bad.is_empty() {
        return Err(CliError::BenchChecks {
            invalid: bad.iter().filter(|r| !r.valid).count(),
            failed: bad.len(),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> std::result::Result<(), (i32, String)> {
    let fail = |e: CliError| (e.exit_code(), e.to_string());
    match cli.command {
        Command::Solve {
            file,
            algo,
            l,
            seed,
            trials,
            trace,
            json,
            cut_out,
        } => {
            let opts = SolveOptions {
                algo: match algo {
                    AlgoArg::Main => Algo::Main,
                    AlgoArg::Gupta => Algo::Gupta,
                },
                l,
                seed,
                trials,
                trace,
            };
            cmd_solve(&file, opts, json.as_deref(), cut_out.as_deref()).map_err(fail)
        }
        Command::Exact {
            file,
            budget,
            cut_out,
        } => cmd_exact(&file, budget, cut_out.as_deref()).map_err(fail),
        Command::Gap { file, budget } => cmd_gap(&file, budget),
        Command::Verify { file, cut } => cmd_verify(&file, &cut).map_err(fail),
        Command::Reduce {
            file,
            to,
            out,
            map_out,
        } => cmd_reduce(&file, to, &out, map_out.as_deref()).map_err(fail),
        Command::Pullback {
            original,
            transformed,
            map,
            cut,
            out,
        } => cmd_pullback(&original, &transformed, &map, &cut, out.as_deref()).map_err(fail),
        Command::Gen {
            family,
            n,
            l,
            seed,
            layers,
            width,
            arc_prob,
            out,
        } => cmd_gen(&family, n, l, seed, layers, width, arc_prob, out.as_deref()).map_err(fail),
        Command::Bench {
            family,
            sizes,
            l_rule,
            seeds,
            trials,
            workers,
            arc_prob,
            oracle_budget,
            csv,
        } => {
            let family = parse_family(&family).map_err(fail)?;
            let rule = LRule::parse(&l_rule).map_err(fail)?;
            let mut spec = BenchSpec::new(family, sizes, rule, seeds);
            spec.trials = trials;
            spec.arc_prob = arc_prob;
            spec.oracle_budget = oracle_budget;
            if let Some(w) = workers {
                spec.workers = w;
            }
            cmd_bench(spec, csv.as_deref()).map_err(fail)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
