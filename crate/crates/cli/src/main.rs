//! `hfvrp` — benchmark harness for the heterogeneous-fleet routing solver.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use minereduce::solver;
use minereduce::{Algorithm, SolverParams};
use minereduce_cli::{algorithm_name, experiment, instance_format, stats, ttt};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Msils,
    Mdm,
    Minereduce,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Algorithm {
        match a {
            AlgorithmArg::Msils => Algorithm::MsIls,
            AlgorithmArg::Mdm => Algorithm::MdmMsIls,
            AlgorithmArg::Minereduce => Algorithm::MineReduce,
        }
    }
}

#[derive(Parser)]
#[command(name = "hfvrp", about = "Heterogeneous-fleet vehicle routing benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm on an instance over several seeds.
    Run(RunArgs),
    /// Compare two raw result CSVs (baseline vs candidate).
    Compare(CompareArgs),
    /// Convert a plain coordinate-list file into the canonical format.
    Convert(ConvertArgs),
}

#[derive(Parser)]
struct RunArgs {
    /// Instance file in the canonical format.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "minereduce")]
    algorithm: AlgorithmArg,
    /// Number of seeded runs (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Outer multi-start iterations.
    #[arg(long)]
    max_iter: Option<usize>,
    /// ILS stop-rule coefficient.
    #[arg(long)]
    beta: Option<u32>,
    /// Elite set capacity.
    #[arg(long)]
    elite_size: Option<usize>,
    /// Patterns kept per mining.
    #[arg(long)]
    max_patterns: Option<usize>,
    /// Minimum support in (0, 1].
    #[arg(long)]
    min_sup: Option<f64>,
    /// Stability threshold in iterations.
    #[arg(long)]
    delta: Option<usize>,
    /// Switch to time-to-target mode: every run stops at this cost.
    #[arg(long)]
    target: Option<f64>,
    /// Write the per-iteration TSV log of the first seed here.
    #[arg(long)]
    log_iters: Option<PathBuf>,
    /// Write raw per-run CSV (or the TTT table) here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
struct CompareArgs {
    /// Raw CSV of the baseline algorithm.
    #[arg(long)]
    baseline: PathBuf,
    /// Raw CSV of the candidate algorithm.
    #[arg(long)]
    candidate: PathBuf,
    /// Significance level for the paired t-test.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

#[derive(Parser)]
struct ConvertArgs {
    /// Plain file: `n m`, then m vehicle lines, then n+1 `x y demand` lines.
    #[arg(long)]
    input: PathBuf,
    /// Instance name recorded in the output; defaults to the file stem.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    env_logger::init();
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Compare(args) => compare(args),
        Command::Convert(args) => convert(args),
    }
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn build_params(args: &RunArgs) -> SolverParams {
    let mut p = SolverParams::for_algorithm(args.algorithm.into());
    p.seed = args.seed;
    if let Some(v) = args.max_iter {
        p.max_iter = v;
    }
    if let Some(v) = args.beta {
        p.beta = v;
    }
    if let Some(v) = args.elite_size {
        p.elite_size = v;
    }
    if let Some(v) = args.max_patterns {
        p.max_patterns = v;
    }
    if let Some(v) = args.min_sup {
        p.min_sup = v;
    }
    if let Some(v) = args.delta {
        p.delta = v;
    }
    p
}

fn run(args: RunArgs) -> Result<()> {
    let text = fs::read_to_string(&args.instance)
        .with_context(|| format!("reading {}", args.instance.display()))?;
    let instance = instance_format::parse_instance(&text)
        .with_context(|| format!("parsing {}", args.instance.display()))?;
    let params = build_params(&args);

    if let Some(path) = &args.log_iters {
        // Iteration log of the base seed; deterministic, so this exactly
        // mirrors the first run of the experiment below.
        let result = solver::run(&instance, &params)?;
        fs::write(path, experiment::emit_iteration_tsv(&result.records))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    if let Some(target) = args.target {
        let result = ttt::ttt_run(&instance, &params, target, args.runs)?;
        eprintln!(
            "{} on {}: {}/{} runs reached target {} ({} censored)",
            algorithm_name(params.algorithm),
            instance.name,
            result.times.len(),
            result.num_runs,
            target,
            result.censored
        );
        return write_or_print(&args.out, &result.emit_tsv());
    }

    let stats = experiment::run_experiment(&instance, &params, args.runs)?;
    eprintln!(
        "{} on {}: best {:.2}, avg {:.2}, avg time {:.2}s over {} runs",
        algorithm_name(stats.algorithm),
        stats.instance,
        stats.best_cost,
        stats.avg_cost,
        stats.avg_time,
        stats.per_run.len()
    );
    write_or_print(&args.out, &experiment::emit_raw_csv(std::slice::from_ref(&stats)))
}

fn compare(args: CompareArgs) -> Result<()> {
    let read = |path: &PathBuf| -> Result<Vec<experiment::RunStats>> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(experiment::parse_raw_csv(&text)?)
    };
    let baseline = read(&args.baseline)?;
    let candidate = read(&args.candidate)?;

    let mut base_avgs = Vec::new();
    let mut cand_avgs = Vec::new();
    let mut base_times = Vec::new();
    let mut cand_times = Vec::new();
    let mut wins = 0usize;
    let mut ties = 0usize;

    println!("instance,baseline,candidate,base_best,cand_best,base_avg,cand_avg,t,significant");
    for b in &baseline {
        let Some(c) = candidate.iter().find(|c| c.instance == b.instance) else {
            continue;
        };
        base_avgs.push(b.avg_cost);
        cand_avgs.push(c.avg_cost);
        base_times.push(b.avg_time);
        cand_times.push(c.avg_time);
        if c.best_cost < b.best_cost {
            wins += 1;
        } else if c.best_cost == b.best_cost {
            ties += 1;
        }
        // Test whether the baseline's per-run costs exceed the candidate's.
        let t_line = if b.per_run.len() == c.per_run.len() && b.per_run.len() >= 2 {
            let bc: Vec<f64> = b.per_run.iter().map(|r| r.cost).collect();
            let cc: Vec<f64> = c.per_run.iter().map(|r| r.cost).collect();
            let r = stats::paired_t_test(&bc, &cc, args.alpha)?;
            format!("{:.4},{}", r.t, r.significant)
        } else {
            "n/a,n/a".to_string()
        };
        println!(
            "{},{},{},{:.2},{:.2},{:.2},{:.2},{}",
            b.instance,
            algorithm_name(b.algorithm),
            algorithm_name(c.algorithm),
            b.best_cost,
            c.best_cost,
            b.avg_cost,
            c.avg_cost,
            t_line
        );
    }
    if base_avgs.is_empty() {
        bail!("no common instances between the two result files");
    }
    println!(
        "# candidate wins {wins}, ties {ties}, of {} common instances",
        base_avgs.len()
    );
    println!("# APD avg cost: {:.4}%", stats::apd(&base_avgs, &cand_avgs)?);
    println!("# APD avg time: {:.4}%", stats::apd(&base_times, &cand_times)?);
    Ok(())
}

fn convert(args: ConvertArgs) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let name = args.name.clone().unwrap_or_else(|| {
        args.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    });
    let instance = instance_format::convert_plain(&text, &name)
        .with_context(|| format!("converting {}", args.input.display()))?;
    write_or_print(&args.out, &instance_format::emit_instance(&instance))
}
