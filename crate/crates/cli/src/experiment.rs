//! Multi-seed experiments: run one algorithm many times on an instance,
//! aggregate, and read/write the raw-results CSV.

use std::time::Instant;

use minereduce::solver::{self, SolveError};
use minereduce::{Algorithm, Instance, IterationRecord, SolverParams};
use rayon::prelude::*;
use thiserror::Error;

use crate::{algorithm_name, parse_algorithm};

/// One seeded run: its seed, best cost, and solver wall-clock seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub cost: f64,
    pub time: f64,
}

/// Aggregated results of one (instance, algorithm) experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub instance: String,
    pub algorithm: Algorithm,
    pub best_cost: f64,
    pub avg_cost: f64,
    pub avg_time: f64,
    pub per_run: Vec<RunRecord>,
}

impl RunStats {
    /// Builds the aggregate fields from raw runs.
    pub fn from_runs(instance: String, algorithm: Algorithm, per_run: Vec<RunRecord>) -> Self {
        assert!(!per_run.is_empty());
        let n = per_run.len() as f64;
        let best_cost = per_run.iter().map(|r| r.cost).fold(f64::INFINITY, f64::min);
        let avg_cost = per_run.iter().map(|r| r.cost).sum::<f64>() / n;
        let avg_time = per_run.iter().map(|r| r.time).sum::<f64>() / n;
        RunStats { instance, algorithm, best_cost, avg_cost, avg_time, per_run }
    }
}

/// Runs the solver `num_runs` times with seeds `params.seed + 0..num_runs`,
/// in parallel, and aggregates. Any failing run aborts the experiment.
pub fn run_experiment(
    instance: &Instance,
    params: &SolverParams,
    num_runs: usize,
) -> Result<RunStats, SolveError> {
    assert!(num_runs >= 1);
    let per_run = (0..num_runs as u64)
        .into_par_iter()
        .map(|offset| {
            let seed = params.seed + offset;
            let run_params = SolverParams { seed, ..params.clone() };
            let started = Instant::now();
            let result = solver::run(instance, &run_params)?;
            Ok(RunRecord { seed, cost: result.best.cost, time: started.elapsed().as_secs_f64() })
        })
        .collect::<Result<Vec<_>, SolveError>>()?;
    Ok(RunStats::from_runs(instance.name.clone(), params.algorithm, per_run))
}

pub const RAW_CSV_HEADER: &str = "instance,algorithm,seed,cost,time";

/// Raw per-run CSV: one row per run, full precision.
pub fn emit_raw_csv(stats: &[RunStats]) -> String {
    let mut out = String::from(RAW_CSV_HEADER);
    out.push('\n');
    for s in stats {
        for run in &s.per_run {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.instance,
                algorithm_name(s.algorithm),
                run.seed,
                run.cost,
                run.time
            ));
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("line {0}: expected `{RAW_CSV_HEADER}` header")]
    BadHeader(usize),
    #[error("line {line}: expected 5 fields, got {got}")]
    FieldCount { line: usize, got: usize },
    #[error("line {line}: unknown algorithm `{got}`")]
    UnknownAlgorithm { line: usize, got: String },
    #[error("line {line}: bad number `{got}`")]
    BadNumber { line: usize, got: String },
}

/// Parses a raw per-run CSV back into aggregated stats, grouped by
/// (instance, algorithm) in order of first appearance.
pub fn parse_raw_csv(text: &str) -> Result<Vec<RunStats>, CsvError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (i, header) = lines.next().ok_or(CsvError::BadHeader(1))?;
    if header.trim() != RAW_CSV_HEADER {
        return Err(CsvError::BadHeader(i + 1));
    }

    let mut groups: Vec<(String, Algorithm, Vec<RunRecord>)> = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 5 {
            return Err(CsvError::FieldCount { line: lineno, got: fields.len() });
        }
        let algorithm = parse_algorithm(fields[1])
            .ok_or_else(|| CsvError::UnknownAlgorithm { line: lineno, got: fields[1].into() })?;
        let number = |s: &str| -> Result<f64, CsvError> {
            s.parse().map_err(|_| CsvError::BadNumber { line: lineno, got: s.into() })
        };
        let seed = fields[2]
            .parse::<u64>()
            .map_err(|_| CsvError::BadNumber { line: lineno, got: fields[2].into() })?;
        let record = RunRecord { seed, cost: number(fields[3])?, time: number(fields[4])? };

        match groups.iter_mut().find(|(n, a, _)| n == fields[0] && *a == algorithm) {
            Some((_, _, runs)) => runs.push(record),
            None => groups.push((fields[0].to_string(), algorithm, vec![record])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(instance, algorithm, runs)| RunStats::from_runs(instance, algorithm, runs))
        .collect())
}

/// Summary CSV for tables: one row per experiment, costs with two decimals.
pub fn emit_summary_csv(stats: &[RunStats]) -> String {
    let mut out = String::from("instance,algorithm,best_cost,avg_cost,avg_time\n");
    for s in stats {
        out.push_str(&format!(
            "{},{},{:.2},{:.2},{:.2}\n",
            s.instance,
            algorithm_name(s.algorithm),
            s.best_cost,
            s.avg_cost,
            s.avg_time
        ));
    }
    out
}

/// Per-iteration TSV log: iter, generation cost, local-search cost, phase
/// times in seconds, and whether mining ran this iteration.
pub fn emit_iteration_tsv(records: &[IterationRecord]) -> String {
    let mut out = String::from("iter\tgen_cost\tls_cost\tgen_time\tls_time\tmined\n");
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.iter,
            r.gen_cost,
            r.ls_cost,
            r.gen_time,
            r.ls_time,
            r.mined as u8
        ));
    }
    out
}
