//! Time-to-target runs: how long each seeded run needs to reach a target
//! cost, as an empirical distribution suitable for plotting.

use minereduce::solver::{self, SolveError};
use minereduce::{Instance, SolverParams};
use rayon::prelude::*;

/// Outcome of a time-to-target experiment. `times` holds the solver time of
/// every run that reached the target, sorted nondecreasing; runs that
/// exhausted their iteration budget first are counted in `censored`.
#[derive(Debug, Clone, PartialEq)]
pub struct TttResult {
    pub times: Vec<f64>,
    pub censored: usize,
    pub num_runs: usize,
}

impl TttResult {
    /// Plot points `(t_(i), p_i)` with `p_i = (i - 0.5) / num_runs`, so the
    /// probabilities are strictly increasing in (0, 1).
    pub fn plot_points(&self) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, (i as f64 + 0.5) / self.num_runs as f64))
            .collect()
    }

    /// TSV table of the plot points, with a comment line for censored runs.
    pub fn emit_tsv(&self) -> String {
        let mut out = format!(
            "# runs={} reached={} censored={}\ntime\tprobability\n",
            self.num_runs,
            self.times.len(),
            self.censored
        );
        for (t, p) in self.plot_points() {
            out.push_str(&format!("{t}\t{p}\n"));
        }
        out
    }
}

/// Runs the solver `num_runs` times with consecutive seeds, each stopping as
/// soon as it reaches `target_cost`. The recorded time is the solver's own
/// phase time (generation + local search), not wall clock, so results are
/// comparable across parallel executions.
pub fn ttt_run(
    instance: &Instance,
    params: &SolverParams,
    target_cost: f64,
    num_runs: usize,
) -> Result<TttResult, SolveError> {
    assert!(num_runs >= 1);
    assert!(target_cost > 0.0);
    let outcomes = (0..num_runs as u64)
        .into_par_iter()
        .map(|offset| {
            let run_params = SolverParams {
                seed: params.seed + offset,
                target_cost: Some(target_cost),
                ..params.clone()
            };
            let result = solver::run(instance, &run_params)?;
            let elapsed: f64 = result.records.iter().map(|r| r.gen_time + r.ls_time).sum();
            Ok(result.hit_target.then_some(elapsed))
        })
        .collect::<Result<Vec<_>, SolveError>>()?;

    let mut times: Vec<f64> = outcomes.iter().filter_map(|o| *o).collect();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let censored = num_runs - times.len();
    Ok(TttResult { times, censored, num_runs })
}
