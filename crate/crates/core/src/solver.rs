//! The multi-start solver loop and its mining-hybridized variants.
//!
//! Every iteration generates a start solution, improves it with iterated
//! local search, and keeps the best result. The hybrid variants additionally
//! maintain an elite set of the best distinct solutions; once it stabilizes,
//! its frequent route segments are mined and the generation step switches to
//! using them — either as seed routes or through instance reduction.

use std::time::Instant;

use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::local_search::{self, IlsParams};
use crate::mining::{mine_elite, EliteSet, MiningError, PatternList};
use crate::model::{Instance, Solution};
use crate::reduce::{self, ReduceError};
use crate::IMPROVE_EPS;

use rand::SeedableRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Plain multi-start iterated local search.
    MsIls,
    /// Multi-start ILS whose construction is seeded with mined segments.
    MdmMsIls,
    /// Multi-start ILS with reduce-optimize-expand generation.
    MineReduce,
}

impl Algorithm {
    pub fn uses_mining(self) -> bool {
        !matches!(self, Algorithm::MsIls)
    }
}

#[derive(Debug, Clone)]
pub struct SolverParams {
    pub algorithm: Algorithm,
    /// Outer multi-start iterations.
    pub max_iter: usize,
    /// ILS stop-rule coefficient (`MaxIterILS = n + beta * v`).
    pub beta: u32,
    /// Elite set capacity.
    pub elite_size: usize,
    /// Patterns kept from each mining.
    pub max_patterns: usize,
    /// Minimum support for the frequent-itemset miner.
    pub min_sup: f64,
    /// Iterations the elite set must go unmodified before it counts as stable.
    pub delta: usize,
    pub seed: u64,
    /// Stop as soon as the best cost reaches this value.
    pub target_cost: Option<f64>,
    /// Run a full ILS instead of a single descent on reduced instances.
    pub full_ils_on_reduced: bool,
}

impl SolverParams {
    /// Defaults tuned per algorithm: the reduce-optimize-expand variant mines
    /// few large low-support patterns, the seeded variant more patterns at
    /// high support.
    pub fn for_algorithm(algorithm: Algorithm) -> Self {
        let (elite_size, max_patterns, min_sup) = match algorithm {
            Algorithm::MineReduce => (10, 6, 0.2),
            Algorithm::MdmMsIls => (10, 9, 0.7),
            Algorithm::MsIls => (10, 6, 0.2), // unused by this variant
        };
        SolverParams {
            algorithm,
            max_iter: 100,
            beta: 5,
            elite_size,
            max_patterns,
            min_sup,
            delta: 3,
            seed: 0,
            target_cost: None,
            full_ils_on_reduced: false,
        }
    }
}

/// Per-iteration log entry. Times are in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    /// Cost of the generated start solution.
    pub gen_cost: f64,
    /// Cost after the ILS phase.
    pub ls_cost: f64,
    pub gen_time: f64,
    pub ls_time: f64,
    /// Whether the miner ran at the top of this iteration.
    pub mined: bool,
    /// Index of the pattern used for generation, if any.
    pub pattern_id: Option<usize>,
}

#[derive(Debug)]
pub struct SolveResult {
    pub best: Solution,
    pub records: Vec<IterationRecord>,
    /// Whether the run stopped early because `target_cost` was reached.
    pub hit_target: bool,
}

impl SolveResult {
    /// Running minimum of the per-iteration local-search costs.
    pub fn best_cost_trace(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.records
            .iter()
            .map(|r| {
                best = best.min(r.ls_cost);
                best
            })
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Mining(#[from] MiningError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Runs the configured algorithm on `instance`.
pub fn run(instance: &Instance, params: &SolverParams) -> Result<SolveResult, SolveError> {
    let mut rng = crate::Rng::seed_from_u64(params.seed);
    let ils_params = IlsParams { beta: params.beta, ..IlsParams::default() };

    let mut best: Option<Solution> = None;
    let mut elite = EliteSet::new(params.elite_size);
    let mut patterns: Option<PatternList> = None;
    let mut records = Vec::with_capacity(params.max_iter);
    let mut hit_target = false;

    for iter in 1..=params.max_iter {
        let mut mined = false;
        if params.algorithm.uses_mining() && elite.is_stable(params.delta, iter) {
            let list = mine_elite(&elite, params.max_patterns, params.min_sup)?;
            elite.mark_mined();
            mined = true;
            if list.is_empty() {
                log::warn!("mining produced no patterns at iteration {iter}");
            } else {
                patterns = Some(list);
            }
        }

        let gen_started = Instant::now();
        let (start, pattern_id) = generate(instance, params, &ils_params, &mut patterns, &mut rng)?;
        let gen_time = gen_started.elapsed().as_secs_f64();

        let ls_started = Instant::now();
        let improved = local_search::ils(instance, &start, &ils_params, &mut rng);
        let ls_time = ls_started.elapsed().as_secs_f64();

        if params.algorithm.uses_mining() {
            elite.update(&improved, iter);
        }
        records.push(IterationRecord {
            iter,
            gen_cost: start.cost,
            ls_cost: improved.cost,
            gen_time,
            ls_time,
            mined,
            pattern_id,
        });
        if best.as_ref().is_none_or(|b| improved.cost < b.cost - IMPROVE_EPS) {
            best = Some(improved);
        }
        if let Some(target) = params.target_cost {
            if best.as_ref().unwrap().cost <= target + IMPROVE_EPS {
                hit_target = true;
                break;
            }
        }
    }

    Ok(SolveResult { best: best.expect("max_iter >= 1"), records, hit_target })
}

/// Produces one start solution. Before any patterns exist (and always for
/// the plain algorithm) this is randomized construction; afterwards the
/// pattern list is consumed cyclically. Patterns without usable segments,
/// and pattern-based generations that fail, fall back to plain construction.
fn generate(
    instance: &Instance,
    params: &SolverParams,
    ils_params: &IlsParams,
    patterns: &mut Option<PatternList>,
    rng: &mut crate::Rng,
) -> Result<(Solution, Option<usize>), SolveError> {
    let plain =
        |rng: &mut crate::Rng| -> Result<Solution, ConstructError> {
            construct::generate_initial_solution(instance, rng)
        };

    let Some(list) = patterns else {
        return Ok((plain(rng)?, None));
    };
    let (id, pattern) = list.next_pattern()?;
    if pattern.segments.is_empty() {
        return Ok((plain(rng)?, None));
    }
    let segments = pattern.segments.clone();

    let generated = match params.algorithm {
        Algorithm::MsIls => return Ok((plain(rng)?, None)),
        Algorithm::MdmMsIls => construct::seed_solution_from_pattern(instance, &segments, rng)
            .map_err(SolveError::from),
        Algorithm::MineReduce => reduce::minereduce_generation(
            instance,
            &segments,
            ils_params,
            params.full_ils_on_reduced,
            rng,
        )
        .map_err(SolveError::from),
    };
    match generated {
        Ok(solution) => Ok((solution, Some(id))),
        Err(err) => {
            log::warn!("pattern {id} generation failed ({err}); using plain construction");
            Ok((plain(rng)?, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::check_feasibility;
    use crate::synthetic;

    fn rng(seed: u64) -> crate::Rng {
        crate::Rng::seed_from_u64(seed)
    }

    fn instance(seed: u64, n: usize) -> Instance {
        synthetic::random_instance(&mut rng(seed), n, 2, false)
    }

    fn params(algorithm: Algorithm, max_iter: usize, seed: u64) -> SolverParams {
        SolverParams { max_iter, seed, ..SolverParams::for_algorithm(algorithm) }
    }

    #[test]
    fn single_iteration_equals_construct_plus_ils() {
        let inst = instance(1, 10);
        let p = params(Algorithm::MsIls, 1, 7);
        let result = run(&inst, &p).unwrap();

        let mut r = rng(7);
        let start = construct::generate_initial_solution(&inst, &mut r).unwrap();
        let expect = local_search::ils(&inst, &start, &IlsParams::default(), &mut r);
        assert_eq!(result.best.routes, expect.routes);
        assert_eq!(result.records.len(), 1);
        assert_eq!(result.records[0].gen_cost, start.cost);
        assert_eq!(result.records[0].ls_cost, expect.cost);
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let inst = instance(2, 10);
        for algorithm in [Algorithm::MsIls, Algorithm::MdmMsIls, Algorithm::MineReduce] {
            let p = SolverParams { delta: 1, ..params(algorithm, 12, 99) };
            let a = run(&inst, &p).unwrap();
            let b = run(&inst, &p).unwrap();
            assert_eq!(a.best.routes, b.best.routes);
            let strip =
                |r: &IterationRecord| (r.iter, r.gen_cost, r.ls_cost, r.mined, r.pattern_id);
            assert_eq!(
                a.records.iter().map(strip).collect::<Vec<_>>(),
                b.records.iter().map(strip).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn hybrid_variants_mine_and_use_patterns() {
        let inst = instance(3, 12);
        for algorithm in [Algorithm::MdmMsIls, Algorithm::MineReduce] {
            let p = SolverParams {
                delta: 1,
                min_sup: 0.2,
                ..params(algorithm, 20, 5)
            };
            let result = run(&inst, &p).unwrap();
            assert!(
                result.records.iter().any(|r| r.mined),
                "{algorithm:?} never mined"
            );
            assert!(
                result.records.iter().any(|r| r.pattern_id.is_some()),
                "{algorithm:?} never generated from a pattern"
            );
            assert!(check_feasibility(&inst, &result.best).is_feasible());
        }
    }

    #[test]
    fn best_is_the_minimum_and_trace_is_monotone() {
        let inst = instance(4, 10);
        let result = run(&inst, &params(Algorithm::MsIls, 8, 11)).unwrap();
        let min_ls = result.records.iter().map(|r| r.ls_cost).fold(f64::INFINITY, f64::min);
        assert!((result.best.cost - min_ls).abs() < 1e-9);
        let trace = result.best_cost_trace();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(trace.last().copied().unwrap(), result.best.cost);
    }

    #[test]
    fn target_cost_stops_the_run_early() {
        let inst = instance(5, 10);
        let p = SolverParams {
            target_cost: Some(f64::INFINITY),
            ..params(Algorithm::MsIls, 50, 3)
        };
        let result = run(&inst, &p).unwrap();
        assert!(result.hit_target);
        assert_eq!(result.records.len(), 1);

        let unreachable = SolverParams { target_cost: Some(0.0), ..p };
        let result = run(&inst, &unreachable).unwrap();
        assert!(!result.hit_target);
        assert_eq!(result.records.len(), 50);
    }

    #[test]
    fn plain_variant_ignores_mining_parameters() {
        let inst = instance(6, 10);
        let base = params(Algorithm::MsIls, 6, 21);
        let tweaked = SolverParams { min_sup: 0.9, elite_size: 3, delta: 1, ..base.clone() };
        let a = run(&inst, &base).unwrap();
        let b = run(&inst, &tweaked).unwrap();
        assert_eq!(a.best.routes, b.best.routes);
        assert!(a.records.iter().all(|r| !r.mined && r.pattern_id.is_none()));
    }
}
