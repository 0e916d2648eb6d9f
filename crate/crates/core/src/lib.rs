//! Heterogeneous fleet vehicle routing (HFVRP) solver based on a multi-start
//! iterated local search, optionally hybridized with pattern mining over an
//! elite set of solutions.
//!
//! Two hybrid modes are provided on top of the plain multi-start ILS:
//!
//! * a pattern-seeded mode, where mined route segments become the initial
//!   routes of new solutions, and
//! * a reduce-optimize-expand mode, where mined segments are contracted into
//!   cluster vertices, the smaller instance is solved, and the solution is
//!   expanded back to the original instance.
//!
//! The crate works in an extended problem model where every customer vertex
//! carries a `length`: the internal travel distance of the route segment it
//! stands for. Regular customers have length zero, so the extended model
//! collapses to the classical one on non-reduced instances.

pub mod construct;
pub mod local_search;
pub mod mining;
pub mod model;
pub mod reduce;
pub mod solver;
pub mod synthetic;

pub use model::{
    check_feasibility, route_cost, route_load, solution_cost, FeasibilityReport, Instance,
    ModelError, Node, Route, Solution, VehicleType, Violation, DEPOT,
};
pub use solver::{Algorithm, IterationRecord, SolverParams};

/// Absolute tolerance used to decide whether one solution cost improves on
/// another. Differences below this are treated as ties.
pub const IMPROVE_EPS: f64 = 1e-6;

/// Seedable RNG used throughout the crate. ChaCha with 8 rounds: portable,
/// fast, and identical across platforms for a given seed.
pub type Rng = rand_chacha::ChaCha8Rng;
