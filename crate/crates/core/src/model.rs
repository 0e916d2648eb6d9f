//! Core HFVRP data model in the extended (vertex-length) formulation.
//!
//! An instance is a directed graph over vertices `0..=n` (0 is the depot),
//! a dense distance matrix (not necessarily symmetric), and a fleet of
//! vehicle types. Every customer carries a demand and a length; the length
//! is nonzero only for cluster vertices of reduced instances.

use thiserror::Error;

/// Vertex id of the depot. Customers are `1..=n`, contiguous.
pub const DEPOT: usize = 0;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid vertex id {0}")]
    InvalidVertex(usize),
    #[error("invalid vehicle type index {0}")]
    InvalidVehicle(usize),
    #[error("distance matrix dimension mismatch: expected {expected}x{expected}, got {got} entries")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative distance at ({i},{j})")]
    NegativeDistance { i: usize, j: usize },
    #[error("nonzero diagonal at ({0},{0})")]
    NonzeroDiagonal(usize),
    #[error("vehicle type {0} has nonpositive capacity")]
    NonpositiveCapacity(usize),
    #[error("vehicle type {0} has negative cost")]
    NegativeCost(usize),
    #[error("node {0} has negative demand")]
    NegativeDemand(usize),
    #[error("node {0} has negative length")]
    NegativeLength(usize),
    #[error("depot must have zero demand and length")]
    BadDepot,
    #[error("node ids must be 0..=n contiguous, found {0} at position {1}")]
    NonContiguousIds(usize, usize),
    #[error("total demand {demand} exceeds total fleet capacity {capacity}")]
    InsufficientFleet { demand: f64, capacity: f64 },
    #[error("instance must have at least one customer and one vehicle type")]
    Empty,
}

/// A vehicle type: capacity, fixed cost per route, cost per unit distance,
/// and how many vehicles of this type exist. `count: None` means unlimited
/// (the fleet size and mix case); `Some(k)` is a fixed fleet.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleType {
    pub capacity: f64,
    pub fixed_cost: f64,
    pub unit_cost: f64,
    pub count: Option<u32>,
}

impl VehicleType {
    pub fn unlimited(capacity: f64, fixed_cost: f64, unit_cost: f64) -> Self {
        VehicleType { capacity, fixed_cost, unit_cost, count: None }
    }

    pub fn limited(capacity: f64, fixed_cost: f64, unit_cost: f64, count: u32) -> Self {
        VehicleType { capacity, fixed_cost, unit_cost, count: Some(count) }
    }
}

/// A vertex of the instance graph. `length` is the internal travel distance
/// of the route segment this vertex stands for (zero for plain customers).
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: usize,
    pub demand: f64,
    pub length: f64,
    pub coords: Option<(f64, f64)>,
}

impl Node {
    pub fn new(id: usize, demand: f64, length: f64) -> Self {
        Node { id, demand, length, coords: None }
    }

    pub fn with_coords(id: usize, demand: f64, x: f64, y: f64) -> Self {
        Node { id, demand, length: 0.0, coords: Some((x, y)) }
    }
}

/// An HFVRP instance: depot + customers, dense directed distance matrix,
/// and the vehicle fleet. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub nodes: Vec<Node>,
    pub fleet: Vec<VehicleType>,
    dist: Vec<f64>,
    dim: usize,
}

impl Instance {
    /// Builds an instance from an explicit distance matrix (row-major,
    /// `(n+1) x (n+1)`), validating all structural invariants.
    pub fn new(
        name: impl Into<String>,
        nodes: Vec<Node>,
        dist: Vec<f64>,
        fleet: Vec<VehicleType>,
    ) -> Result<Self, ModelError> {
        let dim = nodes.len();
        if dim < 2 || fleet.is_empty() {
            return Err(ModelError::Empty);
        }
        if dist.len() != dim * dim {
            return Err(ModelError::DimensionMismatch { expected: dim, got: dist.len() });
        }
        let inst = Instance { name: name.into(), nodes, fleet, dist, dim };
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance from planar coordinates, using full-precision
    /// Euclidean distances.
    pub fn from_coords(
        name: impl Into<String>,
        nodes: Vec<Node>,
        fleet: Vec<VehicleType>,
    ) -> Result<Self, ModelError> {
        let dim = nodes.len();
        let mut dist = vec![0.0; dim * dim];
        for i in 0..dim {
            let (xi, yi) = nodes[i].coords.ok_or(ModelError::InvalidVertex(i))?;
            for j in 0..dim {
                let (xj, yj) = nodes[j].coords.ok_or(ModelError::InvalidVertex(j))?;
                dist[i * dim + j] = ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt();
            }
        }
        Instance::new(name, nodes, dist, fleet)
    }

    fn validate(&self) -> Result<(), ModelError> {
        for (pos, node) in self.nodes.iter().enumerate() {
            if node.id != pos {
                return Err(ModelError::NonContiguousIds(node.id, pos));
            }
            if node.demand < 0.0 {
                return Err(ModelError::NegativeDemand(node.id));
            }
            if node.length < 0.0 {
                return Err(ModelError::NegativeLength(node.id));
            }
        }
        if self.nodes[DEPOT].demand != 0.0 || self.nodes[DEPOT].length != 0.0 {
            return Err(ModelError::BadDepot);
        }
        for i in 0..self.dim {
            if self.dist[i * self.dim + i] != 0.0 {
                return Err(ModelError::NonzeroDiagonal(i));
            }
            for j in 0..self.dim {
                if self.dist[i * self.dim + j] < 0.0 {
                    return Err(ModelError::NegativeDistance { i, j });
                }
            }
        }
        for (u, vt) in self.fleet.iter().enumerate() {
            if vt.capacity <= 0.0 {
                return Err(ModelError::NonpositiveCapacity(u));
            }
            if vt.fixed_cost < 0.0 || vt.unit_cost < 0.0 {
                return Err(ModelError::NegativeCost(u));
            }
        }
        if self.fleet.iter().all(|v| v.count.is_some()) {
            let demand: f64 = self.nodes.iter().map(|c| c.demand).sum();
            let capacity: f64 = self
                .fleet
                .iter()
                .map(|v| v.capacity * v.count.unwrap() as f64)
                .sum();
            if demand > capacity {
                return Err(ModelError::InsufficientFleet { demand, capacity });
            }
        }
        Ok(())
    }

    /// Number of customers (excludes the depot).
    pub fn num_customers(&self) -> usize {
        self.dim - 1
    }

    /// Number of vertices including the depot.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Directed distance from `i` to `j`.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.dim + j]
    }

    /// Length (internal segment distance) of vertex `i`.
    #[inline]
    pub fn length(&self, i: usize) -> f64 {
        self.nodes[i].length
    }

    /// Demand of vertex `i`.
    #[inline]
    pub fn demand(&self, i: usize) -> f64 {
        self.nodes[i].demand
    }

    /// Largest vehicle capacity in the fleet.
    pub fn max_capacity(&self) -> f64 {
        self.fleet.iter().map(|v| v.capacity).fold(0.0, f64::max)
    }

    fn check_vertex(&self, i: usize) -> Result<(), ModelError> {
        if i >= self.dim {
            return Err(ModelError::InvalidVertex(i));
        }
        Ok(())
    }
}

/// One route: a vehicle type and the visiting order of its customers.
/// The depot is implicit at both ends and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route {
    pub vehicle: usize,
    pub customers: Vec<usize>,
}

impl Route {
    pub fn new(vehicle: usize, customers: Vec<usize>) -> Self {
        debug_assert!(!customers.is_empty());
        Route { vehicle, customers }
    }
}

/// A complete solution with its cached total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub routes: Vec<Route>,
    pub cost: f64,
}

impl Solution {
    /// Wraps routes and computes the cached cost from scratch.
    pub fn new(instance: &Instance, routes: Vec<Route>) -> Result<Self, ModelError> {
        let mut sol = Solution { routes, cost: 0.0 };
        sol.cost = solution_cost(instance, &sol)?;
        Ok(sol)
    }
}

/// Cost of a single route in the extended model: fixed cost of the vehicle,
/// plus the per-distance cost over all traversed arcs (depot to first
/// customer, between consecutive customers, last customer back to the
/// depot), plus the per-distance cost over the lengths of visited vertices.
pub fn route_cost(instance: &Instance, route: &Route) -> Result<f64, ModelError> {
    let vt = instance
        .fleet
        .get(route.vehicle)
        .ok_or(ModelError::InvalidVehicle(route.vehicle))?;
    let mut dist_sum = 0.0;
    let mut prev = DEPOT;
    for &c in &route.customers {
        instance.check_vertex(c)?;
        dist_sum += instance.dist(prev, c) + instance.length(c);
        prev = c;
    }
    dist_sum += instance.dist(prev, DEPOT);
    Ok(vt.fixed_cost + vt.unit_cost * dist_sum)
}

/// Total demand served by a route.
pub fn route_load(instance: &Instance, route: &Route) -> Result<f64, ModelError> {
    let mut load = 0.0;
    for &c in &route.customers {
        instance.check_vertex(c)?;
        load += instance.demand(c);
    }
    Ok(load)
}

/// Sum of all route costs.
pub fn solution_cost(instance: &Instance, solution: &Solution) -> Result<f64, ModelError> {
    let mut total = 0.0;
    for route in &solution.routes {
        total += route_cost(instance, route)?;
    }
    Ok(total)
}

/// A single feasibility violation. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Route `route` (index into the solution) exceeds its vehicle capacity.
    CapacityExceeded { route: usize, load: f64, capacity: f64 },
    /// More routes use vehicle type `vehicle` than vehicles exist.
    FleetExceeded { vehicle: usize, used: usize, available: u32 },
    /// A customer appears in no route.
    CustomerMissing { customer: usize },
    /// A customer appears more than once across the solution.
    CustomerRepeated { customer: usize, times: usize },
    /// A route is empty or references an invalid id.
    Structural { route: usize },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks capacity per route, route counts per vehicle type, and exact-once
/// coverage of every customer. The report is independent of route order.
pub fn check_feasibility(instance: &Instance, solution: &Solution) -> FeasibilityReport {
    let mut violations = Vec::new();
    let mut seen = vec![0usize; instance.dim()];
    let mut type_usage = vec![0usize; instance.fleet.len()];

    for (ri, route) in solution.routes.iter().enumerate() {
        if route.customers.is_empty()
            || route.vehicle >= instance.fleet.len()
            || route.customers.iter().any(|&c| c == DEPOT || c >= instance.dim())
        {
            violations.push(Violation::Structural { route: ri });
            continue;
        }
        type_usage[route.vehicle] += 1;
        let mut load = 0.0;
        for &c in &route.customers {
            seen[c] += 1;
            load += instance.demand(c);
        }
        let capacity = instance.fleet[route.vehicle].capacity;
        if load > capacity {
            violations.push(Violation::CapacityExceeded { route: ri, load, capacity });
        }
    }

    for (u, &used) in type_usage.iter().enumerate() {
        if let Some(available) = instance.fleet[u].count {
            if used > available as usize {
                violations.push(Violation::FleetExceeded { vehicle: u, used, available });
            }
        }
    }

    for c in 1..instance.dim() {
        match seen[c] {
            0 => violations.push(Violation::CustomerMissing { customer: c }),
            1 => {}
            times => violations.push(Violation::CustomerRepeated { customer: c, times }),
        }
    }

    FeasibilityReport { violations }
}
