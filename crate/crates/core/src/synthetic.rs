//! Seeded generators for random instances and solutions. Used by tests and
//! benchmarks, and handy for quick experiments without benchmark files.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use crate::model::{Instance, Node, Route, Solution, VehicleType, DEPOT};

/// Random planar instance with `n` customers and `types` vehicle types.
/// Coordinates in [0,100)^2, demands in 1..=10. With `symmetric` the
/// Euclidean matrix is used as-is; otherwise directed noise is added so the
/// matrix is strictly asymmetric.
pub fn random_instance(rng: &mut crate::Rng, n: usize, types: usize, symmetric: bool) -> Instance {
    let mut nodes = vec![Node::new(DEPOT, 0.0, 0.0)];
    nodes[DEPOT].coords = Some((50.0, 50.0));
    for id in 1..=n {
        let demand = rng.random_range(1..=10) as f64;
        nodes.push(Node::with_coords(id, demand, rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)));
    }
    let total_demand: f64 = nodes.iter().map(|c| c.demand).sum();
    let mut fleet = Vec::with_capacity(types);
    for u in 0..types {
        // Capacities spread so that several routes are needed; generous
        // counts keep random instances feasible.
        let capacity = (total_demand / (types - u) as f64).max(12.0).ceil();
        let fixed = 10.0 * (u + 1) as f64;
        let unit = 1.0 + 0.3 * u as f64;
        fleet.push(VehicleType::limited(capacity, fixed, unit, (n + types) as u32));
    }
    let dim = n + 1;
    let mut dist = vec![0.0; dim * dim];
    for i in 0..dim {
        let (xi, yi) = nodes[i].coords.unwrap();
        for j in 0..dim {
            if i == j {
                continue;
            }
            let (xj, yj) = nodes[j].coords.unwrap();
            let mut d = ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt();
            if !symmetric {
                d += rng.random_range(0.0..5.0);
            }
            dist[i * dim + j] = d;
        }
    }
    Instance::new(format!("random-{n}-{types}"), nodes, dist, fleet).unwrap()
}

/// Random feasible solution: customers in random order, split greedily into
/// routes that respect the capacity of a randomly chosen vehicle type.
pub fn random_solution(instance: &Instance, rng: &mut crate::Rng) -> Solution {
    let mut order: Vec<usize> = (1..instance.dim()).collect();
    order.shuffle(rng);

    let mut remaining: Vec<u32> = instance
        .fleet
        .iter()
        .map(|v| v.count.unwrap_or(u32::MAX))
        .collect();
    let mut routes: Vec<Route> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut load = 0.0;
    let mut vehicle = pick_type(instance, &remaining, rng);

    for c in order {
        let q = instance.demand(c);
        if load + q > instance.fleet[vehicle].capacity && !current.is_empty() {
            remaining[vehicle] = remaining[vehicle].saturating_sub(1);
            routes.push(Route::new(vehicle, std::mem::take(&mut current)));
            load = 0.0;
            vehicle = pick_type(instance, &remaining, rng);
        }
        current.push(c);
        load += q;
    }
    if !current.is_empty() {
        routes.push(Route::new(vehicle, current));
    }
    Solution::new(instance, routes).unwrap()
}

fn pick_type(instance: &Instance, remaining: &[u32], rng: &mut crate::Rng) -> usize {
    let candidates: Vec<usize> = (0..instance.fleet.len()).filter(|&u| remaining[u] > 0).collect();
    *candidates.choose(rng).expect("fleet exhausted")
}
