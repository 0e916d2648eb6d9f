//! Instance reduction and solution expansion.
//!
//! Mined route segments are contracted into single cluster vertices: the
//! cluster carries the summed demand, an internal length equal to the
//! segment's internal travel plus its members' lengths, and boundary
//! distances taken from the segment's first (incoming) and last (outgoing)
//! member. Reduced instances are asymmetric even when the original is not.
//! Solutions of the reduced instance expand back to the original with
//! exactly the same cost.

use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::local_search::{self, IlsParams};
use crate::model::{Instance, ModelError, Node, Route, Solution, DEPOT};

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("customer {0} appears in more than one segment")]
    OverlappingSegments(usize),
    #[error("segment contains vertex {0}, which is not a customer of the instance")]
    InvalidSegmentVertex(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Maps reduced-instance vertices back to the original customer sequences
/// they stand for. Index = reduced vertex id; the depot maps to itself,
/// passthrough customers to a singleton, clusters to their ordered segment.
#[derive(Debug, Clone)]
pub struct ReductionMap {
    expansion: Vec<Vec<usize>>,
}

impl ReductionMap {
    /// The original customer sequence behind reduced vertex `r`.
    pub fn expand_vertex(&self, r: usize) -> &[usize] {
        &self.expansion[r]
    }

    pub fn reduced_dim(&self) -> usize {
        self.expansion.len()
    }

    /// Number of reduced vertices that stand for more than one customer.
    pub fn num_clusters(&self) -> usize {
        self.expansion.iter().filter(|e| e.len() > 1).count()
    }
}

/// Contracts each segment of two or more customers into a cluster vertex.
///
/// Surviving customers keep their relative order and get ids `1..=s`;
/// clusters follow with ids `s+1..`. Segments whose combined demand exceeds
/// every vehicle capacity are skipped (their customers stay individual),
/// since no route could serve the cluster. Segments sharing a customer are
/// an error.
pub fn reduce_instance(
    instance: &Instance,
    segments: &[(Vec<usize>, usize)],
) -> Result<(Instance, ReductionMap), ReduceError> {
    let dim = instance.dim();
    let mut in_segment = vec![false; dim];
    let mut kept: Vec<&Vec<usize>> = Vec::new();
    for (path, _) in segments {
        for &c in path {
            if c == DEPOT || c >= dim {
                return Err(ReduceError::InvalidSegmentVertex(c));
            }
            if in_segment[c] {
                return Err(ReduceError::OverlappingSegments(c));
            }
            in_segment[c] = true;
        }
        if path.len() < 2 {
            // nothing to contract; the customer stays individual
            for &c in path {
                in_segment[c] = false;
            }
            continue;
        }
        let q: f64 = path.iter().map(|&c| instance.demand(c)).sum();
        if q > instance.max_capacity() {
            log::warn!(
                "dropping segment {:?}: demand {} exceeds the largest capacity {}",
                path,
                q,
                instance.max_capacity()
            );
            for &c in path {
                in_segment[c] = false;
            }
            continue;
        }
        kept.push(path);
    }

    // Reduced vertex -> ordered original members.
    let mut expansion: Vec<Vec<usize>> = vec![vec![DEPOT]];
    expansion.extend((1..dim).filter(|&c| !in_segment[c]).map(|c| vec![c]));
    expansion.extend(kept.iter().map(|path| (*path).clone()));

    let rdim = expansion.len();
    let mut nodes = Vec::with_capacity(rdim);
    nodes.push(Node::new(DEPOT, 0.0, 0.0));
    for (r, members) in expansion.iter().enumerate().skip(1) {
        let demand: f64 = members.iter().map(|&c| instance.demand(c)).sum();
        let length: f64 = members.iter().map(|&c| instance.length(c)).sum::<f64>()
            + members.windows(2).map(|w| instance.dist(w[0], w[1])).sum::<f64>();
        let mut node = Node::new(r, demand, length);
        if members.len() == 1 {
            node.coords = instance.nodes[members[0]].coords;
        }
        nodes.push(node);
    }

    let mut dist = vec![0.0; rdim * rdim];
    for a in 0..rdim {
        let last = *expansion[a].last().unwrap();
        for b in 0..rdim {
            if a == b {
                continue;
            }
            let first = *expansion[b].first().unwrap();
            dist[a * rdim + b] = instance.dist(last, first);
        }
    }

    let reduced = Instance::new(
        format!("{}-reduced", instance.name),
        nodes,
        dist,
        instance.fleet.clone(),
    )?;
    Ok((reduced, ReductionMap { expansion }))
}

/// Replaces every reduced vertex in `solution` by its original customer
/// sequence and recomputes the cost on the original instance. The cost is
/// identical to the reduced cost by construction; the recomputation keeps
/// the expansion honest.
pub fn expand_solution(
    original: &Instance,
    solution: &Solution,
    map: &ReductionMap,
) -> Result<Solution, ModelError> {
    let routes = solution
        .routes
        .iter()
        .map(|route| {
            let customers = route
                .customers
                .iter()
                .flat_map(|&r| map.expand_vertex(r).iter().copied())
                .collect();
            Route::new(route.vehicle, customers)
        })
        .collect();
    Solution::new(original, routes)
}

/// One reduce-optimize-expand cycle: contract the segments, build and
/// locally optimize a solution of the reduced instance, expand it back.
/// With `full_ils` the reduced instance gets a complete ILS run instead of
/// a single descent.
pub fn minereduce_generation(
    instance: &Instance,
    segments: &[(Vec<usize>, usize)],
    params: &IlsParams,
    full_ils: bool,
    rng: &mut crate::Rng,
) -> Result<Solution, ReduceError> {
    let (reduced, map) = reduce_instance(instance, segments)?;
    let start = construct::generate_initial_solution(&reduced, rng)?;
    let optimized = if full_ils {
        local_search::ils(&reduced, &start, params, rng)
    } else {
        local_search::rvnd_descent(&reduced, &start, params, rng)
    };
    Ok(expand_solution(instance, &optimized, &map)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_feasibility, solution_cost, VehicleType};
    use crate::synthetic;
    use rand::SeedableRng;

    fn rng(seed: u64) -> crate::Rng {
        crate::Rng::seed_from_u64(seed)
    }

    /// Seven-vertex instance (depot D plus a, b, c, d, e, f) whose segment
    /// (d, e, f) contracts to the worked cluster example: q_g = 8, l_g = 4,
    /// incoming distances from d's column, outgoing from f's row.
    fn fig_example() -> Instance {
        let nodes = vec![
            Node::new(0, 0.0, 0.0), // D
            Node::new(1, 3.0, 0.0), // a
            Node::new(2, 2.0, 0.0), // b
            Node::new(3, 5.0, 0.0), // c
            Node::new(4, 4.0, 0.0), // d
            Node::new(5, 2.0, 0.0), // e
            Node::new(6, 2.0, 0.0), // f
        ];
        #[rustfmt::skip]
        let dist = vec![
            //  D    a    b    c    d    e    f
            0.0, 6.0, 7.0, 8.0, 3.0, 9.0, 9.0, // D
            6.0, 0.0, 4.0, 5.0, 5.0, 8.0, 7.0, // a
            7.0, 4.0, 0.0, 6.0, 4.0, 6.0, 8.0, // b
            8.0, 5.0, 6.0, 0.0, 3.0, 7.0, 9.0, // c
            3.0, 5.0, 4.0, 3.0, 0.0, 2.0, 5.0, // d
            9.0, 8.0, 6.0, 7.0, 2.0, 0.0, 2.0, // e
            1.0, 2.0, 2.0, 4.0, 5.0, 2.0, 0.0, // f
        ];
        let fleet = vec![VehicleType::unlimited(20.0, 10.0, 1.0)];
        Instance::new("fig-example", nodes, dist, fleet).unwrap()
    }

    #[test]
    fn cluster_attributes_match_worked_example() {
        let inst = fig_example();
        let (red, map) = reduce_instance(&inst, &[(vec![4, 5, 6], 0)]).unwrap();

        // a, b, c keep ids 1..=3; the cluster g becomes vertex 4.
        assert_eq!(red.dim(), 5);
        assert_eq!(map.expand_vertex(4), &[4, 5, 6]);
        assert_eq!(red.demand(4), 8.0); // 4 + 2 + 2
        assert_eq!(red.length(4), 4.0); // d(d,e) + d(e,f), zero lengths

        // Incoming distances come from d's column.
        assert_eq!(red.dist(0, 4), 3.0);
        assert_eq!(red.dist(1, 4), 5.0);
        assert_eq!(red.dist(2, 4), 4.0);
        assert_eq!(red.dist(3, 4), 3.0);
        // Outgoing distances come from f's row.
        assert_eq!(red.dist(4, 0), 1.0);
        assert_eq!(red.dist(4, 1), 2.0);
        assert_eq!(red.dist(4, 2), 2.0);
        assert_eq!(red.dist(4, 3), 4.0);

        // Survivor distances carry over untouched.
        assert_eq!(red.dist(1, 2), 4.0);
        assert_eq!(red.dist(3, 1), 5.0);
        assert_eq!(red.dist(0, 3), 8.0);
    }

    #[test]
    fn reduced_route_through_cluster_costs_the_same_as_its_expansion() {
        let inst = fig_example();
        let (red, map) = reduce_instance(&inst, &[(vec![4, 5, 6], 0)]).unwrap();
        let reduced = Solution::new(&red, vec![Route::new(0, vec![1, 4, 3])]).unwrap();
        let expanded = expand_solution(&inst, &reduced, &map).unwrap();
        assert_eq!(expanded.routes[0].customers, vec![1, 4, 5, 6, 3]);
        assert!((expanded.cost - reduced.cost).abs() < 1e-12);
        // Independent arithmetic on the original instance:
        // 10 + (6 + 5 + 2 + 2 + 4 + 8) = 37.
        assert!((reduced.cost - 37.0).abs() < 1e-12);
    }

    #[test]
    fn size_formula_holds() {
        let inst = fig_example();
        let segs = vec![(vec![4, 5], 0), (vec![1, 2, 3], 0)];
        let (red, map) = reduce_instance(&inst, &segs).unwrap();
        // dim shrinks by sum of (len - 1) over contracted segments.
        assert_eq!(red.dim(), inst.dim() - 1 - 2);
        assert_eq!(map.num_clusters(), 2);
    }

    #[test]
    fn empty_segment_list_reproduces_the_instance() {
        let mut r = rng(3);
        let inst = synthetic::random_instance(&mut r, 9, 2, false);
        let (red, map) = reduce_instance(&inst, &[]).unwrap();
        assert_eq!(red.dim(), inst.dim());
        assert_eq!(map.num_clusters(), 0);
        for i in 0..inst.dim() {
            assert_eq!(red.demand(i), inst.demand(i));
            assert_eq!(red.length(i), inst.length(i));
            for j in 0..inst.dim() {
                assert_eq!(red.dist(i, j), inst.dist(i, j));
            }
        }
        let sol = synthetic::random_solution(&inst, &mut r);
        let expanded = expand_solution(&inst, &sol, &map).unwrap();
        assert_eq!(expanded.routes, sol.routes);
    }

    #[test]
    fn expansion_preserves_cost_on_random_instances() {
        let mut r = rng(17);
        for _ in 0..40 {
            // One generous vehicle type, so no segment is ever too heavy.
            let inst = synthetic::random_instance(&mut r, 14, 1, false);
            let segs = vec![(vec![2, 5, 9], 0), (vec![11, 3], 0), (vec![7, 8], 0)];
            let (red, map) = reduce_instance(&inst, &segs).unwrap();
            let sol = synthetic::random_solution(&red, &mut r);
            let expanded = expand_solution(&inst, &sol, &map).unwrap();
            let recomputed = solution_cost(&inst, &expanded).unwrap();
            assert!((expanded.cost - sol.cost).abs() <= 1e-9 * sol.cost.max(1.0));
            assert!((recomputed - sol.cost).abs() <= 1e-9 * sol.cost.max(1.0));
            assert!(check_feasibility(&inst, &expanded).is_feasible());
        }
    }

    #[test]
    fn overlapping_segments_are_rejected() {
        let inst = fig_example();
        let err = reduce_instance(&inst, &[(vec![1, 2], 0), (vec![2, 3], 0)]).unwrap_err();
        assert!(matches!(err, ReduceError::OverlappingSegments(2)));
        let err = reduce_instance(&inst, &[(vec![0, 1], 0)]).unwrap_err();
        assert!(matches!(err, ReduceError::InvalidSegmentVertex(0)));
    }

    #[test]
    fn overweight_segments_fall_back_to_individual_customers() {
        let inst = fig_example(); // capacity 20
        let segs = vec![(vec![1, 3, 4], 0), (vec![5, 6], 0)];
        // make the first segment too heavy by shrinking the fleet
        let mut small = inst.clone();
        small.fleet = vec![VehicleType::unlimited(11.0, 10.0, 1.0)];
        let (red, map) = reduce_instance(&small, &segs).unwrap();
        // only (5, 6) contracts: 7 vertices -> 6
        assert_eq!(red.dim(), 6);
        assert_eq!(map.num_clusters(), 1);
        assert_eq!(map.expand_vertex(5), &[5, 6]);
    }

    #[test]
    fn generation_cycle_produces_feasible_solutions_deterministically() {
        let mut r = rng(5);
        let inst = synthetic::random_instance(&mut r, 12, 1, false);
        let segs = vec![(vec![3, 7], 0), (vec![10, 1, 4], 0)];
        let params = IlsParams::default();

        let a = minereduce_generation(&inst, &segs, &params, false, &mut rng(42)).unwrap();
        let b = minereduce_generation(&inst, &segs, &params, false, &mut rng(42)).unwrap();
        assert_eq!(a.routes, b.routes);
        assert!(check_feasibility(&inst, &a).is_feasible());

        let full = minereduce_generation(&inst, &segs, &params, true, &mut rng(42)).unwrap();
        assert!(check_feasibility(&inst, &full).is_feasible());
        assert!(full.cost <= a.cost + crate::IMPROVE_EPS);
    }
}
