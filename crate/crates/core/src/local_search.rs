//! ILS with randomized variable neighborhood descent.
//!
//! All move evaluations use directed distances, so the search behaves
//! correctly on asymmetric instances (every reduced instance is asymmetric
//! around its cluster vertices). Moves are evaluated through incremental
//! deltas; applied moves are verified against a full recomputation in debug
//! builds.
//!
//! After every move, each affected route is re-assigned the cheapest vehicle
//! type that can carry its load, respecting fleet counts.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use crate::model::{check_feasibility, Instance, Route, Solution, DEPOT};
use crate::IMPROVE_EPS;

/// The move repertoire. Inter-route: shift one or two consecutive customers,
/// swap blocks of 1x1, 2x1 and 2x2, and tail exchange (cross). Intra-route:
/// 2-opt, or-opt for blocks of 1..=3, and position exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Neighborhood {
    ShiftOne,
    ShiftTwo,
    SwapOneOne,
    SwapTwoOne,
    SwapTwoTwo,
    Cross,
    TwoOpt,
    OrOptOne,
    OrOptTwo,
    OrOptThree,
    Exchange,
}

impl Neighborhood {
    pub const ALL: [Neighborhood; 11] = [
        Neighborhood::ShiftOne,
        Neighborhood::ShiftTwo,
        Neighborhood::SwapOneOne,
        Neighborhood::SwapTwoOne,
        Neighborhood::SwapTwoTwo,
        Neighborhood::Cross,
        Neighborhood::TwoOpt,
        Neighborhood::OrOptOne,
        Neighborhood::OrOptTwo,
        Neighborhood::OrOptThree,
        Neighborhood::Exchange,
    ];
}

/// ILS configuration. The stop rule allows `n + beta * v` consecutive
/// non-improving perturbations, where `n` is the customer count of the
/// instance being searched and `v` the route count of the starting solution.
#[derive(Debug, Clone)]
pub struct IlsParams {
    pub beta: u32,
    pub neighborhoods: Vec<Neighborhood>,
}

impl Default for IlsParams {
    fn default() -> Self {
        IlsParams { beta: 5, neighborhoods: Neighborhood::ALL.to_vec() }
    }
}

/// `MaxIterILS = n + beta * v`.
pub fn max_iter_ils(n: usize, v: usize, beta: u32) -> usize {
    n + beta as usize * v
}

struct WRoute {
    vehicle: usize,
    customers: Vec<usize>,
    load: f64,
    /// Traversed arc distances (depot included) plus vertex lengths.
    sum: f64,
    cost: f64,
}

struct Working<'a> {
    inst: &'a Instance,
    routes: Vec<WRoute>,
    used: Vec<u32>,
    scratch: Vec<u32>,
}

fn seq_sum(inst: &Instance, customers: &[usize]) -> f64 {
    let mut sum = 0.0;
    let mut prev = DEPOT;
    for &c in customers {
        sum += inst.dist(prev, c) + inst.length(c);
        prev = c;
    }
    sum + inst.dist(prev, DEPOT)
}

/// Arc distances within a block plus the lengths of its customers.
fn block_inner(inst: &Instance, block: &[usize]) -> f64 {
    let mut sum = 0.0;
    for w in block.windows(2) {
        sum += inst.dist(w[0], w[1]);
    }
    for &c in block {
        sum += inst.length(c);
    }
    sum
}

impl<'a> Working<'a> {
    fn from_solution(inst: &'a Instance, solution: &Solution) -> Self {
        let mut used = vec![0u32; inst.fleet.len()];
        let routes = solution
            .routes
            .iter()
            .map(|r| {
                used[r.vehicle] += 1;
                let load = r.customers.iter().map(|&c| inst.demand(c)).sum();
                let sum = seq_sum(inst, &r.customers);
                let vt = &inst.fleet[r.vehicle];
                WRoute {
                    vehicle: r.vehicle,
                    customers: r.customers.clone(),
                    load,
                    sum,
                    cost: vt.fixed_cost + vt.unit_cost * sum,
                }
            })
            .collect();
        let scratch = used.clone();
        Working { inst, routes, used, scratch }
    }

    fn into_solution(self) -> Solution {
        let cost = self.routes.iter().map(|r| r.cost).sum();
        Solution {
            routes: self
                .routes
                .into_iter()
                .map(|r| Route::new(r.vehicle, r.customers))
                .collect(),
            cost,
        }
    }

    fn cheapest_type(&self, used: &[u32], load: f64, sum: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (u, vt) in self.inst.fleet.iter().enumerate() {
            if vt.capacity < load || used[u] >= vt.count.unwrap_or(u32::MAX) {
                continue;
            }
            let cost = vt.fixed_cost + vt.unit_cost * sum;
            if best.is_none_or(|(_, b)| cost < b) {
                best = Some((u, cost));
            }
        }
        best
    }

    /// Best achievable costs for one or two routes with modified contents.
    /// Both routes' current vehicles are released, then types are assigned
    /// greedily in argument order. An empty new route costs nothing.
    fn eval_routes(
        &mut self,
        changes: &[(usize, f64, f64, bool)], // (route, new_load, new_sum, becomes_empty)
    ) -> Option<(Vec<Option<usize>>, f64)> {
        self.scratch.copy_from_slice(&self.used);
        for &(ri, _, _, _) in changes {
            self.scratch[self.routes[ri].vehicle] -= 1;
        }
        let mut vehicles = Vec::with_capacity(changes.len());
        let mut delta = 0.0;
        for &(ri, load, sum, empty) in changes {
            if empty {
                vehicles.push(None);
                delta -= self.routes[ri].cost;
                continue;
            }
            let (u, cost) = self.cheapest_type(&self.scratch, load, sum)?;
            self.scratch[u] += 1;
            vehicles.push(Some(u));
            delta += cost - self.routes[ri].cost;
        }
        Some((vehicles, delta))
    }

    /// Installs new contents for a route; `vehicle` must come from
    /// [`Working::eval_routes`] so that fleet counts stay consistent.
    fn commit(&mut self, ri: usize, vehicle: usize, customers: Vec<usize>) {
        self.used[self.routes[ri].vehicle] -= 1;
        self.used[vehicle] += 1;
        let load = customers.iter().map(|&c| self.inst.demand(c)).sum();
        let sum = seq_sum(self.inst, &customers);
        let vt = &self.inst.fleet[vehicle];
        self.routes[ri] = WRoute {
            vehicle,
            customers,
            load,
            sum,
            cost: vt.fixed_cost + vt.unit_cost * sum,
        };
    }

    fn remove_route(&mut self, ri: usize) {
        self.used[self.routes[ri].vehicle] -= 1;
        self.routes.remove(ri);
    }

    /// Cost change of shrinking route `ri` to `(load, sum)` while opening a
    /// fresh route with `(new_load, new_sum)`. Returns the vehicle types for
    /// the shrunk and the new route, and the total delta.
    fn eval_split(
        &mut self,
        ri: usize,
        load: f64,
        sum: f64,
        new_load: f64,
        new_sum: f64,
    ) -> Option<(usize, usize, f64)> {
        self.scratch.copy_from_slice(&self.used);
        self.scratch[self.routes[ri].vehicle] -= 1;
        let (u_a, cost_a) = self.cheapest_type(&self.scratch, load, sum)?;
        self.scratch[u_a] += 1;
        let (u_new, cost_new) = self.cheapest_type(&self.scratch, new_load, new_sum)?;
        Some((u_a, u_new, cost_a + cost_new - self.routes[ri].cost))
    }

    fn push_route(&mut self, vehicle: usize, customers: Vec<usize>) {
        self.used[vehicle] += 1;
        let load = customers.iter().map(|&c| self.inst.demand(c)).sum();
        let sum = seq_sum(self.inst, &customers);
        let vt = &self.inst.fleet[vehicle];
        self.routes.push(WRoute {
            vehicle,
            customers,
            load,
            sum,
            cost: vt.fixed_cost + vt.unit_cost * sum,
        });
    }

    #[cfg(debug_assertions)]
    fn verify(&self) {
        for r in &self.routes {
            let sum = seq_sum(self.inst, &r.customers);
            let vt = &self.inst.fleet[r.vehicle];
            let cost = vt.fixed_cost + vt.unit_cost * sum;
            debug_assert!(
                (cost - r.cost).abs() <= 1e-9 * cost.abs().max(1.0),
                "incremental cost drifted from full recomputation"
            );
            debug_assert!(r.load <= vt.capacity + 1e-9);
        }
    }

    #[cfg(not(debug_assertions))]
    fn verify(&self) {}

    /// Boundary neighbours of the block `[p, p+k)` in route `ri`.
    fn around(&self, ri: usize, p: usize, k: usize) -> (usize, usize) {
        let seq = &self.routes[ri].customers;
        let prev = if p == 0 { DEPOT } else { seq[p - 1] };
        let next = if p + k >= seq.len() { DEPOT } else { seq[p + k] };
        (prev, next)
    }

    /// Route sum after removing the block `[p, p+k)`.
    fn sum_without(&self, ri: usize, p: usize, k: usize) -> f64 {
        let seq = &self.routes[ri].customers;
        let (prev, next) = self.around(ri, p, k);
        let block = &seq[p..p + k];
        self.routes[ri].sum - self.inst.dist(prev, block[0])
            - block_inner(self.inst, block)
            - self.inst.dist(block[k - 1], next)
            + self.inst.dist(prev, next)
    }
}

// ---------------------------------------------------------------------------
// Neighborhood scans. Each returns true after applying the first improving
// move (scan order: route index, then position), or false if none improves.
// ---------------------------------------------------------------------------

fn scan_shift(w: &mut Working, k: usize) -> bool {
    for a in 0..w.routes.len() {
        if w.routes[a].customers.len() < k {
            continue;
        }
        for p in 0..=(w.routes[a].customers.len() - k) {
            let block: Vec<usize> = w.routes[a].customers[p..p + k].to_vec();
            let block_q: f64 = block.iter().map(|&c| w.inst.demand(c)).sum();
            let inner = block_inner(w.inst, &block);
            let a_sum = w.sum_without(a, p, k);
            let a_empty = w.routes[a].customers.len() == k;
            for b in 0..w.routes.len() {
                if b == a {
                    continue;
                }
                for q in 0..=w.routes[b].customers.len() {
                    let (u, v) = w.around(b, q, 0);
                    let b_sum = w.routes[b].sum + w.inst.dist(u, block[0]) + inner
                        + w.inst.dist(block[k - 1], v)
                        - w.inst.dist(u, v);
                    let changes = [
                        (a, w.routes[a].load - block_q, a_sum, a_empty),
                        (b, w.routes[b].load + block_q, b_sum, false),
                    ];
                    if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                        if delta < -IMPROVE_EPS {
                            let mut new_b = w.routes[b].customers.clone();
                            new_b.splice(q..q, block.iter().copied());
                            w.commit(b, vehicles[1].unwrap(), new_b);
                            if a_empty {
                                w.remove_route(a);
                            } else {
                                let mut new_a = w.routes[a].customers.clone();
                                new_a.drain(p..p + k);
                                w.commit(a, vehicles[0].unwrap(), new_a);
                            }
                            w.verify();
                            return true;
                        }
                    }
                }
            }
            // Moving the block into a fresh route pays off when a vehicle's
            // fixed cost is below the detour the block causes where it is.
            if !a_empty {
                let new_sum = w.inst.dist(DEPOT, block[0]) + inner
                    + w.inst.dist(block[k - 1], DEPOT);
                if let Some((ua, un, delta)) =
                    w.eval_split(a, w.routes[a].load - block_q, a_sum, block_q, new_sum)
                {
                    if delta < -IMPROVE_EPS {
                        let mut new_a = w.routes[a].customers.clone();
                        new_a.drain(p..p + k);
                        w.commit(a, ua, new_a);
                        w.push_route(un, block);
                        w.verify();
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scan_swap(w: &mut Working, ka: usize, kb: usize) -> bool {
    let symmetric = ka == kb;
    for a in 0..w.routes.len() {
        if w.routes[a].customers.len() < ka {
            continue;
        }
        let b_start = if symmetric { a + 1 } else { 0 };
        for b in b_start..w.routes.len() {
            if b == a || w.routes[b].customers.len() < kb {
                continue;
            }
            for p in 0..=(w.routes[a].customers.len() - ka) {
                let x: Vec<usize> = w.routes[a].customers[p..p + ka].to_vec();
                let xq: f64 = x.iter().map(|&c| w.inst.demand(c)).sum();
                let x_inner = block_inner(w.inst, &x);
                let (pa, na) = w.around(a, p, ka);
                for q in 0..=(w.routes[b].customers.len() - kb) {
                    let y: Vec<usize> = w.routes[b].customers[q..q + kb].to_vec();
                    let yq: f64 = y.iter().map(|&c| w.inst.demand(c)).sum();
                    let y_inner = block_inner(w.inst, &y);
                    let (pb, nb) = w.around(b, q, kb);

                    let a_sum = w.routes[a].sum
                        - w.inst.dist(pa, x[0]) - x_inner - w.inst.dist(x[ka - 1], na)
                        + w.inst.dist(pa, y[0]) + y_inner + w.inst.dist(y[kb - 1], na);
                    let b_sum = w.routes[b].sum
                        - w.inst.dist(pb, y[0]) - y_inner - w.inst.dist(y[kb - 1], nb)
                        + w.inst.dist(pb, x[0]) + x_inner + w.inst.dist(x[ka - 1], nb);
                    let changes = [
                        (a, w.routes[a].load - xq + yq, a_sum, false),
                        (b, w.routes[b].load - yq + xq, b_sum, false),
                    ];
                    if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                        if delta < -IMPROVE_EPS {
                            let mut new_a = w.routes[a].customers.clone();
                            new_a.splice(p..p + ka, y.iter().copied());
                            let mut new_b = w.routes[b].customers.clone();
                            new_b.splice(q..q + kb, x.iter().copied());
                            w.commit(a, vehicles[0].unwrap(), new_a);
                            w.commit(b, vehicles[1].unwrap(), new_b);
                            w.verify();
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn scan_cross(w: &mut Working) -> bool {
    for a in 0..w.routes.len() {
        for b in (a + 1)..w.routes.len() {
            for p in 0..=w.routes[a].customers.len() {
                for q in 0..=w.routes[b].customers.len() {
                    if p == w.routes[a].customers.len() && q == w.routes[b].customers.len() {
                        continue;
                    }
                    let mut new_a: Vec<usize> = w.routes[a].customers[..p].to_vec();
                    new_a.extend_from_slice(&w.routes[b].customers[q..]);
                    let mut new_b: Vec<usize> = w.routes[b].customers[..q].to_vec();
                    new_b.extend_from_slice(&w.routes[a].customers[p..]);
                    if new_a.is_empty() && new_b.is_empty() {
                        continue;
                    }
                    let a_load: f64 = new_a.iter().map(|&c| w.inst.demand(c)).sum();
                    let b_load: f64 = new_b.iter().map(|&c| w.inst.demand(c)).sum();
                    let a_sum = if new_a.is_empty() { 0.0 } else { seq_sum(w.inst, &new_a) };
                    let b_sum = if new_b.is_empty() { 0.0 } else { seq_sum(w.inst, &new_b) };
                    let changes = [
                        (a, a_load, a_sum, new_a.is_empty()),
                        (b, b_load, b_sum, new_b.is_empty()),
                    ];
                    if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                        if delta < -IMPROVE_EPS {
                            // Commit the non-empty routes, then drop empties
                            // (higher index first so indices stay valid).
                            if !new_b.is_empty() {
                                w.commit(b, vehicles[1].unwrap(), new_b);
                            }
                            if !new_a.is_empty() {
                                w.commit(a, vehicles[0].unwrap(), new_a);
                            }
                            if changes[1].3 {
                                w.remove_route(b);
                            }
                            if changes[0].3 {
                                w.remove_route(a);
                            }
                            w.verify();
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn scan_two_opt(w: &mut Working) -> bool {
    for ri in 0..w.routes.len() {
        let len = w.routes[ri].customers.len();
        for i in 0..len {
            for j in (i + 1)..len {
                let seq = &w.routes[ri].customers;
                let prev = if i == 0 { DEPOT } else { seq[i - 1] };
                let next = if j + 1 == len { DEPOT } else { seq[j + 1] };
                let mut removed = w.inst.dist(prev, seq[i]);
                let mut added = w.inst.dist(prev, seq[j]);
                for k in i..j {
                    removed += w.inst.dist(seq[k], seq[k + 1]);
                    added += w.inst.dist(seq[k + 1], seq[k]);
                }
                removed += w.inst.dist(seq[j], next);
                added += w.inst.dist(seq[i], next);
                let new_sum = w.routes[ri].sum - removed + added;
                let changes = [(ri, w.routes[ri].load, new_sum, false)];
                if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                    if delta < -IMPROVE_EPS {
                        let mut new_seq = w.routes[ri].customers.clone();
                        new_seq[i..=j].reverse();
                        w.commit(ri, vehicles[0].unwrap(), new_seq);
                        w.verify();
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scan_or_opt(w: &mut Working, k: usize) -> bool {
    for ri in 0..w.routes.len() {
        let len = w.routes[ri].customers.len();
        if len < k + 1 {
            continue;
        }
        for p in 0..=(len - k) {
            let block: Vec<usize> = w.routes[ri].customers[p..p + k].to_vec();
            let inner = block_inner(w.inst, &block);
            let removed_sum = w.sum_without(ri, p, k);
            let rest: Vec<usize> = w.routes[ri]
                .customers
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < p || *i >= p + k)
                .map(|(_, &c)| c)
                .collect();
            for q in 0..=rest.len() {
                if q == p {
                    continue; // same place, no-op
                }
                let u = if q == 0 { DEPOT } else { rest[q - 1] };
                let v = if q == rest.len() { DEPOT } else { rest[q] };
                let new_sum = removed_sum + w.inst.dist(u, block[0]) + inner
                    + w.inst.dist(block[k - 1], v)
                    - w.inst.dist(u, v);
                let changes = [(ri, w.routes[ri].load, new_sum, false)];
                if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                    if delta < -IMPROVE_EPS {
                        let mut new_seq = rest.clone();
                        new_seq.splice(q..q, block.iter().copied());
                        w.commit(ri, vehicles[0].unwrap(), new_seq);
                        w.verify();
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scan_exchange(w: &mut Working) -> bool {
    for ri in 0..w.routes.len() {
        let len = w.routes[ri].customers.len();
        for i in 0..len {
            for j in (i + 1)..len {
                let seq = &w.routes[ri].customers;
                let mut new_seq = seq.clone();
                new_seq.swap(i, j);
                let new_sum = seq_sum(w.inst, &new_seq);
                let changes = [(ri, w.routes[ri].load, new_sum, false)];
                if let Some((vehicles, delta)) = w.eval_routes(&changes) {
                    if delta < -IMPROVE_EPS {
                        w.commit(ri, vehicles[0].unwrap(), new_seq);
                        w.verify();
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scan(w: &mut Working, nb: Neighborhood) -> bool {
    match nb {
        Neighborhood::ShiftOne => scan_shift(w, 1),
        Neighborhood::ShiftTwo => scan_shift(w, 2),
        Neighborhood::SwapOneOne => scan_swap(w, 1, 1),
        Neighborhood::SwapTwoOne => scan_swap(w, 2, 1),
        Neighborhood::SwapTwoTwo => scan_swap(w, 2, 2),
        Neighborhood::Cross => scan_cross(w),
        Neighborhood::TwoOpt => scan_two_opt(w),
        Neighborhood::OrOptOne => scan_or_opt(w, 1),
        Neighborhood::OrOptTwo => scan_or_opt(w, 2),
        Neighborhood::OrOptThree => scan_or_opt(w, 3),
        Neighborhood::Exchange => scan_exchange(w),
    }
}

/// Randomized variable neighborhood descent: shuffles the enabled
/// neighborhoods, applies improving moves first-improvement, and re-shuffles
/// whenever one succeeds. The result is a local optimum with respect to
/// every enabled neighborhood.
pub fn rvnd_descent(
    instance: &Instance,
    solution: &Solution,
    params: &IlsParams,
    rng: &mut crate::Rng,
) -> Solution {
    let mut w = Working::from_solution(instance, solution);
    let mut order = params.neighborhoods.clone();
    order.shuffle(rng);
    let mut k = 0;
    while k < order.len() {
        if scan(&mut w, order[k]) {
            order.shuffle(rng);
            k = 0;
        } else {
            k += 1;
        }
    }
    let out = w.into_solution();
    debug_assert!(out.cost <= solution.cost + IMPROVE_EPS);
    debug_assert!(check_feasibility(instance, &out).is_feasible());
    out
}

fn double_bridge(seq: &[usize], rng: &mut crate::Rng) -> Vec<usize> {
    let len = seq.len();
    let mut cuts = [0usize; 3];
    loop {
        for c in cuts.iter_mut() {
            *c = rng.random_range(1..len);
        }
        cuts.sort_unstable();
        if cuts[0] < cuts[1] && cuts[1] < cuts[2] {
            break;
        }
    }
    let (i, j, k) = (cuts[0], cuts[1], cuts[2]);
    let mut out = Vec::with_capacity(len);
    out.extend_from_slice(&seq[..i]);
    out.extend_from_slice(&seq[j..k]);
    out.extend_from_slice(&seq[i..j]);
    out.extend_from_slice(&seq[k..]);
    out
}

fn perturb_double_bridge(w: &mut Working, rng: &mut crate::Rng) -> bool {
    let candidates: Vec<usize> = (0..w.routes.len())
        .filter(|&ri| w.routes[ri].customers.len() >= 4)
        .collect();
    let Some(&ri) = candidates.choose(rng) else {
        return false;
    };
    let new_seq = double_bridge(&w.routes[ri].customers, rng);
    let vehicle = w.routes[ri].vehicle;
    w.commit(ri, vehicle, new_seq);
    true
}

fn perturb_random_shifts(w: &mut Working, rng: &mut crate::Rng) -> bool {
    let mut moved = false;
    for _ in 0..2 {
        let mut options: Vec<(usize, usize, usize, usize)> = Vec::new(); // (a, p, b, q)
        for a in 0..w.routes.len() {
            for p in 0..w.routes[a].customers.len() {
                let c = w.routes[a].customers[p];
                let q_demand = w.inst.demand(c);
                for b in 0..w.routes.len() {
                    if b == a {
                        continue;
                    }
                    // Feasible under the target route's current vehicle; the
                    // commit below keeps the vehicle, so this is exact.
                    if w.routes[b].load + q_demand
                        <= w.inst.fleet[w.routes[b].vehicle].capacity
                    {
                        for q in 0..=w.routes[b].customers.len() {
                            options.push((a, p, b, q));
                        }
                    }
                }
                // Relocation into a fresh route, encoded as b = routes.len().
                if w.routes[a].customers.len() >= 2 {
                    let sum = seq_sum(w.inst, &[c]);
                    if w.cheapest_type(&w.used, q_demand, sum).is_some() {
                        options.push((a, p, w.routes.len(), 0));
                    }
                }
            }
        }
        let Some(&(a, p, b, q)) = options.choose(rng) else {
            continue;
        };
        let c = w.routes[a].customers[p];
        if b == w.routes.len() {
            let sum = seq_sum(w.inst, &[c]);
            let (u, _) = w
                .cheapest_type(&w.used, w.inst.demand(c), sum)
                .expect("checked when the option was generated");
            w.push_route(u, vec![c]);
            let mut new_a = w.routes[a].customers.clone();
            new_a.remove(p);
            let va = w.routes[a].vehicle;
            w.commit(a, va, new_a);
            moved = true;
            continue;
        }
        let mut new_b = w.routes[b].customers.clone();
        new_b.insert(q, c);
        let vb = w.routes[b].vehicle;
        w.commit(b, vb, new_b);
        if w.routes[a].customers.len() == 1 {
            w.remove_route(a);
        } else {
            let mut new_a = w.routes[a].customers.clone();
            new_a.remove(p);
            let va = w.routes[a].vehicle;
            w.commit(a, va, new_a);
        }
        moved = true;
    }
    moved
}

/// Diversification step: either a double-bridge on one random route or two
/// random feasible inter-route relocations, chosen uniformly. Falls back to
/// the intra-route variant when no feasible relocation exists. The output is
/// always feasible; its cost may be worse than the input's.
pub fn perturb(instance: &Instance, solution: &Solution, rng: &mut crate::Rng) -> Solution {
    let mut w = Working::from_solution(instance, solution);
    let applied = if rng.random_bool(0.5) {
        perturb_double_bridge(&mut w, rng) || perturb_random_shifts(&mut w, rng)
    } else {
        perturb_random_shifts(&mut w, rng) || perturb_double_bridge(&mut w, rng)
    };
    let _ = applied;
    w.verify();
    let out = w.into_solution();
    debug_assert!(check_feasibility(instance, &out).is_feasible());
    out
}

/// Iterated local search: descend, then repeatedly perturb the best solution
/// and descend again, accepting improvements. Stops after `MaxIterILS`
/// consecutive perturbations without improvement.
pub fn ils(
    instance: &Instance,
    start: &Solution,
    params: &IlsParams,
    rng: &mut crate::Rng,
) -> Solution {
    let mut best = rvnd_descent(instance, start, params, rng);
    let limit = max_iter_ils(instance.num_customers(), start.routes.len().max(1), params.beta);
    let mut without_improvement = 0;
    while without_improvement < limit {
        let candidate = perturb(instance, &best, rng);
        let candidate = rvnd_descent(instance, &candidate, params, rng);
        if candidate.cost < best.cost - IMPROVE_EPS {
            best = candidate;
            without_improvement = 0;
        } else {
            without_improvement += 1;
        }
    }
    debug_assert!(best.cost <= start.cost + IMPROVE_EPS);
    best
}
