//! Elite-set memory and frequent-pattern machinery.
//!
//! Solutions are encoded as transactions: sets of (arc, vehicle-type) items,
//! one item per traversed arc (depot arcs included). Once the elite set is
//! stable, the maximal frequent itemsets of its transactions are mined and
//! turned into route segments for seeding or instance reduction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::model::{Solution, DEPOT};

#[derive(Debug, Error, PartialEq)]
pub enum MiningError {
    #[error("minimum support must be in (0, 1], got {0}")]
    InvalidMinSup(f64),
    #[error("at least one transaction is required")]
    NoTransactions,
    #[error("next_pattern called on an empty pattern list")]
    EmptyPatternList,
    #[error("malformed pattern: customer {0} has in- or out-degree above 1, or lies on a cycle")]
    MalformedPattern(usize),
    #[error("malformed pattern: segment mixes vehicle types at customer {0}")]
    MixedVehicleTypes(usize),
}

/// One transaction item: a directed arc plus the vehicle type riding it.
/// The derived ordering (arc lexicographic, then vehicle) is the canonical
/// item order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item {
    pub from: usize,
    pub to: usize,
    pub vehicle: usize,
}

impl Item {
    pub fn new(from: usize, to: usize, vehicle: usize) -> Self {
        debug_assert_ne!(from, to);
        Item { from, to, vehicle }
    }

    pub fn touches_depot(&self) -> bool {
        self.from == DEPOT || self.to == DEPOT
    }
}

/// Decomposes a solution into its arc-set encoding: for every route, one
/// item per traversed arc (depot-incident arcs included), tagged with the
/// route's vehicle type.
pub fn encode_transaction(solution: &Solution) -> BTreeSet<Item> {
    let mut items = BTreeSet::new();
    for route in &solution.routes {
        let mut prev = DEPOT;
        for &c in &route.customers {
            items.insert(Item::new(prev, c, route.vehicle));
            prev = c;
        }
        items.insert(Item::new(prev, DEPOT, route.vehicle));
    }
    items
}

/// Bounded pool of the best distinct solutions found so far, with the
/// bookkeeping needed for the stability rule that triggers mining.
#[derive(Debug, Clone)]
pub struct EliteSet {
    capacity: usize,
    members: Vec<(Solution, BTreeSet<Item>)>,
    last_change_iter: usize,
    has_mined: bool,
    modified_since_mine: bool,
}

impl EliteSet {
    pub fn new(capacity: usize) -> Self {
        EliteSet {
            capacity,
            members: Vec::new(),
            last_change_iter: 0,
            has_mined: false,
            modified_since_mine: false,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = &Solution> {
        self.members.iter().map(|(s, _)| s)
    }

    pub fn transactions(&self) -> Vec<BTreeSet<Item>> {
        self.members.iter().map(|(_, t)| t.clone()).collect()
    }

    pub fn worst_cost(&self) -> Option<f64> {
        self.members.last().map(|(s, _)| s.cost)
    }

    /// Inserts `candidate` if there is room or it beats the worst member,
    /// provided its transaction set differs from every member's. Returns
    /// whether the set changed; `iter` stamps the change.
    pub fn update(&mut self, candidate: &Solution, iter: usize) -> bool {
        let transaction = encode_transaction(candidate);
        if self.members.iter().any(|(_, t)| *t == transaction) {
            return false;
        }
        if self.members.len() >= self.capacity {
            match self.worst_cost() {
                Some(worst) if candidate.cost < worst => {
                    self.members.pop();
                }
                _ => return false,
            }
        }
        let at = self
            .members
            .partition_point(|(s, _)| s.cost <= candidate.cost);
        self.members.insert(at, (candidate.clone(), transaction));
        self.last_change_iter = iter;
        self.modified_since_mine = true;
        true
    }

    /// The two-case stability rule. Before the first mining the set is
    /// stable once it has gone unmodified for `delta` iterations; after a
    /// mining it additionally must have been modified since that mining.
    /// Sets with fewer than two members are never considered stable.
    pub fn is_stable(&self, delta: usize, current_iter: usize) -> bool {
        if self.members.len() < 2 {
            return false;
        }
        let quiet = current_iter > self.last_change_iter + delta;
        if self.has_mined {
            self.modified_since_mine && quiet
        } else {
            quiet
        }
    }

    /// Records that the data mining procedure ran on the current content.
    pub fn mark_mined(&mut self) {
        self.has_mined = true;
        self.modified_since_mine = false;
    }
}

fn popcount(blocks: &[u64]) -> u32 {
    blocks.iter().map(|b| b.count_ones()).sum()
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Mines exactly the maximal frequent itemsets of `transactions` at the
/// support threshold `ceil(min_sup * |transactions|)`.
///
/// Uses the identity that every maximal frequent itemset is the intersection
/// of some `k` transactions (k = the support threshold): all such
/// intersections are enumerated over bitsets, deduplicated, and filtered for
/// maximality. Exact and deterministic; practical because the elite set is
/// small (tens of transactions at most).
pub fn mine_maximal_frequent<T: Ord + Clone>(
    transactions: &[BTreeSet<T>],
    min_sup: f64,
) -> Result<Vec<(BTreeSet<T>, usize)>, MiningError> {
    if transactions.is_empty() {
        return Err(MiningError::NoTransactions);
    }
    if !(min_sup > 0.0 && min_sup <= 1.0) {
        return Err(MiningError::InvalidMinSup(min_sup));
    }
    let t = transactions.len();
    let threshold = ((min_sup * t as f64).ceil() as usize).max(1);
    if threshold > t {
        return Ok(Vec::new());
    }

    // Canonical item ids via an ordered universe.
    let universe: Vec<&T> = {
        let mut set = BTreeSet::new();
        for tr in transactions {
            set.extend(tr.iter());
        }
        set.into_iter().collect()
    };
    let ids: BTreeMap<&T, usize> = universe.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let blocks = universe.len().div_ceil(64);
    let bitsets: Vec<Vec<u64>> = transactions
        .iter()
        .map(|tr| {
            let mut bits = vec![0u64; blocks];
            for item in tr {
                let id = ids[item];
                bits[id / 64] |= 1 << (id % 64);
            }
            bits
        })
        .collect();

    // All intersections of `threshold` transactions, deduplicated.
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut stack: Vec<usize> = Vec::with_capacity(threshold);
    collect_intersections(&bitsets, threshold, 0, &mut stack, &mut seen, None);

    // Keep the maximal ones (largest first so a linear subsumption check works).
    let mut candidates: Vec<Vec<u64>> = seen.into_iter().filter(|b| popcount(b) > 0).collect();
    candidates.sort_by(|a, b| popcount(b).cmp(&popcount(a)).then_with(|| a.cmp(b)));
    let mut maximal: Vec<Vec<u64>> = Vec::new();
    for cand in candidates {
        if !maximal.iter().any(|m| is_subset(&cand, m)) {
            maximal.push(cand);
        }
    }

    let mut out: Vec<(BTreeSet<T>, usize)> = maximal
        .into_iter()
        .map(|bits| {
            let itemset: BTreeSet<T> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| bits[i / 64] >> (i % 64) & 1 == 1)
                .map(|(_, item)| (*item).clone())
                .collect();
            let support = bitsets.iter().filter(|tr| is_subset(&bits, tr)).count();
            (itemset, support)
        })
        .collect();
    out.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn collect_intersections(
    bitsets: &[Vec<u64>],
    k: usize,
    from: usize,
    stack: &mut Vec<usize>,
    seen: &mut HashSet<Vec<u64>>,
    partial: Option<Vec<u64>>,
) {
    if stack.len() == k {
        if let Some(bits) = partial {
            seen.insert(bits);
        }
        return;
    }
    let remaining = k - stack.len();
    for i in from..=(bitsets.len() - remaining) {
        let next = match &partial {
            None => bitsets[i].clone(),
            Some(bits) => bits.iter().zip(&bitsets[i]).map(|(a, b)| a & b).collect(),
        };
        // Pruning: an empty partial intersection stays empty.
        if popcount(&next) == 0 && remaining > 1 {
            continue;
        }
        stack.push(i);
        collect_intersections(bitsets, k, i + 1, stack, seen, Some(next));
        stack.pop();
    }
}

/// A mined pattern: its items, their support, and the route segments they
/// assemble into (possibly none, when all items are depot-incident arcs).
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub items: BTreeSet<Item>,
    pub support: usize,
    pub segments: Vec<(Vec<usize>, usize)>,
}

/// Circular list of patterns, largest first, with a rotating cursor.
#[derive(Debug, Clone, Default)]
pub struct PatternList {
    patterns: Vec<Pattern>,
    cursor: usize,
}

impl PatternList {
    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Returns the pattern at the cursor and advances cyclically. The index
    /// identifies the pattern within this list (0 = largest).
    pub fn next_pattern(&mut self) -> Result<(usize, &Pattern), MiningError> {
        if self.patterns.is_empty() {
            return Err(MiningError::EmptyPatternList);
        }
        let idx = self.cursor;
        self.cursor = (self.cursor + 1) % self.patterns.len();
        Ok((idx, &self.patterns[idx]))
    }
}

/// Keeps the `max_p` largest itemsets, ordered by item count descending
/// (ties broken by the canonical item order), assembled into patterns and
/// wrapped as a circular list with the cursor at the largest.
pub fn select_patterns(
    itemsets: Vec<(BTreeSet<Item>, usize)>,
    max_p: usize,
) -> Result<PatternList, MiningError> {
    let mut sorted = itemsets;
    sorted.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sorted.truncate(max_p);
    let patterns = sorted
        .into_iter()
        .map(|(items, support)| {
            let segments = assemble_segments(&items)?;
            Ok(Pattern { items, support, segments })
        })
        .collect::<Result<Vec<_>, MiningError>>()?;
    Ok(PatternList { patterns, cursor: 0 })
}

/// Chains the customer-to-customer arcs of an itemset head-to-tail into
/// vertex-disjoint directed paths. Depot-incident arcs are excluded from
/// merging; only paths of two or more customers become segments.
///
/// For itemsets that actually occur in encoded solutions the customer arc
/// set always has per-vertex in/out degree at most 1 and no cycles; inputs
/// violating that are rejected as malformed.
pub fn assemble_segments(
    items: &BTreeSet<Item>,
) -> Result<Vec<(Vec<usize>, usize)>, MiningError> {
    let mut out_arc: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut in_deg: HashMap<usize, usize> = HashMap::new();
    for item in items {
        if item.touches_depot() {
            continue;
        }
        if out_arc.insert(item.from, (item.to, item.vehicle)).is_some() {
            return Err(MiningError::MalformedPattern(item.from));
        }
        let d = in_deg.entry(item.to).or_insert(0);
        *d += 1;
        if *d > 1 {
            return Err(MiningError::MalformedPattern(item.to));
        }
    }

    let mut segments = Vec::new();
    let mut visited: HashSet<usize> = HashSet::new();
    for (&head, &(_, vehicle)) in &out_arc {
        if in_deg.contains_key(&head) {
            continue; // not a chain head
        }
        let mut path = vec![head];
        let mut cur = head;
        while let Some(&(next, v)) = out_arc.get(&cur) {
            if v != vehicle {
                return Err(MiningError::MixedVehicleTypes(cur));
            }
            path.push(next);
            visited.insert(cur);
            cur = next;
        }
        visited.insert(cur);
        segments.push((path, vehicle));
    }

    // Any arc source not reached from a head lies on a cycle.
    if let Some(&v) = out_arc.keys().find(|v| !visited.contains(v)) {
        return Err(MiningError::MalformedPattern(v));
    }
    Ok(segments)
}

/// Mines the elite set's transactions and selects the pattern list. Pure
/// with respect to the elite set; callers record the mining event via
/// [`EliteSet::mark_mined`].
pub fn mine_elite(
    elite: &EliteSet,
    max_p: usize,
    min_sup: f64,
) -> Result<PatternList, MiningError> {
    let transactions = elite.transactions();
    let itemsets = mine_maximal_frequent(&transactions, min_sup)?;
    select_patterns(itemsets, max_p)
}

/// Line-oriented debug dump: one transaction per line, items as `i>j@u`
/// tokens separated by spaces.
pub fn dump_transactions(transactions: &[BTreeSet<Item>]) -> String {
    transactions
        .iter()
        .map(|tr| {
            tr.iter()
                .map(|it| format!("{}>{}@{}", it.from, it.to, it.vehicle))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Same token format for mined patterns, one pattern per line prefixed with
/// its support.
pub fn dump_patterns(patterns: &[Pattern]) -> String {
    patterns
        .iter()
        .map(|p| {
            let items = p
                .items
                .iter()
                .map(|it| format!("{}>{}@{}", it.from, it.to, it.vehicle))
                .collect::<Vec<_>>()
                .join(" ");
            format!("{} {}", p.support, items)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Route, Solution};
    use crate::synthetic;
    use rand::Rng as _;
    use rand::SeedableRng;

    fn rng(seed: u64) -> crate::Rng {
        crate::Rng::seed_from_u64(seed)
    }

    fn sol_with_cost(routes: Vec<Route>, cost: f64) -> Solution {
        Solution { routes, cost }
    }

    #[test]
    fn encode_single_route() {
        let sol = sol_with_cost(vec![Route::new(1, vec![4, 5, 6])], 0.0);
        let items = encode_transaction(&sol);
        let expected: BTreeSet<Item> = [
            Item::new(0, 4, 1),
            Item::new(4, 5, 1),
            Item::new(5, 6, 1),
            Item::new(6, 0, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(items, expected);
    }

    #[test]
    fn encode_distinguishes_vehicle_types() {
        let a = encode_transaction(&sol_with_cost(vec![Route::new(0, vec![1, 2])], 0.0));
        let b = encode_transaction(&sol_with_cost(vec![Route::new(1, vec![1, 2])], 0.0));
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn encode_item_count_matches_route_sizes() {
        let mut r = rng(8);
        let inst = synthetic::random_instance(&mut r, 12, 2, true);
        let sol = synthetic::random_solution(&inst, &mut r);
        let expected: usize = sol.routes.iter().map(|route| route.customers.len() + 1).sum();
        assert_eq!(encode_transaction(&sol).len(), expected);
    }

    #[test]
    fn elite_insert_reject_evict() {
        let mut elite = EliteSet::new(2);
        let s1 = sol_with_cost(vec![Route::new(0, vec![1, 2])], 10.0);
        assert!(elite.update(&s1, 1));

        // identical transaction set: rejected
        let s1b = sol_with_cost(vec![Route::new(0, vec![1, 2])], 9.0);
        assert!(!elite.update(&s1b, 2));
        assert_eq!(elite.len(), 1);

        let s2 = sol_with_cost(vec![Route::new(0, vec![2, 1])], 12.0);
        assert!(elite.update(&s2, 3));
        assert_eq!(elite.worst_cost(), Some(12.0));

        // full: worse candidate rejected
        let s3 = sol_with_cost(vec![Route::new(1, vec![1, 2])], 15.0);
        assert!(!elite.update(&s3, 4));

        // full: better candidate evicts the worst
        let s4 = sol_with_cost(vec![Route::new(1, vec![2, 1])], 5.0);
        assert!(elite.update(&s4, 5));
        assert_eq!(elite.len(), 2);
        assert_eq!(elite.worst_cost(), Some(10.0));
    }

    #[test]
    fn elite_capacity_and_distinctness_hold_under_streams() {
        let mut r = rng(13);
        let inst = synthetic::random_instance(&mut r, 8, 2, true);
        let mut elite = EliteSet::new(3);
        for iter in 0..200 {
            let sol = synthetic::random_solution(&inst, &mut r);
            elite.update(&sol, iter);
            assert!(elite.len() <= 3);
            let txs = elite.transactions();
            for i in 0..txs.len() {
                for j in i + 1..txs.len() {
                    assert_ne!(txs[i], txs[j]);
                }
            }
            let costs: Vec<f64> = elite.members().map(|s| s.cost).collect();
            assert!(costs.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    fn two_member_elite() -> EliteSet {
        let mut elite = EliteSet::new(10);
        elite.update(&sol_with_cost(vec![Route::new(0, vec![1])], 1.0), 0);
        elite.update(&sol_with_cost(vec![Route::new(0, vec![2])], 2.0), 0);
        elite
    }

    #[test]
    fn stability_before_first_mining() {
        let elite = two_member_elite(); // last change at iter 0
        assert!(!elite.is_stable(3, 3));
        assert!(elite.is_stable(3, 4));
    }

    #[test]
    fn stability_requires_change_after_mining() {
        let mut elite = two_member_elite();
        elite.mark_mined();
        assert!(!elite.is_stable(3, 100));

        // a change after mining re-arms the rule
        elite.update(&sol_with_cost(vec![Route::new(0, vec![3])], 3.0), 10);
        assert!(!elite.is_stable(3, 13));
        assert!(elite.is_stable(3, 14));
    }

    #[test]
    fn undersized_elite_never_stable() {
        let mut elite = EliteSet::new(10);
        elite.update(&sol_with_cost(vec![Route::new(0, vec![1])], 1.0), 0);
        assert!(!elite.is_stable(1, 100));
    }

    fn tx(items: &[u32]) -> BTreeSet<u32> {
        items.iter().copied().collect()
    }

    #[test]
    fn miner_single_transaction() {
        let result = mine_maximal_frequent(&[tx(&[1, 2, 3])], 1.0).unwrap();
        assert_eq!(result, vec![(tx(&[1, 2, 3]), 1)]);
    }

    #[test]
    fn miner_three_transactions() {
        let db = [tx(&[1, 2, 3]), tx(&[1, 2]), tx(&[2, 3])];
        let result = mine_maximal_frequent(&db, 2.0 / 3.0).unwrap();
        assert_eq!(result, vec![(tx(&[1, 2]), 2), (tx(&[2, 3]), 2)]);
    }

    #[test]
    fn miner_threshold_above_everything() {
        let db = [tx(&[1]), tx(&[2]), tx(&[3])];
        assert!(mine_maximal_frequent(&db, 1.0).unwrap().is_empty());
    }

    #[test]
    fn miner_rejects_bad_inputs() {
        assert_eq!(
            mine_maximal_frequent::<u32>(&[], 0.5).unwrap_err(),
            MiningError::NoTransactions
        );
        assert_eq!(
            mine_maximal_frequent(&[tx(&[1])], 0.0).unwrap_err(),
            MiningError::InvalidMinSup(0.0)
        );
    }

    /// Brute force over all nonempty itemsets of a small universe.
    fn brute_force_maximal(db: &[BTreeSet<u32>], min_sup: f64) -> Vec<(BTreeSet<u32>, usize)> {
        let universe: Vec<u32> = {
            let mut s = BTreeSet::new();
            for t in db {
                s.extend(t.iter().copied());
            }
            s.into_iter().collect()
        };
        let threshold = ((min_sup * db.len() as f64).ceil() as usize).max(1);
        let mut frequent: Vec<(BTreeSet<u32>, usize)> = Vec::new();
        for mask in 1u64..(1 << universe.len()) {
            let set: BTreeSet<u32> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let support = db.iter().filter(|t| set.is_subset(t)).count();
            if support >= threshold {
                frequent.push((set, support));
            }
        }
        let mut maximal: Vec<(BTreeSet<u32>, usize)> = frequent
            .iter()
            .filter(|(s, _)| {
                !frequent
                    .iter()
                    .any(|(other, _)| other.len() > s.len() && s.is_subset(other))
            })
            .cloned()
            .collect();
        maximal.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        maximal
    }

    #[test]
    fn miner_matches_brute_force_on_random_databases() {
        let mut r = rng(99);
        for case in 0..80 {
            let n_items = r.random_range(3..=10u32);
            let n_tx = r.random_range(1..=8usize);
            let db: Vec<BTreeSet<u32>> = (0..n_tx)
                .map(|_| (0..n_items).filter(|_| r.random_bool(0.5)).collect())
                .collect();
            let min_sup = r.random_range(1..=10) as f64 / 10.0;
            let got = mine_maximal_frequent(&db, min_sup).unwrap();
            let want = brute_force_maximal(&db, min_sup);
            assert_eq!(got, want, "case {case}: db={db:?} min_sup={min_sup}");
        }
    }

    fn item_set(arcs: &[(usize, usize, usize)]) -> BTreeSet<Item> {
        arcs.iter().map(|&(f, t, u)| Item::new(f, t, u)).collect()
    }

    #[test]
    fn select_orders_by_size_desc_and_wraps() {
        let sets = vec![
            (item_set(&[(1, 2, 0), (2, 3, 0), (3, 4, 0), (4, 5, 0), (5, 6, 0)]), 2),
            (item_set(&[(7, 8, 0), (8, 9, 0)]), 3),
            (
                item_set(&[
                    (10, 11, 0),
                    (11, 12, 0),
                    (12, 13, 0),
                    (13, 14, 0),
                    (14, 15, 0),
                    (15, 16, 0),
                    (16, 17, 0),
                ]),
                2,
            ),
        ];
        let mut list = select_patterns(sets, 2).unwrap();
        assert_eq!(list.len(), 2);
        let (i0, p0) = list.next_pattern().map(|(i, p)| (i, p.items.len())).unwrap();
        assert_eq!((i0, p0), (0, 7));
        let (i1, p1) = list.next_pattern().map(|(i, p)| (i, p.items.len())).unwrap();
        assert_eq!((i1, p1), (1, 5));
        // circular: wraps back to the largest
        let (i2, _) = list.next_pattern().unwrap();
        assert_eq!(i2, 0);
    }

    #[test]
    fn select_is_deterministic_on_ties() {
        let sets = vec![
            (item_set(&[(3, 4, 0), (4, 5, 0)]), 2),
            (item_set(&[(1, 2, 0), (2, 3, 0)]), 2),
        ];
        let a = select_patterns(sets.clone(), 5).unwrap();
        let b = select_patterns(sets, 5).unwrap();
        assert_eq!(a.patterns(), b.patterns());
        assert_eq!(a.patterns()[0].items, item_set(&[(1, 2, 0), (2, 3, 0)]));
    }

    #[test]
    fn next_pattern_on_empty_list_is_an_error() {
        let mut list = PatternList::default();
        assert_eq!(list.next_pattern().unwrap_err(), MiningError::EmptyPatternList);
    }

    #[test]
    fn assemble_chains_arcs() {
        let segs = assemble_segments(&item_set(&[(4, 5, 1), (5, 6, 1)])).unwrap();
        assert_eq!(segs, vec![(vec![4, 5, 6], 1)]);
    }

    #[test]
    fn assemble_excludes_depot_arcs() {
        let segs = assemble_segments(&item_set(&[(0, 4, 1)])).unwrap();
        assert!(segs.is_empty());
        // depot arcs around a customer chain do not join the segment
        let segs =
            assemble_segments(&item_set(&[(0, 4, 1), (4, 5, 1), (5, 6, 1), (6, 0, 1)])).unwrap();
        assert_eq!(segs, vec![(vec![4, 5, 6], 1)]);
    }

    #[test]
    fn assemble_two_disjoint_chains() {
        let segs =
            assemble_segments(&item_set(&[(7, 8, 0), (1, 2, 1), (2, 3, 1), (8, 9, 0)])).unwrap();
        assert_eq!(segs, vec![(vec![1, 2, 3], 1), (vec![7, 8, 9], 0)]);
    }

    #[test]
    fn assemble_rejects_branching_and_cycles() {
        assert!(matches!(
            assemble_segments(&item_set(&[(1, 2, 0), (1, 3, 0)])),
            Err(MiningError::MalformedPattern(1))
        ));
        assert!(matches!(
            assemble_segments(&item_set(&[(1, 2, 0), (3, 2, 0)])),
            Err(MiningError::MalformedPattern(2))
        ));
        assert!(matches!(
            assemble_segments(&item_set(&[(1, 2, 0), (2, 3, 0), (3, 1, 0)])),
            Err(MiningError::MalformedPattern(_))
        ));
    }

    #[test]
    fn mined_itemsets_always_assemble() {
        // Structural theorem: frequent itemsets over real transactions have
        // in/out degree <= 1 on customers and are acyclic.
        let mut r = rng(21);
        for _ in 0..30 {
            let inst = synthetic::random_instance(&mut r, 10, 2, true);
            let db: Vec<BTreeSet<Item>> = (0..5)
                .map(|_| encode_transaction(&synthetic::random_solution(&inst, &mut r)))
                .collect();
            let mined = mine_maximal_frequent(&db, 0.4).unwrap();
            for (items, _) in mined {
                assert!(assemble_segments(&items).is_ok());
            }
        }
    }

    #[test]
    fn transaction_dump_format() {
        let db = vec![item_set(&[(0, 4, 1), (4, 0, 1)])];
        assert_eq!(dump_transactions(&db), "0>4@1 4>0@1");
    }
}
