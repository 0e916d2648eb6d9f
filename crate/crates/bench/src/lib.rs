//! Shared fixtures for the component benchmarks.

use minereduce::mining::{encode_transaction, Item};
use minereduce::{synthetic, Instance, Solution};
use rand::SeedableRng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> minereduce::Rng {
    minereduce::Rng::seed_from_u64(seed)
}

pub fn instance(n: usize) -> Instance {
    synthetic::random_instance(&mut rng(7), n, 3, true)
}

pub fn solutions(instance: &Instance, count: usize) -> Vec<Solution> {
    let mut r = rng(8);
    (0..count).map(|_| synthetic::random_solution(instance, &mut r)).collect()
}

pub fn transactions(instance: &Instance, count: usize) -> Vec<BTreeSet<Item>> {
    solutions(instance, count).iter().map(encode_transaction).collect()
}
