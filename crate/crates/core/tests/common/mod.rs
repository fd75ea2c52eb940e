#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symchaos_core::graph::{parse_graph, GraphSystem};
use symchaos_core::interval::UnitPoint;
use symchaos_core::Rational;

pub const SEED: u64 = 0x5eed_c4a0;

/// `count` rationals `p/q` with `q` uniform in `1..=max_den` and `p` in `0..=q`.
pub fn random_rationals(count: usize, max_den: u64, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = rng.gen_range(1..=max_den);
            let p = rng.gen_range(0..=q);
            Rational::from_u64_parts(p, q)
        })
        .collect()
}

pub fn random_points(count: usize, max_den: u64, seed: u64) -> Vec<UnitPoint> {
    random_rationals(count, max_den, seed)
        .into_iter()
        .map(|r| UnitPoint::new(r).unwrap())
        .collect()
}

/// `k/2^bits` for `k = 0..=2^bits`.
pub fn dyadic_grid(bits: u32) -> Vec<UnitPoint> {
    (0..=1u64 << bits)
        .map(|k| UnitPoint::new(Rational::from_u64_parts(k, 1 << bits)).unwrap())
        .collect()
}

pub fn graph_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("graphs")
        .join(format!("{name}.graph"))
}

pub fn bundled(name: &str) -> GraphSystem {
    let text = std::fs::read_to_string(graph_path(name)).unwrap();
    GraphSystem::new(parse_graph(&text).unwrap())
}
