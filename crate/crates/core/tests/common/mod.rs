#![allow(dead_code)]

use netquench::generate::erdos_renyi;
use netquench::{Graph, NodeParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random graph with random per-node parameters. About half the instances
/// draw `beta` below `1 / max_degree`, so unflagged nodes are common.
pub fn random_instance(n: usize, seed: u64) -> (Graph, NodeParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.random_range(0.05..0.6);
    let g = erdos_renyi(n, density, rng.random()).unwrap();
    let beta_cap = if rng.random_bool(0.5) {
        1.0 / g.max_degree().max(1) as f64
    } else {
        1.0
    };
    let params = NodeParams::new(
        (0..n).map(|_| rng.random_range(0.05..=1.0)).collect(),
        (0..n).map(|_| rng.random_range(0.0..=beta_cap)).collect(),
        (0..n).map(|_| rng.random_range(0.0..=1.0)).collect(),
    )
    .unwrap();
    (g, params)
}

pub fn random_state(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..n).map(|_| rng.random_range(0.0..=1.0)).collect()
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}

/// One step of `x -> Hx` on `ln x`, so long runs neither overflow nor
/// lose small components.
pub fn log_bound_step(g: &Graph, params: &NodeParams, ln_x: &[f64]) -> Vec<f64> {
    (0..g.order())
        .map(|i| {
            let own = (1.0 - params.mu()[i]).ln() + ln_x[i];
            let spread = params.transmission(i).ln();
            log_sum_exp(
                std::iter::once(own).chain(g.neighbors(i).iter().map(|&j| spread + ln_x[j])),
            )
        })
        .collect()
}

/// `p <= x` up to rounding, with `x` given as `ln x`.
pub fn dominated(p: f64, ln_x: f64) -> bool {
    if ln_x > 700.0 {
        return true;
    }
    p <= ln_x.exp() * (1.0 + 1e-12) + 1e-15
}
