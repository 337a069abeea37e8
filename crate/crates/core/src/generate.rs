//! Deterministic graph generators.
//!
//! Every randomized generator draws from a fresh `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)`, so a given `(parameters, seed)` pair always yields
//! the same graph for this version of the crate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Restart budget for the pairing model.
pub const DEFAULT_RESTART_BUDGET: usize = 10_000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cycle on `n ≥ 3` vertices.
pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("ring needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("complete graph edges are valid")
}

/// Star `K_{1,leaves}` with the hub at vertex 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|j| (0, j))).expect("star edges are valid")
}

/// Uniform simple `r`-regular graph from the pairing (configuration) model.
///
/// Half-edges are shuffled and paired consecutively; any loop or repeated
/// pair discards the whole pairing.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    random_regular_with_budget(n, r, seed, DEFAULT_RESTART_BUDGET)
}

pub fn random_regular_with_budget(n: usize, r: usize, seed: u64, budget: usize) -> Result<Graph> {
    if !(n * r).is_multiple_of(2) {
        return Err(Error::Parity { n, degree: r });
    }
    if r >= n {
        return Err(invalid(format!("degree {r} must be below order {n}")));
    }
    let mut rng = rng(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    let mut adj = vec![Vec::with_capacity(r); n];

    'attempt: for _ in 0..budget {
        points.shuffle(&mut rng);
        adj.iter_mut().for_each(Vec::clear);
        for pair in points.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || adj[a].contains(&b) {
                continue 'attempt;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().filter(move |&&j| j > i).map(move |&j| (i, j)));
        return Graph::from_edges(n, edges);
    }
    Err(Error::GenerationFailed { attempts: budget })
}

/// Preferential attachment grown from the complete graph on `m0` vertices.
///
/// Each arriving vertex links to `m` distinct existing vertices, drawn one
/// at a time with probability proportional to current degree and redrawn on
/// repeats (sequential sampling without replacement). When every existing
/// vertex has degree zero (only possible for `m0 = 1`) the draw is uniform.
pub fn barabasi_albert(n: usize, m0: usize, m: usize, seed: u64) -> Result<Graph> {
    if !(1 <= m && m <= m0 && m0 <= n) {
        return Err(invalid(format!(
            "need 1 <= m <= m0 <= n, got m={m}, m0={m0}, n={n}"
        )));
    }
    if m0 == n {
        return Ok(complete(n));
    }
    let mut rng = rng(seed);
    let mut edges: Vec<(usize, usize)> = (0..m0)
        .flat_map(|i| (i + 1..m0).map(move |j| (i, j)))
        .collect();
    // every edge contributes both endpoints, so a uniform pick is degree-weighted
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
    let mut chosen = Vec::with_capacity(m);

    for v in m0..n {
        chosen.clear();
        while chosen.len() < m {
            let t = if endpoints.is_empty() {
                rng.random_range(0..v)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Erdős–Rényi `G(n, p)`: each of the `n(n-1)/2` pairs independently.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}
