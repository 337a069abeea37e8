//! Discrete-time SIS dynamics on an undirected network.
//!
//! Node `i` recovers with probability `mu[i]`, and in each step contacts each
//! neighbor with probability `r[i]`; a contact with an infected neighbor
//! transmits with probability `beta[i]`. The exact map advances infection
//! probabilities; [`LinearBoundSystem`] is its linear upper bound
//! `x(t+1) = H x(t)` with `H = I - diag(mu) + diag(beta) diag(r) A`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graphs at least this large are stepped with per-node parallelism.
pub const PARALLEL_THRESHOLD: usize = 4096;

/// Default order above which [`LinearBoundSystem::dense`] refuses to build `H`.
pub const DEFAULT_DENSE_LIMIT: usize = 512;

/// Relative change in `max_i p_i` below which a step counts toward a plateau.
pub const PLATEAU_REL_CHANGE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeParams {
    mu: Vec<f64>,
    beta: Vec<f64>,
    r: Vec<f64>,
}

impl NodeParams {
    /// Validates `mu ∈ (0,1]`, `beta ∈ [0,1]`, `r ∈ [0,1]`, equal lengths.
    pub fn new(mu: Vec<f64>, beta: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if mu.len() != beta.len() || mu.len() != r.len() {
            return Err(Error::InvalidParams(format!(
                "length mismatch: mu {}, beta {}, r {}",
                mu.len(),
                beta.len(),
                r.len()
            )));
        }
        for (i, &m) in mu.iter().enumerate() {
            if !(m > 0.0 && m <= 1.0) {
                return Err(Error::InvalidParams(format!("mu[{i}] = {m} not in (0, 1]")));
            }
        }
        for (name, values) in [("beta", &beta), ("r", &r)] {
            for (i, &v) in values.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidParams(format!(
                        "{name}[{i}] = {v} not in [0, 1]"
                    )));
                }
            }
        }
        Ok(NodeParams { mu, beta, r })
    }

    pub fn homogeneous(n: usize, mu: f64, beta: f64, r: f64) -> Result<Self> {
        Self::new(vec![mu; n], vec![beta; n], vec![r; n])
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// Effective per-contact transmission `beta[i] * r[i]`.
    pub fn transmission(&self, i: usize) -> f64 {
        self.beta[i] * self.r[i]
    }

    /// Copy with a replaced infection vector; validated like [`NodeParams::new`].
    pub fn with_beta(&self, beta: Vec<f64>) -> Result<Self> {
        Self::new(self.mu.clone(), beta, self.r.clone())
    }

    /// Copy with every `beta` multiplied by `factor`.
    pub fn scale_beta(&self, factor: f64) -> Result<Self> {
        self.with_beta(self.beta.iter().map(|b| b * factor).collect())
    }

    pub(crate) fn check_order(&self, g: &Graph) -> Result<()> {
        if self.len() != g.order() {
            return Err(Error::InvalidParams(format!(
                "{} parameter rows for a graph of order {}",
                self.len(),
                g.order()
            )));
        }
        Ok(())
    }
}

/// Infection probabilities `p_i(t)`, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpidemicState(Vec<f64>);

impl EpidemicState {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = p
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::InvalidArgument(format!(
                "p[{i}] = {v} is not a probability"
            )));
        }
        Ok(EpidemicState(p))
    }

    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Zero everywhere except `node`.
    pub fn single(n: usize, node: usize, value: f64) -> Result<Self> {
        if node >= n {
            return Err(Error::VertexOutOfRange { vertex: node, n });
        }
        let mut p = vec![0.0; n];
        p[node] = value;
        Self::new(p)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Probability that `i` escapes infection from all neighbors this step:
/// `prod_{j in adj(i)} (1 - beta_i r_i p_j)`.
pub fn non_infection_probability(
    g: &Graph,
    params: &NodeParams,
    s: &EpidemicState,
    i: usize,
) -> f64 {
    let k = params.transmission(i);
    g.neighbors(i).iter().map(|&j| 1.0 - k * s.0[j]).product()
}

/// `1 - zeta_i`, evaluated as `-expm1(sum ln(1 - beta_i r_i p_j))` so that
/// small infection pressure is not lost to cancellation against 1.
pub fn infection_probability(g: &Graph, params: &NodeParams, s: &EpidemicState, i: usize) -> f64 {
    let k = params.transmission(i);
    let log_escape: f64 = g.neighbors(i).iter().map(|&j| (-k * s.0[j]).ln_1p()).sum();
    -log_escape.exp_m1()
}

fn per_node<F>(n: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

/// One synchronous step of the exact SIS map.
pub fn sis_step(g: &Graph, params: &NodeParams, s: &EpidemicState) -> EpidemicState {
    let p = &s.0;
    let next = per_node(g.order(), |i| {
        let infect = infection_probability(g, params, s, i);
        let v = (1.0 - params.mu[i]) * p[i] + infect * (1.0 - p[i]);
        v.clamp(0.0, 1.0)
    });
    EpidemicState(next)
}

/// Checks `1 - zeta_i <= sum_j a_ij beta_i r_i p_j` at every node.
pub fn verify_bound_inequality(g: &Graph, params: &NodeParams, s: &EpidemicState) -> bool {
    (0..g.order()).all(|i| {
        let lhs = 1.0 - non_infection_probability(g, params, s, i);
        let rhs: f64 = g
            .neighbors(i)
            .iter()
            .map(|&j| params.transmission(i) * s.0[j])
            .sum();
        // one ulp of slack per factor for rounding in the product
        lhs <= rhs + f64::EPSILON * (g.neighbors(i).len() as f64 + 1.0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Extinct,
    Endemic,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Extinct => "extinct",
            Verdict::Endemic => "endemic",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub max_steps: usize,
    pub extinct_tol: f64,
    pub endemic_window: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            max_steps: 10_000,
            extinct_tol: 1e-6,
            endemic_window: 200,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument(
                "max_steps must be at least 1".into(),
            ));
        }
        if !(self.extinct_tol > 0.0 && self.extinct_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "extinct_tol {} not in (0, 1)",
                self.extinct_tol
            )));
        }
        if self.endemic_window == 0 {
            return Err(Error::InvalidArgument(
                "endemic_window must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// `states[t]` for `t = 0..=steps_to_verdict`.
    pub states: Vec<EpidemicState>,
    pub verdict: Verdict,
    pub steps_to_verdict: usize,
}

impl Trajectory {
    pub fn final_state(&self) -> &EpidemicState {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }
}

/// Iterates [`sis_step`] until extinction, an endemic plateau, or `max_steps`.
///
/// Extinct: `max_i p_i < extinct_tol`. Endemic: `max_i p_i` stays at or above
/// the tolerance and its relative change is below [`PLATEAU_REL_CHANGE`] for
/// `endemic_window` consecutive steps.
pub fn simulate(
    g: &Graph,
    params: &NodeParams,
    p0: EpidemicState,
    config: &SimulationConfig,
) -> Result<Trajectory> {
    config.validate()?;
    params.check_order(g)?;
    if p0.len() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "initial state has {} entries for a graph of order {}",
            p0.len(),
            g.order()
        )));
    }

    let mut prev_max = p0.max();
    let mut states = vec![p0];
    if prev_max < config.extinct_tol {
        return Ok(Trajectory {
            states,
            verdict: Verdict::Extinct,
            steps_to_verdict: 0,
        });
    }

    let mut plateau = 0;
    for t in 1..=config.max_steps {
        let next = sis_step(g, params, states.last().unwrap());
        let max = next.max();
        states.push(next);
        if max < config.extinct_tol {
            return Ok(Trajectory {
                states,
                verdict: Verdict::Extinct,
                steps_to_verdict: t,
            });
        }
        if (max - prev_max).abs() < PLATEAU_REL_CHANGE * prev_max {
            plateau += 1;
        } else {
            plateau = 0;
        }
        if plateau >= config.endemic_window {
            return Ok(Trajectory {
                states,
                verdict: Verdict::Endemic,
                steps_to_verdict: t,
            });
        }
        prev_max = max;
    }
    Ok(Trajectory {
        states,
        verdict: Verdict::Undecided,
        steps_to_verdict: config.max_steps,
    })
}

/// The linear bound dynamics `x(t+1) = H x(t)`, with `H` kept implicit.
#[derive(Debug, Clone, Copy)]
pub struct LinearBoundSystem<'a> {
    graph: &'a Graph,
    params: &'a NodeParams,
    dense_limit: usize,
}

impl<'a> LinearBoundSystem<'a> {
    pub fn new(graph: &'a Graph, params: &'a NodeParams) -> Result<Self> {
        params.check_order(graph)?;
        Ok(LinearBoundSystem {
            graph,
            params,
            dense_limit: DEFAULT_DENSE_LIMIT,
        })
    }

    pub fn with_dense_limit(mut self, limit: usize) -> Self {
        self.dense_limit = limit;
        self
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn params(&self) -> &'a NodeParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// `H x` via adjacency lists.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let (g, p) = (self.graph, self.params);
        per_node(g.order(), |i| {
            let spread: f64 = g.neighbors(i).iter().map(|&j| x[j]).sum();
            (1.0 - p.mu[i]) * x[i] + p.transmission(i) * spread
        })
    }

    /// Largest Gerschgorin row sum `max_i (1 - mu_i + beta_i r_i deg_i)`,
    /// an upper bound on the spectral radius of `H`.
    pub fn gerschgorin_bound(&self) -> f64 {
        (0..self.order())
            .map(|i| {
                1.0 - self.params.mu[i]
                    + self.params.transmission(i) * self.graph.neighbors(i).len() as f64
            })
            .fold(0.0, f64::max)
    }

    /// Dense row-major `H`; refuses orders above the dense limit.
    pub fn dense(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.order();
        if n > self.dense_limit {
            return Err(Error::CapExceeded {
                what: "dense matrix order",
                value: n,
                cap: self.dense_limit,
            });
        }
        let mut h = vec![vec![0.0; n]; n];
        for (i, row) in h.iter_mut().enumerate() {
            row[i] = 1.0 - self.params.mu[i];
            for &j in self.graph.neighbors(i) {
                row[j] = self.params.transmission(i);
            }
        }
        Ok(h)
    }
}

/// One step of the linear bound dynamics from state `x ≥ 0`.
pub fn linear_bound_step(sys: &LinearBoundSystem<'_>, x: &[f64]) -> Vec<f64> {
    sys.apply(x)
}
