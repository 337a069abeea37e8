//! Spectral radius of the linear bound matrix `H` and the stability verdict.
//!
//! `H` is nonnegative, so its spectral radius is its Perron root and power
//! iteration from the all-ones vector converges to it. Two details matter:
//!
//! * the iteration runs on `H + sI` with `s = max(0, G - 2c) / 2`, where `G`
//!   is the Gerschgorin row bound and `c` the smallest diagonal entry. For a
//!   nonnegative matrix the Perron root of `H + sI` is exactly `σ(H) + s`,
//!   and the shift keeps eigenvalues near `-σ` (bipartite graphs with
//!   `mu = 1`) from stalling the iteration.
//! * when every `beta_i r_i > 0`, `H` is similar to a symmetric matrix via
//!   `diag(beta_i r_i)^{1/2}`, and the estimate is the Rayleigh quotient in
//!   the matching weighted inner product, which converges at twice the rate.
//!   Otherwise the estimate is the ratio `Σ(Hx)_i / Σx_i`.

use std::fmt;

use serde::Serialize;

use crate::epidemic::{LinearBoundSystem, NodeParams};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Half-width of the band around `σ = 1` reported as marginal.
pub const DEFAULT_MARGINAL_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    /// Convergence threshold on successive estimates.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: 1e-12,
            max_iter: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    WeightedRayleigh,
    SumRatio,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub sigma: f64,
    pub converged: bool,
    pub iterations: usize,
    pub kind: EstimateKind,
}

impl SpectralEstimate {
    /// The estimate, or [`Error::NotConverged`] if the iteration ran out.
    pub fn require_converged(self) -> Result<f64> {
        if self.converged {
            Ok(self.sigma)
        } else {
            Err(Error::NotConverged {
                estimate: self.sigma,
                iterations: self.iterations,
            })
        }
    }
}

/// True when `H` is diagonally similar to a symmetric matrix.
pub fn is_symmetrizable(params: &NodeParams) -> bool {
    (0..params.len()).all(|i| params.transmission(i) > 0.0)
}

/// Power-iteration estimate of `σ(H)`.
pub fn spectral_radius(
    g: &Graph,
    params: &NodeParams,
    opts: &SpectralOptions,
) -> Result<SpectralEstimate> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tol {} must be positive",
            opts.tol
        )));
    }
    let sys = LinearBoundSystem::new(g, params)?;
    let n = g.order();
    let bound = sys.gerschgorin_bound();
    if n == 0 || bound == 0.0 {
        return Ok(SpectralEstimate {
            sigma: 0.0,
            converged: true,
            iterations: 0,
            kind: EstimateKind::Exact,
        });
    }
    if g.edge_count() == 0 {
        // diagonal H
        return Ok(SpectralEstimate {
            sigma: params.mu().iter().map(|m| 1.0 - m).fold(0.0, f64::max),
            converged: true,
            iterations: 0,
            kind: EstimateKind::Exact,
        });
    }

    let min_diag = params
        .mu()
        .iter()
        .map(|m| 1.0 - m)
        .fold(f64::INFINITY, f64::min);
    let shift = (bound - 2.0 * min_diag).max(0.0) / 2.0;
    let weights: Option<Vec<f64>> =
        is_symmetrizable(params).then(|| (0..n).map(|i| 1.0 / params.transmission(i)).collect());
    let kind = if weights.is_some() {
        EstimateKind::WeightedRayleigh
    } else {
        EstimateKind::SumRatio
    };

    let mut x = vec![1.0; n];
    let mut prev = f64::NAN;
    let mut estimate = 0.0;
    for it in 1..=opts.max_iter {
        let mut y = sys.apply(&x);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        estimate = match &weights {
            Some(w) => {
                let (mut num, mut den) = (0.0, 0.0);
                for i in 0..n {
                    num += w[i] * x[i] * y[i];
                    den += w[i] * x[i] * x[i];
                }
                num / den - shift
            }
            None => y.iter().sum::<f64>() / x.iter().sum::<f64>() - shift,
        };
        let scale = y.iter().copied().fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(SpectralEstimate {
                sigma: 0.0,
                converged: true,
                iterations: it,
                kind,
            });
        }
        if (estimate - prev).abs() < opts.tol {
            return Ok(SpectralEstimate {
                sigma: estimate.max(0.0),
                converged: true,
                iterations: it,
                kind,
            });
        }
        prev = estimate;
        x = y.into_iter().map(|v| v / scale).collect();
    }
    Ok(SpectralEstimate {
        sigma: estimate.max(0.0),
        converged: false,
        iterations: opts.max_iter,
        kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
    Marginal,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Marginal => "marginal",
        })
    }
}

impl Stability {
    /// Classifies `sigma` against `1 ± band`.
    pub fn classify(sigma: f64, band: f64) -> Self {
        if sigma < 1.0 - band {
            Stability::Stable
        } else if sigma > 1.0 + band {
            Stability::Unstable
        } else {
            Stability::Marginal
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub stability: Stability,
    pub sigma: f64,
    pub iterations: usize,
}

/// Stable if `σ(H) < 1 - band`, unstable if `σ(H) > 1 + band`, else marginal.
/// Non-convergence of the power iteration is an error.
pub fn threshold_check(
    g: &Graph,
    params: &NodeParams,
    band: f64,
    opts: &SpectralOptions,
) -> Result<ThresholdReport> {
    let est = spectral_radius(g, params, opts)?;
    let sigma = est.require_converged()?;
    Ok(ThresholdReport {
        stability: Stability::classify(sigma, band),
        sigma,
        iterations: est.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, ring, star};
    use approx::assert_abs_diff_eq;

    fn sigma(g: &Graph, p: &NodeParams) -> f64 {
        spectral_radius(g, p, &SpectralOptions::default())
            .unwrap()
            .require_converged()
            .unwrap()
    }

    #[test]
    fn empty_graph_is_diagonal() {
        let g = Graph::empty(3);
        let p = NodeParams::new(vec![0.2, 0.5, 0.9], vec![0.3; 3], vec![1.0; 3]).unwrap();
        assert_abs_diff_eq!(sigma(&g, &p), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn ring_closed_form() {
        for n in [3, 4, 7, 10] {
            let g = ring(n).unwrap();
            let p = NodeParams::homogeneous(n, 0.2, 0.3, 0.9).unwrap();
            assert_abs_diff_eq!(sigma(&g, &p), 1.0 - 0.2 + 2.0 * 0.27, epsilon = 1e-10);
        }
    }

    #[test]
    fn star_is_exactly_one() {
        let g = star(4);
        let p = NodeParams::homogeneous(5, 0.5, 0.25, 1.0).unwrap();
        assert_abs_diff_eq!(sigma(&g, &p), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn bipartite_without_self_weight_converges() {
        // mu = 1 leaves a zero diagonal; the spectrum of H is symmetric about 0
        let g = ring(6).unwrap();
        let p = NodeParams::homogeneous(6, 1.0, 0.5, 1.0).unwrap();
        assert_abs_diff_eq!(sigma(&g, &p), 1.0, epsilon = 1e-10);
        let g = star(9);
        let p = NodeParams::homogeneous(10, 1.0, 0.2, 1.0).unwrap();
        assert_abs_diff_eq!(sigma(&g, &p), 0.6, epsilon = 1e-10);
    }

    #[test]
    fn zero_transmission_rows_fall_back_to_sum_ratio() {
        // node 0 never gets infected; H is block triangular
        let g = complete(3);
        let p = NodeParams::new(vec![0.1, 0.5, 0.5], vec![0.0, 0.5, 0.5], vec![1.0; 3]).unwrap();
        let est = spectral_radius(&g, &p, &SpectralOptions::default()).unwrap();
        assert_eq!(est.kind, EstimateKind::SumRatio);
        // eigenvalues: 0.9 from node 0, and 0.5 ± 0.5 from the {1,2} block
        assert_abs_diff_eq!(est.sigma, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn non_convergence_is_reported() {
        let g = ring(50).unwrap();
        let p = NodeParams::new(
            (0..50).map(|i| 0.1 + 0.01 * i as f64).collect(),
            vec![0.3; 50],
            vec![0.9; 50],
        )
        .unwrap();
        let est = spectral_radius(
            &g,
            &p,
            &SpectralOptions {
                tol: 1e-15,
                max_iter: 3,
            },
        )
        .unwrap();
        assert!(!est.converged);
        assert!(matches!(
            est.require_converged(),
            Err(Error::NotConverged { iterations: 3, .. })
        ));
        assert!(spectral_radius(
            &g,
            &p,
            &SpectralOptions {
                tol: 0.0,
                max_iter: 3
            }
        )
        .is_err());
    }

    #[test]
    fn threshold_examples() {
        let opts = SpectralOptions::default();
        let g = ring(8).unwrap();
        let p = NodeParams::homogeneous(8, 0.5, 0.0, 1.0).unwrap();
        let rep = threshold_check(&g, &p, DEFAULT_MARGINAL_BAND, &opts).unwrap();
        assert_eq!(rep.stability, Stability::Stable);
        assert_abs_diff_eq!(rep.sigma, 0.5, epsilon = 1e-15);

        let g = star(4);
        let p = NodeParams::homogeneous(5, 0.5, 0.25, 1.0).unwrap();
        let rep = threshold_check(&g, &p, DEFAULT_MARGINAL_BAND, &opts).unwrap();
        assert_eq!(rep.stability, Stability::Marginal);

        let g = ring(100).unwrap();
        let p = NodeParams::homogeneous(100, 0.2, 0.3, 0.9).unwrap();
        let rep = threshold_check(&g, &p, DEFAULT_MARGINAL_BAND, &opts).unwrap();
        assert_eq!(rep.stability, Stability::Unstable);
    }

    #[test]
    fn classify_band_edges() {
        assert_eq!(Stability::classify(0.999_998, 1e-6), Stability::Stable);
        assert_eq!(Stability::classify(1.0 + 5e-7, 1e-6), Stability::Marginal);
        assert_eq!(Stability::classify(1.000_002, 1e-6), Stability::Unstable);
    }
}
