//! Control-node selection from Gerschgorin discs of `H`.
//!
//! Row `i` of `H` has diagonal `1 - mu_i` and off-diagonal sum
//! `beta_i r_i deg(i)`, so every eigenvalue lies in some disc centered at
//! `1 - mu_i` with that radius. A disc stays inside the unit circle exactly
//! when `beta_i r_i deg(i) < mu_i`; nodes whose disc escapes are flagged for
//! control, and reducing their `beta` pulls the disc back in.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::epidemic::NodeParams;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{spectral_radius, SpectralOptions};

/// Default safety factor for [`tune_betas`].
pub const DEFAULT_KAPPA: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GerschgorinDisc {
    pub node: usize,
    pub center: f64,
    pub radius: f64,
}

impl GerschgorinDisc {
    /// `mu_i - beta_i r_i deg(i)`: the distance the disc stays inside the
    /// unit circle (negative when it escapes).
    pub fn margin(&self) -> f64 {
        (1.0 - self.center) - self.radius
    }
}

pub fn compute_discs(g: &Graph, params: &NodeParams) -> Result<Vec<GerschgorinDisc>> {
    params.check_order(g)?;
    Ok((0..g.order())
        .map(|i| GerschgorinDisc {
            node: i,
            center: 1.0 - params.mu()[i],
            radius: params.transmission(i) * g.neighbors(i).len() as f64,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub discs: Vec<GerschgorinDisc>,
    /// Nodes with `margin <= 0`, ascending by id.
    pub flagged: Vec<usize>,
    pub margins: Vec<f64>,
}

impl SelectionReport {
    pub fn is_flagged(&self, node: usize) -> bool {
        self.flagged.binary_search(&node).is_ok()
    }

    /// Flagged nodes ordered from most to least critical (most negative
    /// margin first, ties by id).
    pub fn ranked(&self) -> Vec<usize> {
        let mut order = self.flagged.clone();
        order.sort_by(|&a, &b| self.margins[a].total_cmp(&self.margins[b]).then(a.cmp(&b)));
        order
    }
}

/// Flags every node with `beta_i r_i deg(i) >= mu_i`.
pub fn select_nodes(g: &Graph, params: &NodeParams) -> Result<SelectionReport> {
    let discs = compute_discs(g, params)?;
    let margins: Vec<f64> = discs
        .iter()
        .map(|d| params.mu()[d.node] - d.radius)
        .collect();
    let flagged = margins
        .iter()
        .enumerate()
        .filter(|(_, &m)| m <= 0.0)
        .map(|(i, _)| i)
        .collect();
    Ok(SelectionReport {
        discs,
        flagged,
        margins,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaAdjustment {
    pub node: usize,
    pub beta_old: f64,
    pub beta_new: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlPlan {
    pub kappa: f64,
    pub adjustments: BTreeMap<usize, BetaAdjustment>,
}

impl ControlPlan {
    pub fn new_beta(&self, node: usize) -> Option<f64> {
        self.adjustments.get(&node).map(|a| a.beta_new)
    }

    pub fn is_empty(&self) -> bool {
        self.adjustments.is_empty()
    }
}

/// Lowers `beta` on each flagged node to `kappa * mu_i / (r_i deg(i))`, so
/// its disc radius becomes `kappa * mu_i < mu_i`. Never raises a `beta`.
pub fn tune_betas(
    g: &Graph,
    params: &NodeParams,
    report: &SelectionReport,
    kappa: f64,
) -> Result<(NodeParams, ControlPlan)> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "kappa {kappa} not in (0, 1)"
        )));
    }
    params.check_order(g)?;
    let mut beta = params.beta().to_vec();
    let mut adjustments = BTreeMap::new();
    for &i in &report.flagged {
        let contact = params.r()[i] * g.neighbors(i).len() as f64;
        if contact <= 0.0 {
            return Err(Error::Internal(format!(
                "node {i} flagged with zero contact weight (r * deg = 0 < mu)"
            )));
        }
        let tuned = (kappa * params.mu()[i] / contact).clamp(0.0, beta[i]);
        adjustments.insert(
            i,
            BetaAdjustment {
                node: i,
                beta_old: beta[i],
                beta_new: tuned,
            },
        );
        beta[i] = tuned;
    }
    let tuned = params.with_beta(beta)?;
    Ok((tuned, ControlPlan { kappa, adjustments }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilizationCheck {
    pub sigma: f64,
    pub stable: bool,
}

/// Recomputes `σ(H)` for tuned parameters; `stable` iff `σ < 1`.
pub fn verify_stabilization(
    g: &Graph,
    tuned: &NodeParams,
    opts: &SpectralOptions,
) -> Result<StabilizationCheck> {
    let sigma = spectral_radius(g, tuned, opts)?.require_converged()?;
    Ok(StabilizationCheck {
        sigma,
        stable: sigma < 1.0,
    })
}
