//! SIS epidemic thresholds on undirected networks, Gerschgorin-based
//! control-node selection, and exact and asymptotic labeled graph counts.
//!
//! ```
//! use netquench::{generate, select_nodes, spectral_radius, NodeParams, SpectralOptions};
//!
//! let g = generate::star(4);
//! let params = NodeParams::homogeneous(5, 0.5, 0.25, 1.0).unwrap();
//! let sigma = spectral_radius(&g, &params, &SpectralOptions::default()).unwrap().sigma;
//! assert!((sigma - 1.0).abs() < 1e-9);
//! assert_eq!(select_nodes(&g, &params).unwrap().flagged, vec![0]);
//! ```

pub mod control;
pub mod enumeration;
pub mod epidemic;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod spectral;
pub mod verify;

pub use control::{
    compute_discs, select_nodes, tune_betas, verify_stabilization, BetaAdjustment, ControlPlan,
    GerschgorinDisc, SelectionReport, StabilizationCheck, DEFAULT_KAPPA,
};
pub use epidemic::{
    infection_probability, linear_bound_step, non_infection_probability, simulate, sis_step,
    verify_bound_inequality, EpidemicState, LinearBoundSystem, NodeParams, SimulationConfig,
    Trajectory, Verdict,
};
pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph};
pub use spectral::{
    spectral_radius, threshold_check, EstimateKind, SpectralEstimate, SpectralOptions, Stability,
    ThresholdReport, DEFAULT_MARGINAL_BAND,
};
