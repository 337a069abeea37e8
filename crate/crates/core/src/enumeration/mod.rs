//! Labeled graph enumeration.
//!
//! Exact counts live in [`exact`] and [`egf`] and never touch floating point.
//! Asymptotic estimates in [`asymptotic`] are carried as [`LogValue`]s, and
//! exact counts cross over only through [`LogValue::of_biguint`].

pub mod asymptotic;
pub mod egf;
pub mod exact;
pub mod log_value;
pub mod tables;

pub use asymptotic::{
    bollobas_degree_sequence_count_log, bollobas_hypothesis_holds, bollobas_lambda,
    bollobas_regular_count_log, catalan_asymptotic_log, ln_factorial, ln_labeled_graphs,
    rarity_ratio_log, stirling_log_factorial, unlabeled_regular_count_log, wright_condition_value,
};
pub use egf::{connected_labeled_egf_log, EgfSeries};
pub use exact::{
    binomial, catalan_coefficient, connected_counts_harary, connected_counts_riordan,
    connected_labeled_harary, connected_labeled_riordan, count_all_labeled_graphs,
    count_labeled_graphs_with_edges, count_labelings, factorial, pairs, BigCount,
};
pub use log_value::LogValue;
