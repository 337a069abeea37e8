//! Log-space asymptotic estimates: Stirling, Catalan growth, regular-graph
//! counts, Wright's condition and the share of labeled graphs that are regular.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use log::warn;

use super::exact::{factorial, pairs};
use super::log_value::LogValue;
use crate::error::{invalid, Error, Result};
use crate::graph::DegreeSequence;

/// Largest `n` whose `ln n!` is taken from the exact factorial.
pub const EXACT_LN_FACTORIAL_LIMIT: u64 = 1024;

fn exact_ln_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut f = factorial(0);
        let mut out = Vec::with_capacity(EXACT_LN_FACTORIAL_LIMIT as usize + 1);
        for n in 0..=EXACT_LN_FACTORIAL_LIMIT {
            if n > 0 {
                f *= n;
            }
            out.push(LogValue::of_biguint(&f).expect("n! > 0").ln());
        }
        out
    })
}

/// `ln n!`: exact up to [`EXACT_LN_FACTORIAL_LIMIT`], Stirling series with
/// three correction terms beyond (absolute error far below 1e-12 there).
pub fn ln_factorial(n: u64) -> f64 {
    if n <= EXACT_LN_FACTORIAL_LIMIT {
        return exact_ln_factorials()[n as usize];
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + inv / 12.0 - inv * inv2 / 360.0
        + inv * inv2 * inv2 / 1260.0
}

/// Plain Stirling approximation `ln(sqrt(2 pi n) (n/e)^n)`.
pub fn stirling_log_factorial(n: u64) -> Result<LogValue> {
    if n == 0 {
        return Err(invalid("Stirling's formula needs n >= 1"));
    }
    let x = n as f64;
    Ok(LogValue::from_ln(
        0.5 * (2.0 * PI * x).ln() + x * x.ln() - x,
    ))
}

/// `ln` of `4^n (1/4) (pi n^3)^(-1/2)`, the growth-times-subexponential form
/// of the `n`-th Catalan coefficient `C(2n-2, n-1)/n`.
pub fn catalan_asymptotic_log(n: u64) -> Result<LogValue> {
    if n < 2 {
        return Err(invalid("Catalan asymptotic needs n >= 2"));
    }
    let x = n as f64;
    let ln4 = 2.0 * LN_2;
    Ok(LogValue::from_ln(
        x * ln4 - ln4 - 0.5 * (PI * x.powi(3)).ln(),
    ))
}

/// `λ = (Δ - 1)/2`.
pub fn bollobas_lambda(degree: u64) -> f64 {
    (degree as f64 - 1.0) / 2.0
}

/// `ln((2m)! / (m! 2^m))`, the number of perfect matchings on `2m` points.
fn ln_pairings(m: u64) -> f64 {
    ln_factorial(2 * m) - ln_factorial(m) - m as f64 * LN_2
}

/// Asymptotic number of labeled `Δ`-regular graphs on `n` vertices,
/// `e^{-(Δ²-1)/4} (2m)! / (m! 2^m (Δ!)^n)` with `m = Δn/2`.
pub fn bollobas_regular_count_log(n: u64, degree: u64) -> Result<LogValue> {
    if degree == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::Parity {
            n: n as usize,
            degree: degree as usize,
        });
    }
    if degree >= n {
        return Err(invalid(format!("degree {degree} must be below order {n}")));
    }
    let m = n * degree / 2;
    let d = degree as f64;
    let correction = -(d * d - 1.0) / 4.0;
    Ok(LogValue::from_ln(
        correction + ln_pairings(m) - n as f64 * ln_factorial(degree),
    ))
}

/// Whether `max d_i <= sqrt(2 ln n) - 1`, the degree bound under which the
/// degree-sequence asymptotic is proven.
pub fn bollobas_hypothesis_holds(d: &DegreeSequence) -> bool {
    let n = d.len() as f64;
    n > 1.0 && (d.max() as f64) <= (2.0 * n.ln()).sqrt() - 1.0
}

/// Asymptotic number of labeled graphs with degree sequence `d`:
/// `e^{-λ-λ²} (2m)! / (m! 2^m prod d_i!)`, `λ = (1/2m) sum C(d_i, 2)`.
///
/// Logs a warning when the degree bound of [`bollobas_hypothesis_holds`]
/// fails; the value is still returned.
pub fn bollobas_degree_sequence_count_log(d: &DegreeSequence) -> LogValue {
    let two_m = d.sum() as u64;
    if two_m == 0 {
        return LogValue::ONE;
    }
    if !bollobas_hypothesis_holds(d) {
        warn!(
            "max degree {} exceeds sqrt(2 ln n) - 1 for n = {}; estimate outside its proven range",
            d.max(),
            d.len()
        );
    }
    let m = two_m / 2;
    let pair_sum: f64 = d
        .as_slice()
        .iter()
        .map(|&k| (k as f64) * (k as f64 - 1.0) / 2.0)
        .sum();
    let lambda = pair_sum / two_m as f64;
    let ln_deg_factorials: f64 = d.as_slice().iter().map(|&k| ln_factorial(k as u64)).sum();
    LogValue::from_ln(-lambda - lambda * lambda + ln_pairings(m) - ln_deg_factorials)
}

/// Unlabeled `Δ`-regular count estimate, labeled estimate over `n!` (`Δ >= 3`).
pub fn unlabeled_regular_count_log(n: u64, degree: u64) -> Result<LogValue> {
    if degree < 3 {
        return Err(invalid("unlabeled asymptotic needs degree >= 3"));
    }
    let labeled = bollobas_regular_count_log(n, degree)?;
    Ok(labeled / LogValue::from_ln(ln_factorial(n)))
}

/// `min(q, N - q)/n - ln(n)/2` with `N = n(n-1)/2`.
pub fn wright_condition_value(n: u64, q: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("order must be at least 1"));
    }
    let total = pairs(n);
    if q > total {
        return Err(invalid(format!(
            "{q} edges exceed the {total} pairs on {n} vertices"
        )));
    }
    Ok(q.min(total - q) as f64 / n as f64 - (n as f64).ln() / 2.0)
}

/// `ln G_n = C(n,2) ln 2`, the log-count of all labeled graphs.
pub fn ln_labeled_graphs(n: u64) -> f64 {
    pairs(n) as f64 * LN_2
}

/// `ln(L_r / G_n)`: log of the fraction of labeled graphs on `n` vertices
/// that are `r`-regular, `r >= 3`.
pub fn rarity_ratio_log(n: u64, r: u64) -> Result<f64> {
    if r < 3 {
        return Err(invalid("rarity ratio needs degree >= 3"));
    }
    Ok(bollobas_regular_count_log(n, r)?.ln() - ln_labeled_graphs(n))
}
