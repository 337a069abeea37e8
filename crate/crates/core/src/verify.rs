//! Cross-checks of the fast routines against the brute-force oracles.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumeration::tables::{
    compare_printed, TableMatch, PUBLISHED_EXACT, PUBLISHED_SCIENTIFIC,
};
use crate::enumeration::{
    binomial, bollobas_regular_count_log, catalan_coefficient, connected_counts_harary,
    connected_counts_riordan, connected_labeled_egf_log, pairs, LogValue,
};
use crate::epidemic::{LinearBoundSystem, NodeParams};
use crate::error::Result;
use crate::generate::erdos_renyi;
use crate::oracle::{
    brute_catalan, brute_count_connected, brute_count_regular, brute_count_unlabeled_regular,
    brute_edge_histogram, dense_spectral_radius, Budget,
};
use crate::spectral::{spectral_radius, SpectralOptions};

/// Tolerance between power iteration and the dense eigensolver.
pub const SPECTRAL_AGREEMENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &'static str, r: Result<std::result::Result<String, String>>) -> Self {
        match r {
            Ok(Ok(detail)) => CheckOutcome {
                name,
                passed: true,
                detail,
            },
            Ok(Err(detail)) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
            Err(e) => CheckOutcome {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

/// Published values the table check compares against.
#[derive(Debug, Clone, Copy)]
pub struct PublishedTables<'a> {
    pub exact: &'a [(u64, &'a str)],
    pub scientific: &'a [(u64, &'a str, i32)],
}

impl Default for PublishedTables<'static> {
    fn default() -> Self {
        PublishedTables {
            exact: &PUBLISHED_EXACT,
            scientific: &PUBLISHED_SCIENTIFIC,
        }
    }
}

pub fn run_all(budget: Budget) -> Vec<CheckOutcome> {
    run_with_tables(budget, PublishedTables::default())
}

pub fn run_with_tables(budget: Budget, tables: PublishedTables<'_>) -> Vec<CheckOutcome> {
    vec![
        CheckOutcome::from_result("connected counts vs exhaustion", check_connected(budget)),
        CheckOutcome::from_result("edge histogram vs binomials", check_edge_histogram(budget)),
        CheckOutcome::from_result("regular counts", check_regular(budget)),
        CheckOutcome::from_result(
            "unlabeled cubic graphs on 6 vertices",
            check_unlabeled(budget),
        ),
        CheckOutcome::from_result("Bollobas estimate at n=6, r=3", check_bollobas(budget)),
        CheckOutcome::from_result("published connected-count tables", check_tables(tables)),
        CheckOutcome::from_result("Catalan numbers vs lattice paths", check_catalan(budget)),
        CheckOutcome::from_result(
            "power iteration vs dense eigensolver",
            check_spectral(budget),
        ),
    ]
}

type Check = Result<std::result::Result<String, String>>;

fn check_connected(budget: Budget) -> Check {
    let cap = budget.max_mask_order();
    let harary = connected_counts_harary(cap as u64)?;
    let riordan = connected_counts_riordan(cap as u64);
    let egf = connected_labeled_egf_log(cap)?;
    for p in 1..=cap {
        let brute = brute_count_connected(p, budget)?;
        let routes = [&harary[p - 1], &riordan[p - 1], &egf[p - 1]];
        if routes.iter().any(|&c| *c != brute) {
            return Ok(Err(format!(
                "p={p}: brute {brute}, harary {}, riordan {}, egf {}",
                routes[0], routes[1], routes[2]
            )));
        }
    }
    Ok(Ok(format!(
        "p=1..{cap} agree, C_{cap} = {}",
        harary[cap - 1]
    )))
}

fn check_edge_histogram(budget: Budget) -> Check {
    let cap = budget.max_mask_order();
    for p in 0..=cap {
        let hist = brute_edge_histogram(p, budget)?;
        let q = pairs(p as u64);
        for (k, count) in hist.iter().enumerate() {
            if *count != binomial(q, k as u64) {
                return Ok(Err(format!("p={p}, k={k}: brute {count}")));
            }
        }
    }
    Ok(Ok(format!("p=0..{cap}")))
}

fn check_regular(budget: Budget) -> Check {
    let pinned = [(4, 3, 1u32), (6, 5, 1), (6, 3, 70)];
    for (n, r, want) in pinned {
        let got = brute_count_regular(n, r, budget)?;
        if got != BigUint::from(want) {
            return Ok(Err(format!("n={n}, r={r}: {got}, expected {want}")));
        }
    }
    let cap = budget.max_mask_order();
    for n in 1..=cap {
        for r in 0..n {
            if (n * r) % 2 != 0 {
                continue;
            }
            let a = brute_count_regular(n, r, budget)?;
            let b = brute_count_regular(n, n - 1 - r, budget)?;
            if a != b {
                return Ok(Err(format!("complement: n={n}, r={r}: {a} vs {b}")));
            }
        }
    }
    Ok(Ok(
        "L(4,3)=1, L(6,5)=1, L(6,3)=70, complement symmetric".into()
    ))
}

fn check_unlabeled(budget: Budget) -> Check {
    let classes = brute_count_unlabeled_regular(6, 3, budget)?;
    Ok(if classes == 2 {
        Ok("2 classes".into())
    } else {
        Err(format!("{classes} classes"))
    })
}

fn check_bollobas(budget: Budget) -> Check {
    let exact = brute_count_regular(6, 3, budget)?;
    let estimate = bollobas_regular_count_log(6, 3)?;
    let ratio = (estimate / LogValue::of_biguint(&exact).expect("nonzero count")).exp();
    let detail = format!(
        "estimate {:.3} vs exact {exact} (ratio {ratio:.4})",
        estimate.exp()
    );
    Ok(if (0.5..=2.0).contains(&ratio) {
        Ok(detail)
    } else {
        Err(detail)
    })
}

fn check_tables(tables: PublishedTables<'_>) -> Check {
    let p_max = tables
        .exact
        .iter()
        .map(|e| e.0)
        .chain(tables.scientific.iter().map(|e| e.0))
        .max()
        .unwrap_or(1);
    let exact = connected_counts_harary(p_max)?;
    for &(p, printed) in tables.exact {
        let value = &exact[p as usize - 1];
        if value.to_string() != printed {
            return Ok(Err(format!("p={p}: computed {value}, published {printed}")));
        }
    }
    let mut errata = Vec::new();
    let mut worst = 0.0f64;
    for &(p, mantissa, exponent) in tables.scientific {
        match compare_printed(&exact[p as usize - 1], mantissa, exponent) {
            TableMatch::Agrees { rel_err } => worst = worst.max(rel_err),
            TableMatch::DroppedDigit { exact_mantissa } => errata.push(format!(
                "p={p} printed {mantissa}e{exponent}, exact {exact_mantissa}e{exponent}"
            )),
            TableMatch::Mismatch { rel_err } => {
                return Ok(Err(format!(
                    "p={p}: published {mantissa}e{exponent}, relative error {rel_err:.2e}"
                )))
            }
        }
    }
    let mut detail = format!("max relative error {worst:.2e}");
    if !errata.is_empty() {
        detail.push_str(&format!("; dropped digit: {}", errata.join(", ")));
    }
    Ok(Ok(detail))
}

fn check_catalan(budget: Budget) -> Check {
    let cap = budget.max_catalan_index();
    for n in 1..=cap {
        let dp = brute_catalan(n, budget)?;
        let closed = catalan_coefficient(n as u64)?;
        if dp != closed {
            return Ok(Err(format!("n={n}: paths {dp}, closed form {closed}")));
        }
    }
    Ok(Ok(format!("n=1..{cap}")))
}

fn check_spectral(budget: Budget) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let opts = SpectralOptions::default();
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let n = rng.random_range(2..=budget.max_dense_order().min(10));
        let g = erdos_renyi(n, rng.random_range(0.2..0.9), rng.random())?;
        let params = NodeParams::new(
            (0..n).map(|_| rng.random_range(0.05..=1.0)).collect(),
            (0..n).map(|_| rng.random_range(0.0..=1.0)).collect(),
            (0..n).map(|_| rng.random_range(0.0..=1.0)).collect(),
        )?;
        let fast = spectral_radius(&g, &params, &opts)?.require_converged()?;
        let h = LinearBoundSystem::new(&g, &params)?.dense()?;
        let dense = dense_spectral_radius(&h, budget)?;
        let err = (fast - dense).abs();
        if err > SPECTRAL_AGREEMENT_TOL {
            return Ok(Err(format!("n={n}: power {fast}, dense {dense}")));
        }
        worst = worst.max(err);
    }
    Ok(Ok(format!("25 instances, max deviation {worst:.1e}")))
}
