//! Exact labeled-graph counts over arbitrary-precision integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// `n(n-1)/2`, the number of vertex pairs.
pub fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn factorial(n: u64) -> BigCount {
    (2..=n).fold(BigCount::one(), |acc, k| acc * k)
}

fn pow2(e: u64) -> BigCount {
    BigCount::one() << e
}

/// Number of labeled graphs on `p` vertices: `2^(p(p-1)/2)`.
pub fn count_all_labeled_graphs(p: u64) -> BigCount {
    pow2(pairs(p))
}

/// Number of labeled graphs on `p` vertices with exactly `k` edges.
pub fn count_labeled_graphs_with_edges(p: u64, k: u64) -> Result<BigCount> {
    let q = pairs(p);
    if k > q {
        return Err(invalid(format!(
            "{k} edges exceed the {q} pairs on {p} vertices"
        )));
    }
    Ok(binomial(q, k))
}

/// Distinct labelings of a graph of order `p` whose automorphism group has
/// order `s`: `p!/s`.
pub fn count_labelings(p: u64, s: u64) -> Result<BigCount> {
    if s == 0 {
        return Err(invalid("automorphism group order must be at least 1"));
    }
    let (q, r) = factorial(p).div_rem(&BigUint::from(s));
    if !r.is_zero() {
        return Err(invalid(format!("{s} does not divide {p}!")));
    }
    Ok(q)
}

/// Connected labeled graph counts `[C_1, ..., C_pmax]` from
/// `C_p = 2^C(p,2) - (1/p) sum_{k<p} k C(p,k) 2^C(p-k,2) C_k`.
pub fn connected_counts_harary(p_max: u64) -> Result<Vec<BigCount>> {
    let mut c: Vec<BigCount> = Vec::with_capacity(p_max as usize);
    for p in 1..=p_max {
        let mut acc = BigCount::zero();
        for k in 1..p {
            acc += binomial(p, k) * k * pow2(pairs(p - k)) * &c[k as usize - 1];
        }
        let (quot, rem) = acc.div_rem(&BigUint::from(p));
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "inexact division by {p} at p = {p}"
            )));
        }
        let total = count_all_labeled_graphs(p);
        if quot > total {
            return Err(Error::Internal(format!(
                "negative connected count at p = {p}"
            )));
        }
        c.push(total - quot);
    }
    Ok(c)
}

pub fn connected_labeled_harary(p: u64) -> Result<BigCount> {
    if p == 0 {
        return Err(invalid("order must be at least 1"));
    }
    Ok(connected_counts_harary(p)?.pop().expect("p >= 1"))
}

/// Connected labeled graph counts `[C_1, ..., C_pmax]` from the tree-inversion
/// recurrence `C_p = sum_{k=1}^{p-1} C(p-2,k-1) (2^k - 1) C_k C_{p-k}`.
pub fn connected_counts_riordan(p_max: u64) -> Vec<BigCount> {
    let mut c: Vec<BigCount> = Vec::with_capacity(p_max as usize);
    for p in 1..=p_max {
        if p == 1 {
            c.push(BigCount::one());
            continue;
        }
        let mut acc = BigCount::zero();
        for k in 1..p {
            acc += binomial(p - 2, k - 1)
                * (pow2(k) - 1u8)
                * &c[k as usize - 1]
                * &c[(p - k) as usize - 1];
        }
        c.push(acc);
    }
    c
}

pub fn connected_labeled_riordan(p: u64) -> Result<BigCount> {
    if p == 0 {
        return Err(invalid("order must be at least 1"));
    }
    Ok(connected_counts_riordan(p).pop().expect("p >= 1"))
}

/// `f_n = C(2n-2, n-1) / n`, the coefficient of `x^n` in `(1 - sqrt(1-4x))/2`.
pub fn catalan_coefficient(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("Catalan index must be at least 1"));
    }
    let (q, r) = binomial(2 * n - 2, n - 1).div_rem(&BigUint::from(n));
    if !r.is_zero() {
        return Err(Error::Internal(format!("inexact division by {n}")));
    }
    Ok(q)
}
