//! Truncated formal power series over exact rationals.
//!
//! Coefficients are stored in ordinary form, `coeffs[k] = [x^k]`. For an
//! exponential generating function the count attached to `x^k/k!` is
//! `k! * coeffs[k]`, recovered by [`EgfSeries::label_count`].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::{count_all_labeled_graphs, factorial, BigCount};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EgfSeries {
    coeffs: Vec<BigRational>,
}

impl EgfSeries {
    /// Series truncated after `x^order`; missing coefficients are zero.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        EgfSeries { coeffs }
    }

    /// EGF with `k! [x^k] = counts[k]`.
    pub fn from_label_counts(counts: &[BigInt], order: usize) -> Self {
        let coeffs = counts
            .iter()
            .enumerate()
            .map(|(k, c)| BigRational::new(c.clone(), BigInt::from(factorial(k as u64))))
            .collect();
        Self::from_coeffs(coeffs, order)
    }

    /// `sum_{p>=0} 2^C(p,2) x^p / p!`, all labeled graphs including the empty one.
    pub fn all_labeled_graphs(order: usize) -> Self {
        let counts: Vec<BigInt> = (0..=order as u64)
            .map(|p| BigInt::from(count_all_labeled_graphs(p)))
            .collect();
        Self::from_label_counts(&counts, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// `k! [x^k]`, which must be an integer.
    pub fn label_count(&self, k: usize) -> Result<BigInt> {
        let v = &self.coeffs[k] * BigRational::from_integer(BigInt::from(factorial(k as u64)));
        if !v.is_integer() {
            return Err(Error::Internal(format!(
                "coefficient {k} is not integral: {v}"
            )));
        }
        Ok(v.to_integer())
    }

    /// Product truncated to the smaller order.
    pub fn mul(&self, other: &EgfSeries) -> EgfSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| &self.coeffs[k] * &other.coeffs[n - k])
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect();
        EgfSeries { coeffs }
    }

    /// `log f` for `f(0) = 1`, from `n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}`.
    pub fn log(&self) -> Result<EgfSeries> {
        if !self.coeffs[0].is_one() {
            return Err(invalid("log needs constant term 1"));
        }
        let f = &self.coeffs;
        let mut g = vec![BigRational::zero(); f.len()];
        for n in 1..f.len() {
            let mut acc = BigRational::zero();
            for k in 1..n {
                acc += &g[k] * &f[n - k] * BigInt::from(k);
            }
            g[n] = &f[n] - acc / BigInt::from(n);
        }
        Ok(EgfSeries { coeffs: g })
    }

    /// `exp g` for `g(0) = 0`, from `n h_n = sum_{k=1}^{n} k g_k h_{n-k}`.
    pub fn exp(&self) -> Result<EgfSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(invalid("exp needs constant term 0"));
        }
        let g = &self.coeffs;
        let mut h = vec![BigRational::zero(); g.len()];
        h[0] = BigRational::one();
        for n in 1..g.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &g[k] * &h[n - k] * BigInt::from(k);
            }
            h[n] = acc / BigInt::from(n);
        }
        Ok(EgfSeries { coeffs: h })
    }
}

/// `[C_1, ..., C_pmax]` as `k! [x^k] log(sum_p 2^C(p,2) x^p/p!)`.
pub fn connected_labeled_egf_log(p_max: usize) -> Result<Vec<BigCount>> {
    if p_max == 0 {
        return Err(invalid("p_max must be at least 1"));
    }
    let connected = EgfSeries::all_labeled_graphs(p_max).log()?;
    (1..=p_max)
        .map(|k| {
            let c = connected.label_count(k)?;
            if c.is_negative() {
                return Err(Error::Internal(format!("negative count at {k}")));
            }
            Ok(c.to_biguint().unwrap_or_else(BigUint::zero))
        })
        .collect()
}
