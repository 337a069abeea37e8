use std::f64::consts::LN_2;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// A positive real held as its natural logarithm.
///
/// Products and quotients are exact additions and subtractions of the
/// logarithms. There is deliberately no `Add`: sums of counts belong in
/// exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub const ONE: LogValue = LogValue { ln: 0.0 };

    pub fn from_ln(ln: f64) -> Self {
        LogValue { ln }
    }

    /// `None` for non-positive or non-finite inputs.
    pub fn from_value(v: f64) -> Option<Self> {
        (v > 0.0 && v.is_finite()).then(|| LogValue { ln: v.ln() })
    }

    /// Logarithm of an exact integer from its top 64 bits and bit length.
    /// `None` for zero.
    pub fn of_biguint(x: &BigUint) -> Option<Self> {
        if x.is_zero() {
            return None;
        }
        let shift = x.bits().saturating_sub(64);
        let top = (x >> shift).to_u64().expect("at most 64 bits remain");
        Some(LogValue {
            ln: (top as f64).ln() + shift as f64 * LN_2,
        })
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    /// The value itself; overflows to infinity past `f64::MAX`.
    pub fn exp(self) -> f64 {
        self.ln.exp()
    }

    pub fn powi(self, k: i64) -> Self {
        LogValue {
            ln: self.ln * k as f64,
        }
    }
}

// multiplying values adds their logarithms
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        LogValue {
            ln: self.ln + rhs.ln,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        LogValue {
            ln: self.ln - rhs.ln,
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.ln)
    }
}
