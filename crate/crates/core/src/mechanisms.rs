//! The two primitive randomizers every mechanism in this crate is built
//! from: the logistic output bias of a two-outcome exponential mechanism,
//! and the centered Laplace quantile function.
//!
//! Probabilities that enter divergence computations are also exposed in
//! log space so the exact audits never lose precision to underflow.

use crate::error::{Error, Result};

/// Output bias `e^(eps*v/2) / (1 + e^(eps*v/2))` of the two-outcome
/// exponential mechanism at score `v`.
///
/// Computed branch-wise so neither branch ever exponentiates a positive
/// argument; strictly monotone in `v` and exactly symmetric:
/// `sigmoid_bias(v, eps) + sigmoid_bias(-v, eps) == 1` up to rounding.
pub fn sigmoid_bias(v: i64, epsilon: f64) -> f64 {
    debug_assert!(epsilon >= 0.0);
    let a = epsilon * v as f64 / 2.0;
    if a >= 0.0 {
        1.0 / (1.0 + (-a).exp())
    } else {
        let e = a.exp();
        e / (1.0 + e)
    }
}

/// `ln(sigmoid_bias(v, eps))`, computed without forming the probability.
pub fn log_sigmoid_bias(v: i64, epsilon: f64) -> f64 {
    let a = epsilon * v as f64 / 2.0;
    // ln(e^a / (1 + e^a)) = -ln(1 + e^-a)
    if a >= 0.0 {
        -(-a).exp().ln_1p()
    } else {
        a - a.exp().ln_1p()
    }
}

/// `ln(1 - sigmoid_bias(v, eps))`, i.e. the log-probability of outcome 0.
pub fn log_sigmoid_complement(v: i64, epsilon: f64) -> f64 {
    log_sigmoid_bias(-v, epsilon)
}

/// Inverse CDF of the centered Laplace distribution with scale `b`.
///
/// Sampling is defined as `laplace_quantile(scale, u)` for a uniform
/// `u` in (0, 1); see [`crate::RandomStream::laplace`].
pub fn laplace_quantile(scale: f64, u: f64) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::invalid("scale", format!("must be > 0, got {scale}")));
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::invalid("u", format!("must be in (0, 1), got {u}")));
    }
    // F(x) = 1/2 e^(x/b) for x < 0, 1 - 1/2 e^(-x/b) otherwise. The two
    // branches are exact mirrors, so quantile(u) == -quantile(1 - u)
    // bit-for-bit whenever 1 - u is exact.
    Ok(if u < 0.5 { scale * (2.0 * u).ln() } else { -scale * (2.0 * (1.0 - u)).ln() })
}
