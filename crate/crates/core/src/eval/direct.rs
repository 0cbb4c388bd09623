//! Truncated Dirichlet series with a partial-summation tail estimate.

use num_complex::Complex64;

use super::sum::dirichlet_poly;
use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::special::ComplexPoint;

/// Smallest σ accepted by [`z_direct`]; the tail estimate needs σ > 3/5.
pub const DIRECT_MIN_SIGMA: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectValue {
    pub value: Complex64,
    pub error_bound: f64,
}

/// `Σ_{n<=N} c_n n^{-s} + Ĉ N^{1-s}/(s-1)`.
///
/// Writing `Σ_{n<=x} c_n = Ĉx + Δ(x)` with `|Δ(x)| <= K̂ x^{3/5}`, partial
/// summation bounds the omitted tail by
/// `|s| K̂ N^{3/5-σ}/(σ-3/5) + K̂ N^{3/5-σ}`.
pub fn z_direct(
    s: ComplexPoint,
    table: &CoefficientTable,
    n: usize,
    c_hat: f64,
    k_hat: f64,
) -> Result<DirectValue> {
    if s.sigma < DIRECT_MIN_SIGMA {
        return Err(Error::OutOfValidity(format!(
            "direct series needs σ >= {DIRECT_MIN_SIGMA}, got {}",
            s.sigma
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    table.require(n)?;
    let z = s.s();
    let head = dirichlet_poly(table.c_f64(), n, s.sigma, -s.t, |_| 1.0);
    let nf = n as f64;
    let tail = c_hat * (Complex64::from(nf).ln() * (1.0 - z)).exp() / (z - 1.0);
    let decay = nf.powf(0.6 - s.sigma);
    let error_bound = z.norm() * k_hat * decay / (s.sigma - 0.6) + k_hat * decay;
    Ok(DirectValue {
        value: head + tail,
        error_bound,
    })
}
