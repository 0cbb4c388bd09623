//! The gamma quotient X(s) of the functional equation Z(s) = X(s) Z(1 - s),
//! its leading asymptotic form, the length parameter τ(t) and the kernel Φ.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{digamma, log_gamma, DEFAULT_STIRLING_ORDER};
use super::ComplexPoint;
use crate::error::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// log X(s) = (4s - 2) log 2π + log Γ(κ - s) + log Γ(1 - s) - log Γ(s + κ - 1) - log Γ(s).
///
/// The branch is the one continuous on the strip 0 < σ < 1 with log X(1/2) = 0.
/// Terms are paired so that on the critical line each difference involves
/// exactly conjugate values; the real part then cancels without rounding.
pub fn log_x_factor(s: impl Into<Complex64>, kappa: u32) -> Result<Complex64> {
    let s = s.into();
    let k = f64::from(kappa);
    let lg = |z: Complex64| log_gamma(z, DEFAULT_STIRLING_ORDER);
    let upper = lg(k - s)? - lg(s + (k - 1.0))?;
    let lower = lg(1.0 - s)? - lg(s)?;
    Ok(upper + lower + (s * 4.0 - 2.0) * LN_2PI)
}

pub fn x_factor(s: impl Into<Complex64>, kappa: u32) -> Result<Complex64> {
    Ok(log_x_factor(s, kappa)?.exp())
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 3.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t = {t} must be at least 3")));
    }
    Ok(())
}

/// Logarithm of the leading-order form
/// `(t/2π)^{2-4σ} exp(4it - 4it log(t/2π) + (1-κ)πi)`.
pub fn log_x_factor_asymptotic(s: ComplexPoint, kappa: u32) -> Result<Complex64> {
    check_t(s.t)?;
    let l = (s.t / (2.0 * PI)).ln();
    let phase = 4.0 * s.t - 4.0 * s.t * l + (1.0 - f64::from(kappa)) * PI;
    Ok(Complex64::new((2.0 - 4.0 * s.sigma) * l, phase))
}

pub fn x_factor_asymptotic(s: ComplexPoint, kappa: u32) -> Result<Complex64> {
    let lx = log_x_factor_asymptotic(s, kappa)?;
    Ok(Complex64::from_polar(lx.re.exp(), lx.im))
}

/// -X'/X(1/2 + it) from the four digamma values; real up to rounding.
fn log_tau_complex(t: f64, kappa: u32) -> Result<Complex64> {
    let a = f64::from(kappa) - 0.5;
    let pair = |re: f64| -> Result<Complex64> {
        Ok(digamma(Complex64::new(re, -t))? + digamma(Complex64::new(re, t))?)
    };
    Ok(pair(a)? + pair(0.5)? - 4.0 * LN_2PI)
}

/// τ(t) = exp(-X'/X(1/2 + it)), the product x·y of the two sum lengths.
pub fn tau_of_t(t: f64, kappa: u32) -> Result<f64> {
    Ok(log_tau_of_t(t, kappa)?.exp())
}

pub fn log_tau_of_t(t: f64, kappa: u32) -> Result<f64> {
    check_t(t)?;
    let v = log_tau_complex(t, kappa)?;
    if v.im.abs() > 1e-12 * v.re.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "log τ({t}) has imaginary part {:e}",
            v.im
        )));
    }
    Ok(v.re)
}

/// Φ(w; s, τ) = τ^{w-s} X(w) - X(s), evaluated as X(s)·expm1(...) so that
/// it vanishes to full relative accuracy as w → s.
pub fn phi_kernel(
    w: impl Into<Complex64>,
    s: impl Into<Complex64>,
    tau: f64,
    kappa: u32,
) -> Result<Complex64> {
    let (w, s) = (w.into(), s.into());
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("τ = {tau} must be positive")));
    }
    let lxs = log_x_factor(s, kappa)?;
    let delta = (w - s) * tau.ln() + (log_x_factor(w, kappa)? - lxs);
    Ok(lxs.exp() * expm1(delta))
}

/// e^z - 1 without cancellation for small |z|.
fn expm1(z: Complex64) -> Complex64 {
    let em1 = z.re.exp_m1();
    let (sin, cos) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let cosm1 = -2.0 * half * half;
    Complex64::new(em1 * cos + cosm1, (em1 + 1.0) * sin)
}
