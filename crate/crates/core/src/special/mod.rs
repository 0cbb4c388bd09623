//! Special functions: complex log-gamma and digamma, the gamma quotient X(s),
//! the length parameter τ(t), the kernel Φ and the smooth cutoff ρ.

mod gamma;
mod weight;
mod xfactor;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use gamma::{
    bernoulli, bernoulli_poly, digamma, log_gamma, log_gamma_shifted, DEFAULT_STIRLING_ORDER,
    MAX_STIRLING_ORDER,
};
pub use weight::{rho_weight, SmoothWeight, TransitionProfile};
pub use xfactor::{
    log_tau_of_t, log_x_factor, log_x_factor_asymptotic, phi_kernel, tau_of_t, x_factor,
    x_factor_asymptotic,
};

/// A point s = σ + it with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma.is_finite() && t.is_finite()) {
            return Err(Error::Domain(format!("non-finite point {sigma} + {t}i")));
        }
        Ok(Self { sigma, t })
    }

    /// Point on the critical line.
    pub fn critical(t: f64) -> Result<Self> {
        Self::new(0.5, t)
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    /// 1 - s.
    pub fn reflect(&self) -> Self {
        Self {
            sigma: 1.0 - self.sigma,
            t: -self.t,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.s()
    }
}
