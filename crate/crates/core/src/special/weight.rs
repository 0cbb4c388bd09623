//! Smooth cutoff ρ with ρ(x) + ρ(1/x) = 1.

use crate::error::{Error, Result};

/// Shape of the transition between ρ = 1 and ρ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransitionProfile {
    /// Built from g(v) = exp(-1/v) (v > 0), g(v) = 0 otherwise.
    #[default]
    ExpBump,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWeight {
    b: f64,
    profile: TransitionProfile,
}

impl SmoothWeight {
    pub fn new(b: f64) -> Result<Self> {
        if !(b > 1.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cutoff edge b = {b} must exceed 1"
            )));
        }
        Ok(Self {
            b,
            profile: TransitionProfile::ExpBump,
        })
    }

    pub fn edge(&self) -> f64 {
        self.b
    }

    pub fn profile(&self) -> TransitionProfile {
        self.profile
    }
}

impl Default for SmoothWeight {
    fn default() -> Self {
        Self {
            b: 2.0,
            profile: TransitionProfile::ExpBump,
        }
    }
}

fn bump(v: f64) -> f64 {
    if v > 0.0 {
        (-1.0 / v).exp()
    } else {
        0.0
    }
}

/// ρ(x): 1 on (0, 1/b], 0 on [b, ∞), smooth in between.
pub fn rho_weight(x: f64, w: &SmoothWeight) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ρ needs x > 0, got {x}")));
    }
    let u = x.ln() / w.b.ln();
    match w.profile {
        TransitionProfile::ExpBump => {
            let lo = bump(1.0 - u);
            let hi = bump(1.0 + u);
            Ok(lo / (lo + hi))
        }
    }
}
