//! Sharp and smoothed approximate functional equations.
//!
//! For `xy = τ(t)` and `1/2 <= σ <= 1`,
//!
//! ```text
//! Z(s) ≈ Σ_{n<=x} c_n n^{-s} + X(s) Σ_{n<=y} c_n n^{s-1}
//!        + C1 x^{1-s}/(1-s) + C2 X(s) y^s / s,
//! ```
//!
//! with the remainder never evaluated; it is replaced by an explicit budget.

use num_complex::Complex64;

use super::sum::{cutoff, dirichlet_poly};
use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::special::{log_x_factor, rho_weight, tau_of_t, ComplexPoint, SmoothWeight};

/// The fixed ε in all `t^ε` budget factors.
pub const BUDGET_EPSILON: f64 = 0.05;

/// Smallest |t| at which the expansions are used.
pub const MIN_T: f64 = 3.0;

/// Exponent μ(1/2) bounding ζ on the critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuExponent {
    mu_half: f64,
}

impl MuExponent {
    /// Huxley's exponent 32/205.
    pub const HUXLEY: Self = Self {
        mu_half: 32.0 / 205.0,
    };
    /// The value conjectured by Lindelöf.
    pub const LINDELOF: Self = Self { mu_half: 0.0 };

    pub fn new(mu_half: f64) -> Result<Self> {
        if !(0.0..=0.25).contains(&mu_half) {
            return Err(Error::InvalidParameter(format!(
                "μ(1/2) = {mu_half} outside [0, 1/4]"
            )));
        }
        Ok(Self { mu_half })
    }

    pub fn value(&self) -> f64 {
        self.mu_half
    }
}

impl Default for MuExponent {
    fn default() -> Self {
        Self::HUXLEY
    }
}

/// Constants of the two correction terms, plus any extra budget charged by
/// calibration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AfeConstants {
    pub c1: f64,
    pub c2: f64,
    pub budget_inflation: f64,
}

impl AfeConstants {
    pub fn tied(c: f64) -> Self {
        Self {
            c1: c,
            c2: c,
            budget_inflation: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeConfig {
    x: f64,
    y: f64,
    tau: f64,
    h: f64,
    constants: AfeConstants,
    kappa: u32,
    mu: MuExponent,
}

impl AfeConfig {
    /// Explicit lengths; requires `|xy - τ(|t|)| <= 1e-12 τ` and `0 < h <= 1`.
    pub fn new(
        t: f64,
        x: f64,
        y: f64,
        h: f64,
        constants: AfeConstants,
        kappa: u32,
    ) -> Result<Self> {
        let tau = tau_for(t, kappa)?;
        if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lengths x = {x}, y = {y} must be positive"
            )));
        }
        if ((x * y - tau) / tau).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "x·y = {} differs from τ(t) = {tau}",
                x * y
            )));
        }
        if !(h > 0.0 && h <= 1.0) {
            return Err(Error::InvalidParameter(format!("h = {h} outside (0, 1]")));
        }
        Ok(Self {
            x,
            y,
            tau,
            h,
            constants,
            kappa,
            mu: MuExponent::default(),
        })
    }

    /// x = y = √τ(t).
    pub fn symmetric(t: f64, kappa: u32) -> Result<Self> {
        Self::with_ratio(t, 1.0, kappa)
    }

    /// x = r·y with xy = τ(t).
    pub fn with_ratio(t: f64, r: f64, kappa: u32) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "split ratio {r} must be positive"
            )));
        }
        let tau = tau_for(t, kappa)?;
        let y = (tau / r).sqrt();
        Self::with_x(t, tau / y, kappa)
    }

    /// Given x, sets y = τ(t)/x and h by [`choose_h`].
    pub fn with_x(t: f64, x: f64, kappa: u32) -> Result<Self> {
        let tau = tau_for(t, kappa)?;
        let y = tau / x;
        Self::new(
            t,
            x,
            y,
            choose_h(t.abs(), x),
            AfeConstants::default(),
            kappa,
        )
    }

    pub fn with_constants(mut self, constants: AfeConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_mu(mut self, mu: MuExponent) -> Self {
        self.mu = mu;
        self
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn constants(&self) -> AfeConstants {
        self.constants
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn mu(&self) -> MuExponent {
        self.mu
    }

    /// The same configuration with x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            ..*self
        }
    }
}

fn tau_for(t: f64, kappa: u32) -> Result<f64> {
    if !(t.abs() >= MIN_T) {
        return Err(Error::Domain(format!("|t| = {} below {MIN_T}", t.abs())));
    }
    tau_of_t(t.abs(), kappa)
}

/// The four main terms and the budget. `value` is stored as
/// `((sum_x + sum_y) + corr_x) + corr_y`, see [`AfeBreakdown::total`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeBreakdown {
    pub sum_x: Complex64,
    pub sum_y: Complex64,
    pub corr_x: Complex64,
    pub corr_y: Complex64,
    pub value: Complex64,
    pub error_budget: f64,
}

impl AfeBreakdown {
    fn assemble(
        sum_x: Complex64,
        sum_y: Complex64,
        corr_x: Complex64,
        corr_y: Complex64,
        error_budget: f64,
    ) -> Self {
        let value = Self::total(sum_x, sum_y, corr_x, corr_y);
        Self {
            sum_x,
            sum_y,
            corr_x,
            corr_y,
            value,
            error_budget,
        }
    }

    /// The summation order used for `value`.
    pub fn total(
        sum_x: Complex64,
        sum_y: Complex64,
        corr_x: Complex64,
        corr_y: Complex64,
    ) -> Complex64 {
        ((sum_x + sum_y) + corr_x) + corr_y
    }
}

/// The two addends of the critical-line remainder estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetTerms {
    pub first: f64,
    pub second: f64,
}

impl BudgetTerms {
    pub fn total(&self) -> f64 {
        self.first + self.second
    }
}

/// `t^{ε-11/16}(x^{1/2} + t²x^{-1/2})^{3/4}` and `t^{1/2+μ+ε}`.
pub fn error_budget(t: f64, x: f64, mu: MuExponent) -> BudgetTerms {
    let t = t.abs();
    let inner = x.sqrt() + t * t / x.sqrt();
    BudgetTerms {
        first: t.powf(BUDGET_EPSILON - 11.0 / 16.0) * inner.powf(0.75),
        second: t.powf(0.5 + mu.value() + BUDGET_EPSILON),
    }
}

/// `h = t^{-11/16}(x^{1/2} + t²x^{-1/2})^{-1/4}`, clamped to at most 1.
pub fn choose_h(t: f64, x: f64) -> f64 {
    let t = t.abs();
    let inner = x.sqrt() + t * t / x.sqrt();
    (t.powf(-11.0 / 16.0) * inner.powf(-0.25)).min(1.0)
}

/// Budget of the sharp expansion at s for the given lengths.
fn sharp_budget(s: ComplexPoint, cfg: &AfeConfig) -> f64 {
    let t = s.t.abs();
    let (x, y, h, sg) = (cfg.x, cfg.y, cfg.h, s.sigma);
    let te = t.powf(BUDGET_EPSILON);
    let left = te * (x.powf(-sg) + h * x.powf(1.0 - sg));
    let right = t.powf(2.0 + BUDGET_EPSILON - 4.0 * sg) * (y.powf(sg - 1.0) + h * y.powf(sg));
    left + right + error_budget(t, x, cfg.mu).total() + cfg.constants.budget_inflation
}

fn check_lengths(table: &CoefficientTable, lengths: &[f64]) -> Result<()> {
    for &l in lengths {
        table.require(cutoff(l))?;
    }
    Ok(())
}

fn check_table_weight(table: &CoefficientTable, kappa: u32) -> Result<()> {
    if table.weight() != kappa {
        return Err(Error::InvalidParameter(format!(
            "configuration has weight {kappa}, table has weight {}",
            table.weight()
        )));
    }
    Ok(())
}

/// x^{1-s}/(1-s) and X(s) y^s/s.
pub(crate) fn correction_bases(
    s: ComplexPoint,
    x: f64,
    y: f64,
    xs: Complex64,
) -> (Complex64, Complex64) {
    let z = s.s();
    let b1 = (x.ln() * (1.0 - z)).exp() / (1.0 - z);
    let b2 = xs * (y.ln() * z).exp() / z;
    (b1, b2)
}

/// Sharp expansion for 1/2 <= σ <= 1.
pub fn z_afe(s: ComplexPoint, cfg: &AfeConfig, table: &CoefficientTable) -> Result<AfeBreakdown> {
    if !(0.5..=1.0).contains(&s.sigma) {
        return Err(Error::OutOfValidity(format!(
            "σ = {} outside [1/2, 1]; use the reflected expansion",
            s.sigma
        )));
    }
    check_table_weight(table, cfg.kappa)?;
    let tau = tau_for(s.t, cfg.kappa)?;
    if ((cfg.tau - tau) / tau).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "configuration was built for τ = {}, not τ(t) = {tau}",
            cfg.tau
        )));
    }
    check_lengths(table, &[cfg.x, cfg.y])?;

    let c = table.c_f64();
    let xs = log_x_factor(s, cfg.kappa)?.exp();
    let sum_x = dirichlet_poly(c, cutoff(cfg.x), s.sigma, -s.t, |_| 1.0);
    let sum_y = xs * dirichlet_poly(c, cutoff(cfg.y), 1.0 - s.sigma, s.t, |_| 1.0);

    let k = cfg.constants;
    let zero = Complex64::new(0.0, 0.0);
    let (corr_x, corr_y) = if k.c1 == 0.0 && k.c2 == 0.0 {
        (zero, zero)
    } else {
        let (b1, b2) = correction_bases(s, cfg.x, cfg.y, xs);
        (b1 * k.c1, b2 * k.c2)
    };
    Ok(AfeBreakdown::assemble(
        sum_x,
        sum_y,
        corr_x,
        corr_y,
        sharp_budget(s, cfg),
    ))
}

/// Z(s) = X(s) Z(1-s) for 0 <= σ <= 1/2, with the expansion applied at 1 - s
/// and the two lengths exchanged.
///
/// Terms are relabelled so that `sum_x` is again the sum over n <= x of
/// c_n n^{-s} and `sum_y` carries the factor X(s).
pub fn reflect_afe(
    s: ComplexPoint,
    cfg: &AfeConfig,
    table: &CoefficientTable,
) -> Result<AfeBreakdown> {
    if !(0.0..=0.5).contains(&s.sigma) {
        return Err(Error::OutOfValidity(format!(
            "σ = {} outside [0, 1/2]",
            s.sigma
        )));
    }
    let inner = z_afe(s.reflect(), &cfg.swapped(), table)?;
    let xs = log_x_factor(s, cfg.kappa)?.exp();
    Ok(AfeBreakdown::assemble(
        xs * inner.sum_y,
        xs * inner.sum_x,
        xs * inner.corr_y,
        xs * inner.corr_x,
        xs.norm() * inner.error_budget,
    ))
}

/// Sharp expansion anywhere in 0 <= σ <= 1.
pub fn evaluate_afe(
    s: ComplexPoint,
    cfg: &AfeConfig,
    table: &CoefficientTable,
) -> Result<AfeBreakdown> {
    if s.sigma >= 0.5 {
        z_afe(s, cfg, table)
    } else {
        reflect_afe(s, cfg, table)
    }
}

/// Smoothed expansion on the critical line:
/// `Σ_{n<=bx} ρ(n/x) c_n n^{-s} + X(s) Σ_{n<=by} ρ(n/y) c_n n^{s-1}`.
pub fn z_afe_smoothed(
    t: f64,
    x: f64,
    y: f64,
    w: &SmoothWeight,
    table: &CoefficientTable,
) -> Result<Complex64> {
    let kappa = table.weight();
    let tau = tau_for(t, kappa)?;
    if !(x > 0.0 && y > 0.0) || ((x * y - tau) / tau).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "x·y = {} differs from τ(t) = {tau}",
            x * y
        )));
    }
    let b = w.edge();
    check_lengths(table, &[b * x, b * y])?;
    let s = ComplexPoint::critical(t)?;
    let c = table.c_f64();
    let weight = |len: f64| move |n: usize| rho_weight(n as f64 / len, w).unwrap_or(0.0);
    let left = dirichlet_poly(c, cutoff(b * x), 0.5, -t, weight(x));
    let right = dirichlet_poly(c, cutoff(b * y), 0.5, t, weight(y));
    Ok(left + log_x_factor(s, kappa)?.exp() * right)
}
