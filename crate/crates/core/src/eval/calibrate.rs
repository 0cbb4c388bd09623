//! Numerical estimates of the constants C, K, C1 and C2.
//!
//! C is the mean density of Σ c_n and K bounds |Δ(x)|/x^{3/5}. C1 and C2 are
//! fitted so that the sharp expansion matches the direct series at a line
//! σ > 3/5 where the latter is an accurate oracle.

use num_complex::Complex64;

use super::afe::{correction_bases, z_afe, AfeConfig, AfeConstants};
use super::direct::z_direct;
use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::special::{x_factor, ComplexPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationOptions {
    pub sigma: f64,
    pub t_grid: Vec<f64>,
    /// Fit C1 and C2 independently instead of a common value.
    pub free: bool,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            sigma: 0.9,
            t_grid: vec![10.0, 15.0, 20.0, 25.0, 30.0],
            free: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationResidual {
    pub t: f64,
    /// |direct - expansion| with C1 = C2 = 0.
    pub before: f64,
    /// The same after fitting.
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub c_hat: f64,
    pub k_hat: f64,
    pub constants: AfeConstants,
    pub residuals: Vec<CalibrationResidual>,
    pub warning: Option<String>,
}

/// One observation `target ≈ c1·b1 + c2·b2` with real unknowns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitSample {
    pub target: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOutcome {
    pub c1: f64,
    pub c2: f64,
    /// Euclidean norm of the targets.
    pub residual_before: f64,
    /// Euclidean norm of the residuals after the fit.
    pub residual_after: f64,
}

/// Real least squares over complex observations.
pub fn fit_constants(samples: &[FitSample], free: bool) -> Result<FitOutcome> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples to fit".into()));
    }
    let dot = |a: Complex64, b: Complex64| (a.conj() * b).re;
    let (c1, c2) = if free {
        let (mut a11, mut a12, mut a22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for s in samples {
            a11 += dot(s.b1, s.b1);
            a12 += dot(s.b1, s.b2);
            a22 += dot(s.b2, s.b2);
            r1 += dot(s.b1, s.target);
            r2 += dot(s.b2, s.target);
        }
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > 1e-300) {
            return Err(Error::InvalidParameter("singular normal equations".into()));
        }
        ((r1 * a22 - r2 * a12) / det, (a11 * r2 - a12 * r1) / det)
    } else {
        let (mut num, mut den) = (0.0, 0.0);
        for s in samples {
            let b = s.b1 + s.b2;
            num += dot(b, s.target);
            den += dot(b, b);
        }
        if !(den > 0.0) {
            return Err(Error::InvalidParameter("degenerate basis".into()));
        }
        (num / den, num / den)
    };
    let norm = |f: &dyn Fn(&FitSample) -> Complex64| {
        samples.iter().map(|s| f(s).norm_sqr()).sum::<f64>().sqrt()
    };
    Ok(FitOutcome {
        c1,
        c2,
        residual_before: norm(&|s| s.target),
        residual_after: norm(&|s| s.target - s.b1 * c1 - s.b2 * c2),
    })
}

/// Prefix sums S(n) = Σ_{k<=n} c_k, index 0 ↔ n = 1.
pub fn prefix_sums(table: &CoefficientTable) -> Vec<f64> {
    let mut acc = 0.0;
    let mut comp = 0.0;
    table
        .c_f64()
        .iter()
        .map(|&c| {
            // Kahan: all terms are nonnegative
            let y = c - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            acc
        })
        .collect()
}

/// Mean of S(x)/x over x = N/16, N/8, N/4, N/2, N.
pub fn estimate_c_hat(table: &CoefficientTable) -> Result<f64> {
    let n = table.len();
    if n < 16 {
        return Err(Error::TableTooShort {
            needed: 16,
            available: n,
        });
    }
    let s = prefix_sums(table);
    let points: Vec<usize> = (0..5).map(|k| n >> k).collect();
    Ok(points.iter().map(|&x| s[x - 1] / x as f64).sum::<f64>() / points.len() as f64)
}

/// sup_{x<=N} |Δ(x)|/x^{3/5}, using both ends of each step of the prefix sum.
pub fn estimate_k_hat(table: &CoefficientTable, c_hat: f64) -> f64 {
    let s = prefix_sums(table);
    let mut k: f64 = 0.0;
    for (i, &sn) in s.iter().enumerate() {
        let n = (i + 1) as f64;
        k = k.max((sn - c_hat * n).abs() / n.powf(0.6));
        k = k.max((sn - c_hat * (n + 1.0)).abs() / (n + 1.0).powf(0.6));
    }
    k
}

/// Fits C1, C2 against the direct series on the line σ = `opts.sigma`.
///
/// If fitting fails to halve the residual the constants fall back to zero and
/// the largest residual is added to every later budget.
pub fn calibrate_constants(
    table: &CoefficientTable,
    opts: &CalibrationOptions,
) -> Result<Calibration> {
    if opts.t_grid.is_empty() {
        return Err(Error::InvalidParameter("empty t grid".into()));
    }
    let c_hat = estimate_c_hat(table)?;
    let k_hat = estimate_k_hat(table, c_hat);
    let kappa = table.weight();

    let mut samples = Vec::with_capacity(opts.t_grid.len());
    for &t in &opts.t_grid {
        let s = ComplexPoint::new(opts.sigma, t)?;
        let cfg = AfeConfig::symmetric(t, kappa)?;
        let afe = z_afe(s, &cfg, table)?;
        let direct = z_direct(s, table, table.len(), c_hat, k_hat)?;
        let (b1, b2) = correction_bases(s, cfg.x(), cfg.y(), x_factor(s, kappa)?);
        samples.push(FitSample {
            target: direct.value - (afe.sum_x + afe.sum_y),
            b1,
            b2,
        });
    }
    let fit = fit_constants(&samples, opts.free)?;

    let mut warning = None;
    let constants = if fit.residual_after * 2.0 <= fit.residual_before {
        AfeConstants {
            c1: fit.c1,
            c2: fit.c2,
            budget_inflation: 0.0,
        }
    } else {
        warning = Some(format!(
            "fit reduced the residual only from {:e} to {:e}; constants set to 0",
            fit.residual_before, fit.residual_after
        ));
        let worst = samples.iter().map(|s| s.target.norm()).fold(0.0, f64::max);
        AfeConstants {
            c1: 0.0,
            c2: 0.0,
            budget_inflation: worst,
        }
    };
    let residuals = opts
        .t_grid
        .iter()
        .zip(&samples)
        .map(|(&t, s)| CalibrationResidual {
            t,
            before: s.target.norm(),
            after: (s.target - s.b1 * constants.c1 - s.b2 * constants.c2).norm(),
        })
        .collect();
    Ok(Calibration {
        c_hat,
        k_hat,
        constants,
        residuals,
        warning,
    })
}
