//! The Hardy-type function 𝒵(t) = Z(1/2 + it) X(1/2 + it)^{-1/2}.
//!
//! log X is continuous in t along the critical line and vanishes at t = 0,
//! so `exp(-log X / 2)` is the continuous branch of X^{-1/2} with value 1 there.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::afe::{z_afe, AfeConfig, AfeConstants, MIN_T};
use super::sum::CompensatedSum;
use crate::coeffs::CoefficientTable;
use crate::dd::{self, DoubleDouble};
use crate::error::{Error, Result};
use crate::special::{log_x_factor, ComplexPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyValue {
    /// Z(1/2 + it) X^{-1/2}; real up to the expansion error.
    pub value: Complex64,
    /// |Z(1/2 + it)| as given by the expansion.
    pub modulus: f64,
    pub error_budget: f64,
}

/// 𝒵(t) from the sharp expansion with an arbitrary split.
pub fn hardy_z_complex(t: f64, cfg: &AfeConfig, table: &CoefficientTable) -> Result<HardyValue> {
    let s = ComplexPoint::critical(t)?;
    let afe = z_afe(s, cfg, table)?;
    let half = (-0.5 * log_x_factor(s, cfg.kappa())?).exp();
    Ok(HardyValue {
        value: afe.value * half,
        modulus: afe.value.norm(),
        error_budget: afe.error_budget,
    })
}

/// 𝒵(t) at the symmetric split x = y = √τ(t) with tied constants.
///
/// The four terms then pair off into complex conjugates, so the imaginary part
/// is rounding only; a larger one is reported as an inconsistency.
pub fn hardy_z(t: f64, table: &CoefficientTable, constants: &AfeConstants) -> Result<f64> {
    Ok(hardy_z_checked(t, table, constants)?.value.re)
}

/// As [`hardy_z`] but returning the full value with its budget.
pub fn hardy_z_checked(
    t: f64,
    table: &CoefficientTable,
    constants: &AfeConstants,
) -> Result<HardyValue> {
    check_t(t)?;
    if constants.c1 != constants.c2 {
        return Err(Error::InvalidParameter(
            "the real Hardy function needs C1 = C2".into(),
        ));
    }
    let cfg = AfeConfig::symmetric(t, table.weight())?.with_constants(*constants);
    let v = hardy_z_complex(t, &cfg, table)?;
    if v.value.im.abs() > v.error_budget {
        return Err(Error::Consistency(format!(
            "Im 𝒵({t}) = {:e} exceeds the budget {:e}",
            v.value.im, v.error_budget
        )));
    }
    Ok(v)
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= MIN_T) {
        return Err(Error::Domain(format!("t = {t} below {MIN_T}")));
    }
    Ok(())
}

/// Phase offset of the cosine form for weight κ: (κ - 1)π/2.
pub fn cosine_offset(kappa: u32) -> f64 {
    // Reduce (κ - 1)/2 mod 2 exactly before multiplying by π.
    let quarter_turns = (kappa - 1) % 4;
    f64::from(quarter_turns) * 0.5 * PI
}

/// `2 Σ_{n <= (t/2π)²} c_n n^{-1/2} cos(t log((t/2π)²/n) - 2t + (κ-1)π/2)`.
///
/// Obtained by inserting the leading asymptotic form of X into the symmetric
/// expansion at x = y = (t/2π)²; phases are formed in double-double.
pub fn hardy_z_cos(t: f64, table: &CoefficientTable) -> Result<f64> {
    hardy_z_cos_offset(t, table, cosine_offset(table.weight()))
}

/// The cosine sum with an explicit phase offset.
pub fn hardy_z_cos_offset(t: f64, table: &CoefficientTable, offset: f64) -> Result<f64> {
    check_t(t)?;
    let len = (t / (2.0 * PI)).powi(2);
    let m = if len < 1.0 { 0 } else { len.floor() as usize };
    table.require(m)?;
    // t·log((t/2π)²) - 2t + offset, all in double-double
    let base = (DoubleDouble::ln(t) - dd::LN_2PI).mul_f64(2.0 * t)
        - DoubleDouble::from_f64(2.0 * t)
        + DoubleDouble::from_f64(offset);
    let c = table.c_f64();
    const BLOCK: usize = 1 << 14;
    let blocks: Vec<CompensatedSum> = (0..m.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut acc = CompensatedSum::default();
            for n in (b * BLOCK + 1)..=((b + 1) * BLOCK).min(m) {
                let ph = (base - DoubleDouble::ln(n as f64).mul_f64(t)).rem_two_pi();
                acc.add(Complex64::new(c[n - 1] / (n as f64).sqrt() * ph.cos(), 0.0));
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::default();
    for b in &blocks {
        total.merge(b);
    }
    Ok(2.0 * total.value().re)
}
