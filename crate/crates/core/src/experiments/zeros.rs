//! Sign changes of the Hardy-type function, refined by bisection.
//!
//! Only sign changes visible on the grid are reported; nothing is claimed
//! about zeros between grid points of equal sign.

use rayon::prelude::*;

use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::eval::{hardy_z, AfeConstants, MIN_T};

/// Width of a refined bracket.
pub const BISECTION_WIDTH: f64 = 1e-6;
/// Coarser grids still run but are flagged.
pub const MAX_ZERO_SCAN_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
}

impl ZeroBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    /// Increasing and pairwise disjoint.
    pub brackets: Vec<ZeroBracket>,
    pub warnings: Vec<String>,
}

/// Scans `t_min, t_min + step, ..., t_max` for sign changes of 𝒵.
pub fn zero_scan(
    table: &CoefficientTable,
    t_min: f64,
    t_max: f64,
    step: f64,
    constants: &AfeConstants,
) -> Result<ZeroScan> {
    if !(t_min >= MIN_T && t_max > t_min) {
        return Err(Error::InvalidParameter(format!(
            "need {MIN_T} <= t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "step {step} must be positive"
        )));
    }
    let mut warnings = Vec::new();
    if step > MAX_ZERO_SCAN_STEP {
        warnings.push(format!(
            "step {step} exceeds {MAX_ZERO_SCAN_STEP}; closely spaced zeros may be missed"
        ));
    }
    let f = |t: f64| hardy_z(t, table, constants);
    let grid = scan_grid(t_min, t_max, step);
    let n = grid.len() - 1;
    let values: Vec<f64> = grid.par_iter().map(|&t| f(t)).collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for k in 0..n {
        let (a, b) = (grid[k], grid[k + 1]);
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            brackets.push(ZeroBracket { lo: a, hi: a });
        } else if fa * fb < 0.0 {
            brackets.push(bisect(&f, a, b, fa)?);
        }
    }
    if values[n] == 0.0 {
        brackets.push(ZeroBracket {
            lo: grid[n],
            hi: grid[n],
        });
    }
    Ok(ZeroScan { brackets, warnings })
}

/// `t_min, t_min + step, ...` clipped to and ending at `t_max`, without the
/// repeated endpoint that rounding in `(t_max - t_min)/step` can produce.
pub fn scan_grid(t_min: f64, t_max: f64, step: f64) -> Vec<f64> {
    let n = ((t_max - t_min) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..=n)
        .map(|k| (t_min + k as f64 * step).min(t_max))
        .collect();
    grid.dedup();
    grid
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<ZeroBracket>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(ZeroBracket { lo: mid, hi: mid });
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(ZeroBracket { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_no_repeated_endpoint() {
        let g = scan_grid(14.0, 14.3, 0.1);
        assert_eq!(g.len(), 4);
        assert_eq!(*g.last().unwrap(), 14.3);
        assert_eq!(scan_grid(1.0, 2.0, 0.3).len(), 5);
    }

    #[test]
    fn bisection_width() {
        let b = bisect(&|t: f64| Ok(t - 0.3), 0.0, 1.0, -0.3).unwrap();
        assert!(b.hi - b.lo <= BISECTION_WIDTH && b.contains(0.3));
    }

    #[test]
    fn rejects_bad_ranges() {
        let t = CoefficientTable::discriminant(50).unwrap();
        let k = AfeConstants::default();
        assert!(zero_scan(&t, 2.0, 5.0, 0.01, &k).is_err());
        assert!(zero_scan(&t, 5.0, 5.0, 0.01, &k).is_err());
        assert!(zero_scan(&t, 5.0, 6.0, 0.0, &k).is_err());
    }

    #[test]
    fn coarse_step_is_flagged() {
        let t = CoefficientTable::discriminant(50).unwrap();
        let scan = zero_scan(&t, 13.9, 14.5, 0.1, &AfeConstants::default()).unwrap();
        assert_eq!(scan.warnings.len(), 1);
    }
}
