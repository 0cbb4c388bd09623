//! Δ(x) = Σ_{n<=x} c_n - Ĉx against the classical envelope x^{3/5}.

use super::{provenance, ExperimentReport};
use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::eval::prefix_sums;

/// About twenty points per decade from 1 to N, always ending at N.
pub fn default_delta_grid(n: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = Vec::new();
    let mut k = 0;
    loop {
        let x = 10f64.powf(k as f64 / 20.0).round();
        if x >= n as f64 {
            break;
        }
        if grid.last() != Some(&x) {
            grid.push(x);
        }
        k += 1;
    }
    grid.push(n as f64);
    grid
}

/// Rows `(x, Δ(x), x^{3/5}, Δ(x)/x^{3/5})`.
pub fn delta_scan(
    table: &CoefficientTable,
    x_grid: &[f64],
    c_hat: f64,
) -> Result<ExperimentReport> {
    let Some(&last) = x_grid.last() else {
        return Err(Error::InvalidParameter("empty x grid".into()));
    };
    if x_grid[0] < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "grid starts at {} < 1",
            x_grid[0]
        )));
    }
    table.require(last.floor() as usize)?;
    let s = prefix_sums(table);
    let mut report = ExperimentReport::new("delta")
        .param("c_hat", format!("{c_hat:.14e}"))
        .param("points", x_grid.len())
        .param("table", provenance(table));
    for &x in x_grid {
        let d = s[x.floor() as usize - 1] - c_hat * x;
        report.push(x, d, x.powf(0.6))?;
    }
    Ok(report)
}

/// Location and size of the largest |ratio| of a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunningMax {
    pub argmax: f64,
    pub max: f64,
}

impl RunningMax {
    /// Over rows with abscissa <= `upto`.
    pub fn of(report: &ExperimentReport, upto: f64) -> Option<Self> {
        report
            .rows()
            .iter()
            .take_while(|r| r.abscissa <= upto)
            .fold(None, |best: Option<Self>, r| match best {
                Some(b) if b.max >= r.ratio.abs() => Some(b),
                _ => Some(Self {
                    argmax: r.abscissa,
                    max: r.ratio.abs(),
                }),
            })
    }
}
