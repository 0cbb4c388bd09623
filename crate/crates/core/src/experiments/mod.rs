//! Numerical studies: the error term Δ(x), the critical-line mean value of
//! |Z| and sign changes of the Hardy-type function.

mod delta;
mod meanvalue;
mod zeros;

use std::io::Write;

use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};

pub use delta::{default_delta_grid, delta_scan, RunningMax};
pub use meanvalue::{mean_value_scan, MeanValueOptions, DEFAULT_T_CAP, MAX_MEAN_VALUE_STEP};
pub use zeros::{scan_grid, zero_scan, ZeroBracket, ZeroScan, BISECTION_WIDTH, MAX_ZERO_SCAN_STEP};

/// One row: the measured quantity against its reference envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub abscissa: f64,
    pub measured: f64,
    pub envelope: f64,
    pub ratio: f64,
}

/// Rows with strictly increasing abscissae plus descriptive metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    name: String,
    params: Vec<(String, String)>,
    rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            params: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    /// Appends a row; the ratio is computed here.
    pub fn push(&mut self, abscissa: f64, measured: f64, envelope: f64) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if !(abscissa > last.abscissa) {
                return Err(Error::InvalidParameter(format!(
                    "abscissa {abscissa} does not increase past {}",
                    last.abscissa
                )));
            }
        }
        self.rows.push(ReportRow {
            abscissa,
            measured,
            envelope,
            ratio: measured / envelope,
        });
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    /// `name k1=v1 k2=v2 ...`
    pub fn header(&self) -> String {
        let mut h = self.name.clone();
        for (k, v) in &self.params {
            h.push_str(&format!(" {k}={v}"));
        }
        h
    }

    /// `# rszeta-report <header>`, a column line, then one line per row with
    /// 15 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# rszeta-report {}", self.header())?;
        writeln!(w, "abscissa,measured,envelope,ratio")?;
        for r in &self.rows {
            writeln!(
                w,
                "{:.14e},{:.14e},{:.14e},{:.14e}",
                r.abscissa, r.measured, r.envelope, r.ratio
            )?;
        }
        Ok(())
    }
}

/// Short description of a table for report metadata.
pub fn provenance(table: &CoefficientTable) -> String {
    let source = match table.spec().source() {
        crate::coeffs::CoefficientSource::BuiltinDiscriminant => "discriminant",
        crate::coeffs::CoefficientSource::ExternalFile => "file",
    };
    format!(
        "{source}:kappa{}:N{}:sum{}",
        table.weight(),
        table.len(),
        table.checksum()
    )
}
