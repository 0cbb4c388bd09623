//! Table resolution and the calibration sidecar.

use std::path::{Path, PathBuf};

use rszeta_core::coeffs::load_table;
use rszeta_core::eval::{calibrate_constants, Calibration, CalibrationOptions};
use rszeta_core::{AfeConstants, CoefficientTable};
use serde::{Deserialize, Serialize};

use crate::args::TableArgs;
use crate::output::{round15, CliResult, Failure};

pub const TABLE_ENV: &str = "RSZETA_TABLE";

pub struct Loaded {
    pub table: CoefficientTable,
    pub path: Option<PathBuf>,
}

impl Loaded {
    /// Human-readable origin, recorded in the manifest.
    pub fn source(&self) -> String {
        match &self.path {
            Some(p) => p.display().to_string(),
            None => format!("builtin:{}", self.table.len()),
        }
    }
}

pub fn resolve(args: &TableArgs) -> CliResult<Loaded> {
    let from_env = std::env::var_os(TABLE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    match from_env.or_else(|| args.table.clone()) {
        Some(path) => {
            let table = load_table(&path).map_err(|e| match e {
                rszeta_core::Error::Io(io) => Failure::Io(format!("{}: {io}", path.display())),
                other => Failure::from(other),
            })?;
            Ok(Loaded {
                table,
                path: Some(path),
            })
        }
        None => Ok(Loaded {
            table: CoefficientTable::discriminant(args.builtin_n)?,
            path: None,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub t: f64,
    pub before: f64,
    pub after: f64,
}

/// Calibration as stored on disk; every number already rounded to fifteen
/// significant digits so that fresh and cached runs agree exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRecord {
    #[serde(rename = "C_hat")]
    pub c_hat: f64,
    #[serde(rename = "K_hat")]
    pub k_hat: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    pub budget_inflation: f64,
    pub sigma: f64,
    pub t_grid: Vec<f64>,
    pub free: bool,
    pub table_checksum: String,
    pub residuals: Vec<ResidualRecord>,
    pub warning: Option<String>,
}

impl CalibrationRecord {
    pub fn new(cal: &Calibration, opts: &CalibrationOptions, table: &CoefficientTable) -> Self {
        Self {
            c_hat: round15(cal.c_hat),
            k_hat: round15(cal.k_hat),
            c1: round15(cal.constants.c1),
            c2: round15(cal.constants.c2),
            budget_inflation: round15(cal.constants.budget_inflation),
            sigma: opts.sigma,
            t_grid: opts.t_grid.clone(),
            free: opts.free,
            table_checksum: table.checksum().to_string(),
            residuals: cal
                .residuals
                .iter()
                .map(|r| ResidualRecord {
                    t: r.t,
                    before: round15(r.before),
                    after: round15(r.after),
                })
                .collect(),
            warning: cal.warning.clone(),
        }
    }

    pub fn constants(&self) -> AfeConstants {
        AfeConstants {
            c1: self.c1,
            c2: self.c2,
            budget_inflation: self.budget_inflation,
        }
    }
}

pub fn sidecar_path(table: &Path) -> PathBuf {
    let mut name = table.as_os_str().to_owned();
    name.push(".calib.json");
    PathBuf::from(name)
}

pub fn calibrate(
    table: &CoefficientTable,
    opts: &CalibrationOptions,
) -> CliResult<CalibrationRecord> {
    let cal = calibrate_constants(table, opts)?;
    if let Some(w) = &cal.warning {
        eprintln!("warning: {w}");
    }
    Ok(CalibrationRecord::new(&cal, opts, table))
}

/// Reads the sidecar when it matches the table, otherwise calibrates with
/// the default options and caches the result next to a file-based table.
pub fn calibration_for(loaded: &Loaded) -> CliResult<CalibrationRecord> {
    let checksum = loaded.table.checksum().to_string();
    if let Some(path) = &loaded.path {
        let side = sidecar_path(path);
        if let Ok(text) = std::fs::read_to_string(&side) {
            match serde_json::from_str::<CalibrationRecord>(&text) {
                Ok(rec) if rec.table_checksum == checksum => return Ok(rec),
                Ok(_) => eprintln!(
                    "warning: {} belongs to another table; recalibrating",
                    side.display()
                ),
                Err(e) => eprintln!("warning: ignoring unreadable {}: {e}", side.display()),
            }
        }
    }
    let rec = calibrate(&loaded.table, &CalibrationOptions::default())?;
    if let Some(path) = &loaded.path {
        let side = sidecar_path(path);
        std::fs::write(&side, to_json(&rec)?)
            .map_err(|e| Failure::Io(format!("{}: {e}", side.display())))?;
    }
    Ok(rec)
}

pub fn to_json(rec: &CalibrationRecord) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(rec)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_sits_next_to_the_table() {
        assert_eq!(
            sidecar_path(Path::new("/tmp/t.rsz")),
            PathBuf::from("/tmp/t.rsz.calib.json")
        );
    }

    #[test]
    fn record_round_trips_through_json() {
        let table = CoefficientTable::discriminant(2_000).unwrap();
        let opts = CalibrationOptions::default();
        let rec = calibrate(&table, &opts).unwrap();
        let back: CalibrationRecord = serde_json::from_str(&to_json(&rec).unwrap()).unwrap();
        assert_eq!(back, rec);
        assert!(to_json(&rec).unwrap().contains("\"C_hat\""));
    }
}
