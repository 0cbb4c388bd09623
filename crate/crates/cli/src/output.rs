//! Number formatting, failures with exit codes, and the run manifest.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use num_complex::Complex64;
use serde::Serialize;

/// Fifteen significant digits, `.` separator, independent of locale.
pub fn num(x: f64) -> String {
    format!("{x:.14e}")
}

/// The f64 nearest to the fifteen-digit rendering; serde prints it back
/// with the same digits, which keeps JSON and text output in step.
pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        num(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

#[derive(Debug, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self {
            re: round15(z.re),
            im: round15(z.im),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Io(String),
    Validation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Validation(m) => m,
        }
    }
}

impl From<rszeta_core::Error> for Failure {
    fn from(e: rszeta_core::Error) -> Self {
        match e {
            rszeta_core::Error::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn validation<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Validation(msg.into()))
}

/// Runs `body` against the file at `path`, or stdout when absent.
pub fn with_output<F>(path: Option<&Path>, body: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Written to stderr after every successful command. Everything except the
/// wall time is a function of the invocation and the table.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub command: &'a str,
    pub params: &'a P,
    pub table_checksum: Option<String>,
    pub library_version: &'static str,
    pub wall_time_s: f64,
}

pub fn emit_manifest<P: Serialize>(
    command: &str,
    params: &P,
    checksum: Option<u64>,
    wall: Duration,
) {
    let manifest = RunManifest {
        command,
        params,
        table_checksum: checksum.map(|c| c.to_string()),
        library_version: env!("CARGO_PKG_VERSION"),
        wall_time_s: wall.as_secs_f64(),
    };
    match serde_json::to_string(&manifest) {
        Ok(s) => eprintln!("manifest {s}"),
        Err(e) => eprintln!("manifest unavailable: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(num(1.0), "1.00000000000000e0");
        assert_eq!(num(-0.1234567890123456), "-1.23456789012346e-1");
        assert_eq!(round15(1.0 / 3.0).to_string(), "0.333333333333333");
        assert!(round15(f64::NAN).is_nan());
    }

    #[test]
    fn core_errors_map_to_exit_codes() {
        let io = rszeta_core::Error::Io(io::Error::new(io::ErrorKind::NotFound, "x"));
        assert_eq!(Failure::from(io).exit_code(), 1);
        let bad = rszeta_core::Error::InvalidParameter("x".into());
        assert_eq!(Failure::from(bad).exit_code(), 2);
    }
}
