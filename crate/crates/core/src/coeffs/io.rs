//! Reading and writing coefficient tables.
//!
//! Cache format (one record per line):
//!
//! ```text
//! RSZETA-COEFS v1 kappa=<κ> N=<N>
//! <n> <a(n)> <c num>/<c den> <b num>/<b den>
//! ...
//! CHECKSUM <Σ a(n) mod 2^61 - 1>
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{
    build_b, build_c, divisor_count_sieve, CoefficientSource, CoefficientTable, EigenformSpec,
    CHECKSUM_MODULUS,
};
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &str = "RSZETA-COEFS";
pub const CACHE_VERSION: &str = "v1";

/// An ingested table together with non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub table: CoefficientTable,
    pub warnings: Vec<String>,
}

/// Reads `n a(n)` lines (blank lines and `#` comments ignored).
///
/// Structural checks only: contiguous indices starting at 1 and a(1) = 1.
/// Deligne-bound violations are reported as warnings.
pub fn ingest_coefficients(path: &Path, kappa: u32) -> Result<Ingested> {
    let reader = BufReader::new(File::open(path)?);
    let mut a: Vec<BigInt> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno,
            message,
        };
        let mut fields = body.split_whitespace();
        let (Some(n_str), Some(a_str), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected `n a(n)`, got {body:?}")));
        };
        let n: u64 = n_str
            .parse()
            .map_err(|e| parse_err(format!("index {n_str:?}: {e}")))?;
        let value: BigInt = a_str
            .parse()
            .map_err(|e| parse_err(format!("coefficient {a_str:?}: {e}")))?;
        let expected = a.len() as u64 + 1;
        if n != expected {
            return Err(Error::Contiguity { expected, found: n });
        }
        a.push(value);
    }
    if a.is_empty() {
        return Err(Error::Format(format!(
            "{}: no coefficients",
            path.display()
        )));
    }
    if !a[0].is_one() {
        return Err(Error::Normalization(a[0].to_string()));
    }
    let spec = EigenformSpec::new(kappa, CoefficientSource::ExternalFile, a.len())?;

    let d = divisor_count_sieve(a.len());
    let mut warnings = Vec::new();
    for (i, v) in a.iter().enumerate() {
        let n = i + 1;
        if v * v > BigInt::from(n).pow(kappa - 1) * BigInt::from(d[n]).pow(2) {
            warnings.push(format!(
                "a({n}) = {v} exceeds the Deligne bound for weight {kappa}"
            ));
        }
    }
    let table = CoefficientTable::from_coefficients(spec, a)?;
    Ok(Ingested { table, warnings })
}

/// Writes `a(n)` in the format read by [`ingest_coefficients`].
pub fn export_coefficients(table: &CoefficientTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for (i, v) in table.a_values().iter().enumerate() {
        writeln!(w, "{} {}", i + 1, v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_table(table: &CoefficientTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "{CACHE_MAGIC} {CACHE_VERSION} kappa={} N={}",
        table.weight(),
        table.len()
    )?;
    for n in 1..=table.len() {
        let den = table.c().denom(n);
        writeln!(
            w,
            "{} {} {}/{} {}/{}",
            n,
            table.a(n),
            table.c().numer(n),
            den,
            table.b().numer(n),
            den
        )?;
    }
    writeln!(w, "CHECKSUM {}", table.checksum())?;
    w.flush()?;
    Ok(())
}

/// CSV mirror of the cache file: a comment header, then `n,a_n,c_n,b_n`.
pub fn write_csv<W: Write>(table: &CoefficientTable, mut w: W) -> Result<()> {
    writeln!(
        w,
        "# {CACHE_MAGIC} {CACHE_VERSION} kappa={} N={}",
        table.weight(),
        table.len()
    )?;
    writeln!(w, "n,a_n,c_n,b_n")?;
    for n in 1..=table.len() {
        let den = table.c().denom(n);
        writeln!(
            w,
            "{},{},{}/{},{}/{}",
            n,
            table.a(n),
            table.c().numer(n),
            den,
            table.b().numer(n),
            den
        )?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Result<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(CACHE_MAGIC) {
        return Err(Error::Format(format!("bad header {line:?}")));
    }
    match parts.next() {
        Some(CACHE_VERSION) => {}
        Some(v) => {
            return Err(Error::Version(format!(
                "found {v}, expected {CACHE_VERSION}"
            )))
        }
        None => return Err(Error::Format("header lacks a version".into())),
    }
    let field = |p: Option<&str>, key: &str| -> Result<String> {
        p.and_then(|s| s.strip_prefix(key))
            .map(str::to_owned)
            .ok_or_else(|| Error::Format(format!("header lacks {key}")))
    };
    let kappa = field(parts.next(), "kappa=")?
        .parse()
        .map_err(|e| Error::Format(format!("kappa: {e}")))?;
    let n = field(parts.next(), "N=")?
        .parse()
        .map_err(|e| Error::Format(format!("N: {e}")))?;
    Ok((kappa, n))
}

fn parse_fraction(s: &str) -> Option<(BigInt, BigInt)> {
    let (num, den) = s.split_once('/')?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some((num.parse().ok()?, den))
}

/// Loads a cache file, checking its checksum and recomputing c and b.
pub fn load_table(path: &Path) -> Result<CoefficientTable> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::Format(format!("{}: empty file", path.display()))),
    };
    let (kappa, n_max) = parse_header(header.trim())?;
    let spec = EigenformSpec::new(kappa, CoefficientSource::ExternalFile, n_max)?;

    let mut a = Vec::with_capacity(n_max);
    let mut stored = Vec::with_capacity(n_max);
    let mut checksum: Option<u64> = None;
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let parse_err = |message: &str| Error::Parse {
            path: path.to_path_buf(),
            line: lineno,
            message: message.into(),
        };
        if let Some(rest) = line.strip_prefix("CHECKSUM ") {
            checksum = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| parse_err("checksum is not an integer"))?,
            );
            break;
        }
        if a.len() == n_max {
            return Err(parse_err("more rows than the header announces"));
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(parse_err("expected `n a_n c_num/c_den b_num/b_den`"));
        }
        let n: u64 = f[0].parse().map_err(|_| parse_err("bad index"))?;
        let expected = a.len() as u64 + 1;
        if n != expected {
            return Err(Error::Contiguity { expected, found: n });
        }
        a.push(f[1].parse::<BigInt>().map_err(|_| parse_err("bad a_n"))?);
        let c = parse_fraction(f[2]).ok_or_else(|| parse_err("bad c_n"))?;
        let b = parse_fraction(f[3]).ok_or_else(|| parse_err("bad b_n"))?;
        stored.push((c, b));
    }
    let Some(expected_sum) = checksum else {
        return Err(Error::Checksum(format!(
            "{}: missing checksum line (truncated?)",
            path.display()
        )));
    };
    if a.len() != n_max {
        return Err(Error::Checksum(format!(
            "{} rows present, header announces {n_max}",
            a.len()
        )));
    }
    let mut sum = BigInt::zero();
    for v in &a {
        sum += v;
    }
    let actual = sum.mod_floor(&BigInt::from(CHECKSUM_MODULUS));
    if actual != BigInt::from(expected_sum) {
        return Err(Error::Checksum(format!(
            "stored {expected_sum}, computed {actual}"
        )));
    }
    if !a[0].is_one() {
        return Err(Error::Normalization(a[0].to_string()));
    }

    let c = build_c(&a, kappa, n_max)?;
    let b = build_b(&c, n_max)?;
    for (i, ((cn, cd), (bn, bd))) in stored.iter().enumerate() {
        let n = i + 1;
        let den = c.denom(n);
        if cn * &den != c.numer(n) * cd || bn * &den != b.numer(n) * bd {
            return Err(Error::Consistency(format!(
                "stored c or b at n = {n} disagrees with a(n)"
            )));
        }
    }
    Ok(CoefficientTable::assemble(spec, a, c, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.coef");
        let t = CoefficientTable::discriminant(300).unwrap();
        save_table(&t, &path).unwrap();
        assert_eq!(load_table(&path).unwrap(), t);
    }

    #[test]
    fn truncated_and_empty_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.coef");
        save_table(&CoefficientTable::discriminant(20).unwrap(), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let cut: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        fs::write(&path, cut).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Checksum(_))));

        fs::write(&path, "").unwrap();
        assert!(matches!(load_table(&path), Err(Error::Format(_))));
    }

    #[test]
    fn version_and_checksum_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.coef");
        save_table(&CoefficientTable::discriminant(5).unwrap(), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();

        fs::write(&path, text.replacen(" v1 ", " v2 ", 1)).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Version(_))));

        let bad = text.replace("CHECKSUM ", "CHECKSUM 1");
        fs::write(&path, bad).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Checksum(_))));
    }

    #[test]
    fn tampered_c_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.coef");
        save_table(&CoefficientTable::discriminant(5).unwrap(), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("2 -24 576/2048", "2 -24 577/2048", 1)).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Consistency(_))));
    }

    #[test]
    fn ingest_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");

        fs::write(&path, "1 1\n2 -24\n4 -1472\n").unwrap();
        assert!(matches!(
            ingest_coefficients(&path, 12),
            Err(Error::Contiguity {
                expected: 3,
                found: 4
            })
        ));

        fs::write(&path, "1 2\n2 -24\n").unwrap();
        assert!(matches!(
            ingest_coefficients(&path, 12),
            Err(Error::Normalization(_))
        ));

        fs::write(&path, "1 1\n2 x\n").unwrap();
        assert!(matches!(
            ingest_coefficients(&path, 12),
            Err(Error::Parse { line: 2, .. })
        ));

        fs::write(&path, "# weight 12\n1 1\n\n2 -24\n3 252\n").unwrap();
        let ing = ingest_coefficients(&path, 12).unwrap();
        assert!(ing.warnings.is_empty());
        assert_eq!(ing.table.len(), 3);
    }

    #[test]
    fn ingest_warns_on_deligne_violation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");
        fs::write(&path, "1 1\n2 90\n").unwrap();
        let ing = ingest_coefficients(&path, 12).unwrap();
        assert!(ing.warnings.is_empty());
        fs::write(&path, "1 1\n2 100000\n").unwrap();
        let ing = ingest_coefficients(&path, 12).unwrap();
        assert_eq!(ing.warnings.len(), 1);
    }

    #[test]
    fn export_ingest_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");
        let t = CoefficientTable::discriminant(200).unwrap();
        export_coefficients(&t, &path).unwrap();
        assert_eq!(ingest_coefficients(&path, 12).unwrap().table, t);
    }

    #[test]
    fn csv_layout() {
        let t = CoefficientTable::discriminant(3).unwrap();
        let mut out = Vec::new();
        write_csv(&t, &mut out).unwrap();
        let s = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# RSZETA-COEFS v1 kappa=12 N=3");
        assert_eq!(lines[1], "n,a_n,c_n,b_n");
        assert!(lines[3].starts_with("2,-24,576/2048,"));
    }
}
