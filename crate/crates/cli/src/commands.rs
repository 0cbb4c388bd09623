//! One function per subcommand. Each returns the manifest parameters and
//! the checksum of the table it used.

use num_complex::Complex64;
use rszeta_core::coeffs::{ingest_coefficients, save_table, write_csv};
use rszeta_core::eval::{
    estimate_c_hat, estimate_k_hat, evaluate_afe, hardy_z_complex, z_afe, z_afe_smoothed, z_direct,
    CalibrationOptions,
};
use rszeta_core::experiments::{
    default_delta_grid, delta_scan, mean_value_scan, scan_grid, zero_scan, MeanValueOptions,
};
use rszeta_core::{
    AfeConfig, AfeConstants, CoefficientSource, CoefficientTable, ComplexPoint, EigenformSpec,
    SmoothWeight,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    CalibrateArgs, CoeffsArgs, DeltaArgs, EvalArgs, HardyArgs, MeanValueArgs, Method,
};
use crate::output::{num, round15, validation, with_output, CliResult, Failure, JsonComplex};
use crate::table::{self, calibration_for, sidecar_path, Loaded};

pub struct Ran {
    pub params: Value,
    pub checksum: Option<u64>,
}

fn params<A: Serialize>(args: &A, loaded: Option<&Loaded>) -> CliResult<Value> {
    let mut v = serde_json::to_value(args)?;
    if let (Some(l), Value::Object(map)) = (loaded, &mut v) {
        map.insert("table_source".into(), Value::String(l.source()));
    }
    Ok(v)
}

pub fn coeffs(args: &CoeffsArgs) -> CliResult<Ran> {
    let table = match &args.coeff_file {
        Some(path) => {
            let ingested = ingest_coefficients(path, args.weight).map_err(|e| match e {
                rszeta_core::Error::Io(io) => Failure::Io(format!("{}: {io}", path.display())),
                other => other.into(),
            })?;
            for w in &ingested.warnings {
                eprintln!("warning: {w}");
            }
            truncate(ingested.table, args.max_n)?
        }
        None => {
            let Some(n) = args.max_n else {
                return validation("--max-n is required without --coeff-file");
            };
            let spec = EigenformSpec::new(args.weight, CoefficientSource::BuiltinDiscriminant, n)?;
            CoefficientTable::discriminant(spec.max_n())?
        }
    };
    if args.csv {
        with_output(Some(&args.out), |w| Ok(write_csv(&table, w)?))?;
    } else {
        save_table(&table, &args.out).map_err(|e| match e {
            rszeta_core::Error::Io(io) => Failure::Io(format!("{}: {io}", args.out.display())),
            other => other.into(),
        })?;
    }
    println!(
        "N={} kappa={} checksum={}",
        table.len(),
        table.weight(),
        table.checksum()
    );
    Ok(Ran {
        params: params(args, None)?,
        checksum: Some(table.checksum()),
    })
}

fn truncate(table: CoefficientTable, max_n: Option<usize>) -> CliResult<CoefficientTable> {
    match max_n {
        None => Ok(table),
        Some(n) if n == table.len() => Ok(table),
        Some(n) if n > table.len() => validation(format!(
            "--max-n {n} exceeds the {} coefficients in the file",
            table.len()
        )),
        Some(n) => {
            let spec = EigenformSpec::new(table.weight(), CoefficientSource::ExternalFile, n)?;
            Ok(CoefficientTable::from_coefficients(
                spec,
                table.a_values()[..n].to_vec(),
            )?)
        }
    }
}

fn split_config(args: &EvalArgs, kappa: u32) -> CliResult<AfeConfig> {
    let t = args.t;
    Ok(match (args.x, args.split_ratio) {
        (Some(x), _) => AfeConfig::with_x(t, x, kappa)?,
        (None, Some(r)) => AfeConfig::with_ratio(t, r, kappa)?,
        (None, None) => AfeConfig::symmetric(t, kappa)?,
    })
}

pub fn eval(args: &EvalArgs) -> CliResult<Ran> {
    let point = ComplexPoint::new(args.sigma, args.t)?;
    if !(0.0..=1.0).contains(&args.sigma) && args.method != Method::Direct {
        return validation(
            format!(
                "the {:?} expansion needs 0 <= σ <= 1, got {}",
                args.method, args.sigma
            )
            .to_lowercase(),
        );
    }
    let loaded = table::resolve(&args.table)?;
    let table = &loaded.table;
    let mut fields: Vec<(&str, Value)> = vec![
        ("method", json!(args.method)),
        ("t", json!(round15(args.t))),
        ("sigma", json!(round15(args.sigma))),
    ];
    match args.method {
        Method::Sharp => {
            let constants = if args.uncalibrated {
                AfeConstants::default()
            } else {
                calibration_for(&loaded)?.constants()
            };
            let cfg = split_config(args, table.weight())?.with_constants(constants);
            let b = evaluate_afe(point, &cfg, table)?;
            fields.extend(config_fields(&cfg));
            fields.extend([
                ("C1", json!(round15(constants.c1))),
                ("C2", json!(round15(constants.c2))),
                ("sum_x", complex(b.sum_x)),
                ("sum_y", complex(b.sum_y)),
                ("corr_x", complex(b.corr_x)),
                ("corr_y", complex(b.corr_y)),
                ("value", complex(b.value)),
                ("error_budget", json!(round15(b.error_budget))),
            ]);
        }
        Method::Smoothed => {
            if args.sigma != 0.5 {
                return validation(format!(
                    "the smoothed expansion is only available on σ = 1/2, got {}",
                    args.sigma
                ));
            }
            let cfg = split_config(args, table.weight())?;
            let w = SmoothWeight::default();
            let value = z_afe_smoothed(args.t, cfg.x(), cfg.y(), &w, table)?;
            // Reported against the sharp budget at the same split.
            let budget = z_afe(point, &cfg, table)?.error_budget;
            fields.extend(config_fields(&cfg));
            fields.extend([
                ("weight_edge", json!(round15(w.edge()))),
                ("value", complex(value)),
                ("error_budget", json!(round15(budget))),
            ]);
        }
        Method::Direct => {
            if args.x.is_some() || args.split_ratio.is_some() {
                return validation(
                    "--x and --split-ratio apply to the expansions, not the direct series",
                );
            }
            let c_hat = estimate_c_hat(table)?;
            let k_hat = estimate_k_hat(table, c_hat);
            let d = z_direct(point, table, table.len(), c_hat, k_hat)?;
            fields.extend([
                ("N", json!(table.len())),
                ("C_hat", json!(round15(c_hat))),
                ("K_hat", json!(round15(k_hat))),
                ("value", complex(d.value)),
                ("error_budget", json!(round15(d.error_bound))),
            ]);
        }
    }
    with_output(args.out.as_deref(), |w| {
        if args.json {
            let map: serde_json::Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            writeln!(w, "{}", serde_json::to_string_pretty(&Value::Object(map))?)?;
        } else {
            for (k, v) in &fields {
                writeln!(w, "{k} = {}", text(v))?;
            }
        }
        Ok(())
    })?;
    Ok(Ran {
        params: params(args, Some(&loaded))?,
        checksum: Some(table.checksum()),
    })
}

fn config_fields(cfg: &AfeConfig) -> [(&'static str, Value); 3] {
    [
        ("x", json!(round15(cfg.x()))),
        ("y", json!(round15(cfg.y()))),
        ("h", json!(round15(cfg.h()))),
    ]
}

fn complex(z: Complex64) -> Value {
    json!(JsonComplex::from(z))
}

/// Text rendering of a JSON field: numbers with fifteen digits, complex
/// numbers as `re im`.
fn text(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Object(m) => format!("{} {}", text(&m["re"]), text(&m["im"])),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn constants_for(loaded: &Loaded, calibrated: bool) -> CliResult<AfeConstants> {
    Ok(if calibrated {
        calibration_for(loaded)?.constants()
    } else {
        AfeConstants::default()
    })
}

pub fn hardy(args: &HardyArgs) -> CliResult<Ran> {
    if !(args.t_min >= 3.0) {
        return validation(format!("--t-min must be at least 3, got {}", args.t_min));
    }
    if !(args.t_max > args.t_min) {
        return validation("--t-max must exceed --t-min");
    }
    if !(args.step > 0.0 && args.step.is_finite()) {
        return validation("--step must be positive");
    }
    let loaded = table::resolve(&args.table)?;
    let table = &loaded.table;
    let constants = constants_for(&loaded, args.calibrated)?;
    let grid = scan_grid(args.t_min, args.t_max, args.step);
    let mut rows = Vec::with_capacity(grid.len());
    for &t in &grid {
        let cfg = AfeConfig::symmetric(t, table.weight())?.with_constants(constants);
        let v = hardy_z_complex(t, &cfg, table)?;
        rows.push((t, v.value.re, v.value.im.abs(), v.error_budget));
    }
    let scan = if args.scan_zeros {
        let s = zero_scan(table, args.t_min, args.t_max, args.step, &constants)?;
        for w in &s.warnings {
            eprintln!("warning: {w}");
        }
        Some(s)
    } else {
        None
    };
    with_output(args.out.as_deref(), |w| {
        writeln!(
            w,
            "# rszeta-hardy t_min={} t_max={} step={} C1={} C2={}",
            args.t_min,
            args.t_max,
            args.step,
            num(constants.c1),
            num(constants.c2)
        )?;
        writeln!(w, "t,hardy_z,im_residue,error_budget")?;
        for (t, z, im, budget) in &rows {
            writeln!(w, "{},{},{},{}", num(*t), num(*z), num(*im), num(*budget))?;
        }
        if let Some(s) = &scan {
            for b in &s.brackets {
                writeln!(w, "# zero {} {}", num(b.lo), num(b.hi))?;
            }
        }
        Ok(())
    })?;
    Ok(Ran {
        params: params(args, Some(&loaded))?,
        checksum: Some(table.checksum()),
    })
}

pub fn delta(args: &DeltaArgs) -> CliResult<Ran> {
    let loaded = table::resolve(&args.table)?;
    let table = &loaded.table;
    let grid = match &args.x_grid {
        Some(g) => g.clone(),
        None => default_delta_grid(table.len()),
    };
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return validation("--x-grid must be strictly increasing");
    }
    if let Some(&last) = grid.last() {
        if last > table.len() as f64 {
            return validation(format!(
                "grid reaches x = {last} but the table stops at N = {}",
                table.len()
            ));
        }
    }
    let c_hat = estimate_c_hat(table)?;
    let report = delta_scan(table, &grid, c_hat)?;
    with_output(args.out.as_deref(), |w| Ok(report.write_csv(w)?))?;
    Ok(Ran {
        params: params(args, Some(&loaded))?,
        checksum: Some(table.checksum()),
    })
}

pub fn meanvalue(args: &MeanValueArgs) -> CliResult<Ran> {
    let loaded = table::resolve(&args.table)?;
    let table = &loaded.table;
    if args.x_grid.windows(2).any(|w| w[0] >= w[1]) {
        return validation("--x-grid must be strictly increasing");
    }
    let opts = MeanValueOptions {
        step: args.step,
        constants: constants_for(&loaded, args.calibrated)?,
        ..Default::default()
    };
    let report = mean_value_scan(table, &args.x_grid, &opts)?;
    with_output(args.out.as_deref(), |w| Ok(report.write_csv(w)?))?;
    Ok(Ran {
        params: params(args, Some(&loaded))?,
        checksum: Some(table.checksum()),
    })
}

pub fn calibrate(args: &CalibrateArgs) -> CliResult<Ran> {
    let loaded = table::resolve(&args.table)?;
    let opts = CalibrationOptions {
        sigma: args.sigma,
        t_grid: args.t_grid.clone(),
        free: args.free_constants,
    };
    let rec = table::calibrate(&loaded.table, &opts)?;
    let json = table::to_json(&rec)?;
    let out = args
        .out
        .clone()
        .or_else(|| loaded.path.as_deref().map(sidecar_path));
    with_output(out.as_deref(), |w| Ok(w.write_all(json.as_bytes())?))?;
    Ok(Ran {
        params: params(args, Some(&loaded))?,
        checksum: Some(loaded.table.checksum()),
    })
}
