//! Verification and reproduction driver.
//!
//! Subcommands run the invariant suites, re-derive the obstruction
//! polynomials, compute deformed central charges and print universal
//! deformation tables, emitting byte-stable JSON reports
//! (`{schema, command, params, results}` with canonical polynomial strings).
//!
//! Exit codes: 0 all checks pass, 1 a check failed or a computation errored,
//! 2 usage or configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use psdeform::charges::{restrict_charge_semidirect, restrict_charge_vect};
use psdeform::deformations::{ansatz_to_json, defect, solve_corrections, universal_deformation};
use psdeform::verify::{run_suites, Status, VerifyConfig, SUITE_NAMES};
use psdeform::{PolyScalar, Var};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "psdeform",
    version,
    about = "exact symbol-calculus verification and reproduction driver"
)]
struct Cli {
    /// Key/value config file providing defaults for floor, format, samples,
    /// suites and out.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,

    /// Accuracy floor for deep computations.
    #[arg(long, global = true, allow_hyphen_values = true)]
    floor: Option<i32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the invariant suites (algebra, trace, maps, cocycles, central).
    Verify {
        /// Suite names to run; repeatable. Default: all.
        #[arg(long = "suite")]
        suites: Vec<String>,

        /// Randomized samples per randomized check.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Re-derive the correction polynomials and the quartic integrability
    /// condition.
    Obstructions {
        /// "symbolic" (or "h") for symbolic h, else a rational like 1 or 2/3.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        h: String,
    },
    /// Pull the central cocycle back along a deformed embedding and report
    /// the class coefficients.
    Charge {
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        h: String,
        /// Pull back along the semidirect-product embedding instead of the
        /// vector-field one.
        #[arg(long)]
        semidirect: bool,
    },
    /// Print the universal deformation coefficient table.
    Deform {
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        h: String,
    },
}

/// Defaults read from the config file; flags override.
#[derive(Default, Debug)]
struct FileConfig {
    floor: Option<i32>,
    format: Option<OutFormat>,
    samples: Option<usize>,
    suites: Option<Vec<String>>,
    out: Option<PathBuf>,
}

fn parse_config(path: &PathBuf) -> Result<FileConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("{}: cannot read config: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            ));
        };
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            format!(
                "{}:{}: invalid {what}: `{value}`",
                path.display(),
                lineno + 1
            )
        };
        match key {
            "floor" => cfg.floor = Some(value.parse().map_err(|_| bad("floor"))?),
            "samples" => cfg.samples = Some(value.parse().map_err(|_| bad("samples"))?),
            "format" => {
                cfg.format = Some(match value {
                    "json" => OutFormat::Json,
                    "text" => OutFormat::Text,
                    _ => return Err(bad("format")),
                })
            }
            "suites" => {
                cfg.suites = Some(
                    value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                )
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            other => {
                return Err(format!(
                    "{}:{}: unknown config key `{other}`",
                    path.display(),
                    lineno + 1
                ))
            }
        }
    }
    Ok(cfg)
}

/// Parse a deformation-parameter value: "symbolic", the parameter's own
/// name, or an exact rational `n` / `n/d`.
fn parse_param(flag: &str, value: &str, var: Var) -> Result<PolyScalar, String> {
    if value == "symbolic" || value == var.name() || (var == Var::Lambda && value == "lambda") {
        return Ok(PolyScalar::var(var));
    }
    let parse_int = |s: &str| s.parse::<i64>().ok();
    let poly = match value.split_once('/') {
        Some((n, d)) => match (parse_int(n.trim()), parse_int(d.trim())) {
            (Some(n), Some(d)) if d != 0 => Some(PolyScalar::ratio(n, d)),
            _ => None,
        },
        None => parse_int(value.trim()).map(PolyScalar::from_int),
    };
    poly.ok_or_else(|| {
        format!(
            "--{flag}: expected `symbolic`, `{}` or a rational, got `{value}`",
            var.name()
        )
    })
}

fn result_row(name: &str, status: &str, detail: Value) -> Value {
    json!({ "name": name, "status": status, "detail": detail })
}

fn envelope(command: &str, params: BTreeMap<String, String>, results: &[Value]) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "params": params,
        "results": results,
    })
}

fn render(report: &Value, format: OutFormat) -> String {
    match format {
        OutFormat::Json => format!("{}\n", serde_json::to_string_pretty(report).unwrap()),
        OutFormat::Text => {
            let mut lines = Vec::new();
            lines.push(format!(
                "# {} report",
                report["command"].as_str().unwrap_or("?")
            ));
            if let Some(rows) = report["results"].as_array() {
                for row in rows {
                    let status = row["status"].as_str().unwrap_or("?").to_uppercase();
                    let name = row["name"].as_str().unwrap_or("?");
                    let detail = match &row["detail"] {
                        Value::String(s) => s.clone(),
                        other => serde_json::to_string(other).unwrap(),
                    };
                    lines.push(format!("{status:5} {name}: {detail}"));
                }
            }
            lines.join("\n") + "\n"
        }
    }
}

/// Report payload, output format/destination, and whether all checks passed.
type RunOutcome = (Value, OutFormat, Option<PathBuf>, bool);

fn run(cli: Cli) -> Result<RunOutcome, (u8, String)> {
    let file_cfg = match &cli.config {
        Some(path) => parse_config(path).map_err(|e| (2u8, e))?,
        None => FileConfig::default(),
    };
    let floor = cli.floor.or(file_cfg.floor).unwrap_or(-10);
    let format = cli.format.or(file_cfg.format).unwrap_or(OutFormat::Json);
    let out = cli.out.clone().or(file_cfg.out);
    let usage = |e: String| (2u8, e);

    let (report, ok) = match &cli.command {
        Command::Verify { suites, samples } => {
            let suites = if suites.is_empty() {
                file_cfg.suites.unwrap_or_default()
            } else {
                suites.clone()
            };
            let cfg = VerifyConfig {
                floor,
                samples: samples.or(file_cfg.samples).unwrap_or(50),
                suites: suites.clone(),
            };
            let outcomes = run_suites(&cfg);
            let ok = outcomes.iter().all(|r| r.status == Status::Pass);
            let results: Vec<Value> = outcomes
                .into_iter()
                .map(|r| result_row(&r.name, r.status.as_str(), Value::String(r.detail)))
                .collect();
            let mut params = BTreeMap::new();
            params.insert("floor".into(), floor.to_string());
            params.insert("samples".into(), cfg.samples.to_string());
            params.insert(
                "suites".into(),
                if suites.is_empty() {
                    SUITE_NAMES.join(",")
                } else {
                    suites.join(",")
                },
            );
            (envelope("verify", params, &results), ok)
        }
        Command::Obstructions { h } => {
            let h_poly = parse_param("h", h, Var::H).map_err(usage)?;
            if floor > -8 {
                return Err((2, format!("obstructions needs --floor <= -8, got {floor}")));
            }
            let mut params = BTreeMap::new();
            params.insert("h".into(), h_poly.to_string());
            params.insert("floor".into(), floor.to_string());
            let (row, ok) = match solve_corrections(&h_poly, floor) {
                Ok(report) => (result_row("obstructions", "pass", report.to_json()), true),
                Err(e) => (
                    result_row("obstructions", "error", Value::String(e.to_string())),
                    false,
                ),
            };
            (envelope("obstructions", params, &[row]), ok)
        }
        Command::Charge {
            lambda,
            mu,
            nu,
            h,
            semidirect,
        } => {
            let lambda = parse_param("lambda", lambda, Var::Lambda).map_err(usage)?;
            let mu = parse_param("mu", mu, Var::Mu).map_err(usage)?;
            let nu = parse_param("nu", nu, Var::Nu).map_err(usage)?;
            let h_poly = parse_param("h", h, Var::H).map_err(usage)?;
            let mut params = BTreeMap::new();
            params.insert("lambda".into(), lambda.to_string());
            params.insert("mu".into(), mu.to_string());
            params.insert("nu".into(), nu.to_string());
            params.insert("h".into(), h_poly.to_string());
            params.insert("floor".into(), floor.to_string());
            params.insert("semidirect".into(), semidirect.to_string());
            if floor > -4 {
                return Err((2, format!("charge needs --floor <= -4, got {floor}")));
            }
            let outcome = if *semidirect {
                restrict_charge_semidirect(&lambda, &mu, &nu, &h_poly)
            } else {
                let ansatz = universal_deformation(&lambda, &mu, &nu, &h_poly, floor);
                restrict_charge_vect(&ansatz, &h_poly)
            };
            let (row, ok) = match outcome {
                Ok(report) => (result_row("charge", "pass", report.to_json()), true),
                Err(e) => (
                    result_row("charge", "error", Value::String(e.to_string())),
                    false,
                ),
            };
            (envelope("charge", params, &[row]), ok)
        }
        Command::Deform { lambda, mu, nu, h } => {
            let lambda = parse_param("lambda", lambda, Var::Lambda).map_err(usage)?;
            let mu = parse_param("mu", mu, Var::Mu).map_err(usage)?;
            let nu = parse_param("nu", nu, Var::Nu).map_err(usage)?;
            let h_poly = parse_param("h", h, Var::H).map_err(usage)?;
            let mut params = BTreeMap::new();
            params.insert("lambda".into(), lambda.to_string());
            params.insert("mu".into(), mu.to_string());
            params.insert("nu".into(), nu.to_string());
            params.insert("h".into(), h_poly.to_string());
            params.insert("floor".into(), floor.to_string());
            let table = universal_deformation(&lambda, &mu, &nu, &h_poly, floor);
            let deeper = universal_deformation(&lambda, &mu, &nu, &h_poly, floor - 1);
            let flat = defect(&deeper, &h_poly, floor).is_zero();
            let mut detail = ansatz_to_json(&table);
            detail["defect_zero_to_floor"] = Value::Bool(flat);
            let status = if flat { "pass" } else { "fail" };
            let row = result_row("deform", status, detail);
            (envelope("deform", params, &[row]), flat)
        }
    };
    Ok((report, format, out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format, out, ok)) => {
            let text = render(&report, format);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((code, message)) => {
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
