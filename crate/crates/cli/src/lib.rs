//! `bvinf` command-line front end.
//!
//! Every subcommand resolves one function (`--anf`, `--table` or
//! `--random`), runs a single library operation and prints a report as
//! JSON (default) or CSV. Exit codes: 0 on success, 1 when `verify` finds
//! a failing identity, 2 on argument or input errors.

pub mod args;
pub mod source;

use std::io::Write;
use std::time::Instant;

use bvinf::estimate::{classical_all, classical_estimate, hoeffding_failure_bound, QueryLedger};
use bvinf::verify::{all_passed, verify_identities};
use bvinf::*;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::args::{Cli, Command, Format};
use crate::source::{resolve, SourceError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Estimate(#[from] bvinf::estimate::EstimateError),
    #[error(transparent)]
    Learn(#[from] bvinf::learn::LearnError),
    #[error(transparent)]
    Function(#[from] BoolFnError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    parameters: Map<String, Value>,
    results: Value,
    timing: Timing,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

/// Result of one command before rendering.
struct Outcome {
    parameters: Map<String, Value>,
    results: Value,
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
    failed: bool,
}

impl Outcome {
    fn new(results: Value, columns: &'static [&'static str], rows: Vec<Vec<String>>) -> Self {
        Outcome { parameters: Map::new(), results, columns, rows, failed: false }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }
}

/// Decimal rendering with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn exact(d: Dyadic) -> Value {
    json!({ "fraction": d.to_string(), "decimal": sig17(d.to_f64()) })
}

fn bit_string(y: u32, n: usize) -> String {
    (0..n).map(|k| if (y >> k) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses `argv` (program name first) and runs it, writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let start = Instant::now();
    let common = cli.command.common().clone();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "bvinf {}: error: {e}", cli.command.name());
            return 2;
        }
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name(),
        parameters: outcome.parameters,
        results: outcome.results,
        timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
    };
    let written = match common.format {
        Format::Json => serde_json::to_string_pretty(&report)
            .map_err(|e| e.to_string())
            .and_then(|s| writeln!(out, "{s}").map_err(|e| e.to_string())),
        Format::Csv => write_csv(out, outcome.columns, &outcome.rows),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "bvinf: cannot write report: {e}");
        return 2;
    }
    i32::from(outcome.failed)
}

fn write_csv(out: &mut dyn Write, columns: &[&str], rows: &[Vec<String>]) -> Result<(), String> {
    let mut w = csv::Writer::from_writer(out);
    let version = SCHEMA_VERSION.to_string();
    w.write_record(std::iter::once("schema_version").chain(columns.iter().copied()))
        .map_err(|e| e.to_string())?;
    for row in rows {
        w.write_record(std::iter::once(version.as_str()).chain(row.iter().map(String::as_str)))
            .map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    let common = command.common();
    let spec = resolve(common)?;
    let f = spec.table;
    let n = f.n();
    let seed = common.seed.unwrap_or_else(rand::random);

    let outcome = match command {
        Command::Influence(_) => influence(&f),
        Command::Spectrum(_) => spectrum(&f),
        Command::BvSample { m, .. } => {
            if *m == 0 {
                return Err(CliError::Invalid("--m must be at least 1".into()));
            }
            let batch = bv_sample(&bv_distribution(&walsh_spectrum(&f)), *m, seed);
            let rows = batch
                .outcomes
                .iter()
                .enumerate()
                .map(|(k, &y)| vec![(k + 1).to_string(), y.to_string(), bit_string(y, n)])
                .collect();
            let results = json!({
                "n": n,
                "outcomes": batch.outcomes,
                "column_ones": batch.column_ones(),
            });
            Outcome::new(results, &["sample", "outcome", "bits_x1_first"], rows).param("m", m).param("seed", seed)
        }
        Command::Estimate { m, confidence, .. } => {
            if !(*confidence > 0.0 && *confidence < 1.0) {
                return Err(CliError::Invalid(format!("--confidence {confidence} outside (0, 1)")));
            }
            let report = algorithm1(&QuantumOracle::new(f), *m, seed)?;
            let epsilon = report.epsilon_at(*confidence)?;
            let rows = (0..n)
                .map(|k| {
                    vec![
                        (k + 1).to_string(),
                        report.ones[k].to_string(),
                        m.to_string(),
                        sig17(report.estimates[k]),
                    ]
                })
                .collect();
            let mut results = serde_json::to_value(&report).expect("serializable");
            results["confidence"] = json!(confidence);
            results["epsilon"] = json!(epsilon);
            results["failure_bound_at_epsilon"] = json!(hoeffding_failure_bound(*m, epsilon));
            Outcome::new(results, &["variable", "ones", "m", "estimate"], rows)
                .param("m", m)
                .param("confidence", confidence)
                .param("seed", seed)
        }
        Command::ListInfluential { m, c, .. } => {
            let list = influential_list(&QuantumOracle::new(f), *m, *c, seed)?;
            let rows = (1..=n)
                .map(|i| vec![i.to_string(), list.ones[i - 1].to_string(), list.variables.contains(&i).to_string()])
                .collect();
            Outcome::new(serde_json::to_value(&list).expect("serializable"), &["variable", "ones", "listed"], rows)
                .param("m", m)
                .param("c", c)
                .param("seed", seed)
        }
        Command::Learn2 { rho, .. } => {
            let report = algorithm2(&QuantumOracle::new(f), *rho, seed)?;
            learn_outcome(&report).param("rho", rho).param("seed", seed)
        }
        Command::Learn3 { lambda, epsilon, .. } => {
            let report = algorithm3(&QuantumOracle::new(f), *lambda, *epsilon, seed)?;
            learn_outcome(&report).param("lambda", lambda).param("epsilon", epsilon).param("seed", seed)
        }
        Command::Classical { m, i, .. } => {
            let estimates = match i {
                Some(i) => vec![classical_estimate(&f, *i, *m, seed)?],
                None => classical_all(&f, *m, seed)?,
            };
            let rows = estimates
                .iter()
                .map(|e| {
                    vec![
                        e.variable.to_string(),
                        e.changed.to_string(),
                        e.m.to_string(),
                        sig17(e.estimate),
                        e.oracle_calls.to_string(),
                    ]
                })
                .collect();
            let results = json!({ "estimates": estimates, "ledger": QueryLedger::new(n, *m) });
            Outcome::new(results, &["variable", "changed", "m", "estimate", "oracle_calls"], rows)
                .param("m", m)
                .param("i", i)
                .param("seed", seed)
        }
        Command::Verify(_) => {
            let checks = verify_identities(&f);
            let passed = all_passed(&checks);
            let rows = checks
                .iter()
                .map(|c| {
                    let status = serde_json::to_value(c.status).expect("serializable");
                    vec![c.identity.to_string(), status.as_str().unwrap_or_default().to_string(), c.detail.clone()]
                })
                .collect();
            let mut o = Outcome::new(
                json!({ "all_passed": passed, "checks": checks }),
                &["identity", "status", "detail"],
                rows,
            );
            o.failed = !passed;
            o
        }
    };
    let mut parameters = Map::new();
    parameters.insert("function".into(), spec.description);
    parameters.insert("n".into(), json!(n));
    parameters.extend(outcome.parameters);
    Ok(Outcome { parameters, ..outcome })
}

fn influence(f: &TruthTable) -> Outcome {
    let v = influence_vector(f);
    let rows = v
        .values
        .iter()
        .enumerate()
        .map(|(k, d)| vec![(k + 1).to_string(), d.to_string(), sig17(d.to_f64())])
        .collect();
    let results = json!({
        "values": v.as_f64(),
        "exact": v.values.iter().map(|d| exact(*d)).collect::<Vec<_>>(),
        "total": exact(v.total),
    });
    Outcome::new(results, &["variable", "fraction", "decimal"], rows)
}

fn spectrum(f: &TruthTable) -> Outcome {
    let s = walsh_spectrum(f);
    let d = bv_distribution(&s);
    let probabilities: Vec<String> = d.probabilities().iter().map(Dyadic::to_string).collect();
    let rows = (0..f.len())
        .map(|y| {
            vec![y.to_string(), bit_string(y as u32, f.n()), s.coefficients()[y].to_string(), probabilities[y].clone()]
        })
        .collect();
    let results = json!({ "walsh": s.coefficients(), "probabilities": probabilities });
    Outcome::new(results, &["y", "bits_x1_first", "walsh", "probability"], rows)
}

fn learn_outcome(report: &LearnReport) -> Outcome {
    let rows = report
        .variables
        .iter()
        .map(|v| {
            let class = serde_json::to_value(v.class).expect("serializable");
            vec![
                v.variable.to_string(),
                class.as_str().unwrap_or_default().to_string(),
                v.ones.to_string(),
                v.trials.to_string(),
                sig17(v.observed),
            ]
        })
        .collect();
    Outcome::new(
        serde_json::to_value(report).expect("serializable"),
        &["variable", "class", "ones", "trials", "observed"],
        rows,
    )
}
