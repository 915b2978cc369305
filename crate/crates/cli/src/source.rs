use std::fs;
use std::path::Path;

use bvinf::table_format::{parse_binary, parse_text, TableFormatError};
use bvinf::{random_function, Anf, BoolFnError, TruthTable};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::Common;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("--n is required with --anf")]
    MissingN,
    #[error("--random expects N:SEED, got `{0}`")]
    RandomSpec(String),
    #[error("--n {given} disagrees with the function's {actual} variables")]
    NMismatch { given: usize, actual: usize },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Table { path: String, source: TableFormatError },
    #[error(transparent)]
    Function(#[from] BoolFnError),
}

/// Where the function came from, resolved to its table.
pub struct FunctionSpec {
    pub description: Value,
    pub table: TruthTable,
}

pub fn resolve(common: &Common) -> Result<FunctionSpec, SourceError> {
    let spec = if let Some(text) = &common.anf {
        let n = common.n.ok_or(SourceError::MissingN)?;
        let anf = Anf::parse(text, n)?;
        FunctionSpec { description: json!({ "anf": anf.to_string() }), table: anf.to_truth_table() }
    } else if let Some(path) = &common.table {
        FunctionSpec { description: json!({ "table": path.display().to_string() }), table: read_table(path)? }
    } else {
        let raw = common.random.as_deref().unwrap_or_default();
        let (n, seed) = raw
            .split_once(':')
            .and_then(|(n, s)| Some((n.trim().parse::<usize>().ok()?, s.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| SourceError::RandomSpec(raw.to_string()))?;
        FunctionSpec {
            description: json!({ "random": { "n": n, "seed": seed } }),
            table: random_function(n, seed)?,
        }
    };
    if let Some(given) = common.n {
        if given != spec.table.n() {
            return Err(SourceError::NMismatch { given, actual: spec.table.n() });
        }
    }
    Ok(spec)
}

fn read_table(path: &Path) -> Result<TruthTable, SourceError> {
    let shown = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| SourceError::Io { path: shown.clone(), source })?;
    let parsed = if path.extension().is_some_and(|e| e == "ttb") {
        parse_binary(&bytes)
    } else {
        match std::str::from_utf8(&bytes) {
            Ok(text) => parse_text(text),
            Err(_) => Err(TableFormatError::MissingHeader),
        }
    };
    parsed.map_err(|source| SourceError::Table { path: shown, source })
}
