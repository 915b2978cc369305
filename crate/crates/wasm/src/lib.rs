//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain numbers and an ANF string and
//! returns a JSON document; the page draws it. The pure `*_json` functions
//! carry the logic so they can be tested off-wasm.

use bvinf::estimate::hoeffding_radius;
use bvinf::{algorithm1, algorithm3, Anf, QuantumOracle, TruthTable};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest function the page will handle; the page draws `2^n` bars.
pub const DEMO_MAX_VARS: usize = 12;

fn table(anf: &str, n: usize) -> Result<TruthTable, String> {
    if n > DEMO_MAX_VARS {
        return Err(format!("the demo is limited to n <= {DEMO_MAX_VARS}"));
    }
    Anf::parse(anf, n).map(|a| a.to_truth_table()).map_err(|e| e.to_string())
}

fn exact_influences(oracle: &QuantumOracle) -> Value {
    let v = oracle.influences();
    json!({
        "values": v.as_f64(),
        "fractions": v.values.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "total": v.total.to_f64(),
    })
}

/// Exact influences and the full circuit output law.
pub fn influence_profile_json(anf: &str, n: usize) -> Result<String, String> {
    let oracle = QuantumOracle::new(table(anf, n)?);
    let probabilities: Vec<f64> = oracle.distribution().probabilities().iter().map(|p| p.to_f64()).collect();
    let doc = json!({
        "n": n,
        "anf": Anf::from_truth_table(oracle.table()).to_string(),
        "influences": exact_influences(&oracle),
        "probabilities": probabilities,
    });
    Ok(doc.to_string())
}

/// `m` simulated runs: per-variable estimates next to the exact values,
/// with the 95% Hoeffding radius, plus the running estimate of every
/// influence after each run (thinned to at most 200 points).
pub fn sample_estimates_json(anf: &str, n: usize, m: usize, seed: u64) -> Result<String, String> {
    let oracle = QuantumOracle::new(table(anf, n)?);
    let report = algorithm1(&oracle, m, seed).map_err(|e| e.to_string())?;
    let batch = oracle.run(m, seed);
    let stride = m.div_ceil(200).max(1);
    let mut ones = vec![0u64; n];
    let mut trace = Vec::new();
    for (k, &y) in batch.outcomes.iter().enumerate() {
        for (i, count) in ones.iter_mut().enumerate() {
            *count += u64::from((y >> i) & 1);
        }
        let runs = k + 1;
        if runs % stride == 0 || runs == m {
            let p: Vec<f64> = ones.iter().map(|&l| l as f64 / runs as f64).collect();
            trace.push(json!({ "runs": runs, "estimates": p }));
        }
    }
    let doc = json!({
        "n": n,
        "m": m,
        "seed": seed,
        "exact": exact_influences(&oracle),
        "estimates": report.estimates,
        "total": report.total,
        "epsilon95": hoeffding_radius(m, 0.05).map_err(|e| e.to_string())?,
        "histogram": batch.histogram(),
        "trace": trace,
    });
    Ok(doc.to_string())
}

/// Degree classification of every variable.
pub fn classify_json(anf: &str, n: usize, lambda: usize, epsilon: f64, seed: u64) -> Result<String, String> {
    let oracle = QuantumOracle::new(table(anf, n)?);
    let report = algorithm3(&oracle, lambda, epsilon, seed).map_err(|e| e.to_string())?;
    let doc = json!({ "exact": exact_influences(&oracle), "report": report });
    Ok(doc.to_string())
}

#[wasm_bindgen]
pub fn influence_profile(anf: &str, n: usize) -> Result<String, JsError> {
    influence_profile_json(anf, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sample_estimates(anf: &str, n: usize, m: usize, seed: u64) -> Result<String, JsError> {
    sample_estimates_json(anf, n, m, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(anf: &str, n: usize, lambda: usize, epsilon: f64, seed: u64) -> Result<String, JsError> {
    classify_json(anf, n, lambda, epsilon, seed).map_err(|e| JsError::new(&e))
}
