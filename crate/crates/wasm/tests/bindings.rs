use bvinf_wasm::{classify_json, influence_profile_json, sample_estimates_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn profile_of_and2() {
    let doc = parse(influence_profile_json("x1*x2", 2).unwrap());
    assert_eq!(doc["influences"]["fractions"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(doc["probabilities"], serde_json::json!([0.25, 0.25, 0.25, 0.25]));
}

#[test]
fn estimates_trace_ends_at_report() {
    let doc = parse(sample_estimates_json("x1 + x2*x3", 4, 1000, 9).unwrap());
    let trace = doc["trace"].as_array().unwrap();
    assert!(trace.len() <= 200);
    let last = trace.last().unwrap();
    assert_eq!(last["runs"], 1000);
    assert_eq!(last["estimates"], doc["estimates"]);
    assert_eq!(doc["estimates"][0], 1.0);
    assert_eq!(doc["estimates"][3], 0.0);
    let hist: u64 = doc["histogram"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(hist, 1000);
}

#[test]
fn classify_reports_classes() {
    let doc = parse(classify_json("x1 + x2*x3 + x4*x5*x6", 6, 2000, 0.1, 1).unwrap());
    let classes: Vec<&str> =
        doc["report"]["variables"].as_array().unwrap().iter().map(|v| v["class"].as_str().unwrap()).collect();
    assert_eq!(classes, ["linear", "quadratic", "quadratic", "cubic", "cubic", "cubic"]);
}

#[test]
fn errors_are_messages() {
    assert!(influence_profile_json("x3", 2).unwrap_err().contains("out of range"));
    assert!(influence_profile_json("x1", 13).is_err());
    assert!(sample_estimates_json("x1", 1, 0, 1).is_err());
    assert!(classify_json("x1", 1, 100, 0.3, 1).is_err());
}
