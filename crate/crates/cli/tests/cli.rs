use std::process::Command;

use bvinf::table_format::{to_binary, to_text};
use bvinf::Anf;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bvinf").chain(args.iter().copied());
    let code = bvinf_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn influence_of_linear_plus_quadratic() {
    let report = run_json(&["influence", "--anf", "x1+x2*x3", "--n", "3"]);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["results"]["values"], serde_json::json!([1.0, 0.5, 0.5]));
    assert_eq!(report["results"]["exact"][1]["fraction"], "1/2");
    assert_eq!(report["results"]["total"]["fraction"], "2/1");
}

#[test]
fn estimate_and2_within_budget() {
    let report = run_json(&["estimate", "--anf", "x1*x2", "--n", "2", "--m", "10000", "--seed", "7"]);
    assert_eq!(report["parameters"]["seed"], 7);
    for p in report["results"]["estimates"].as_array().unwrap() {
        assert!((p.as_f64().unwrap() - 0.5).abs() < 0.05);
    }
}

#[test]
fn verify_random_function_passes() {
    let (code, out, _) = run(&["verify", "--random", "8:42"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["results"]["all_passed"], true);
}

#[test]
fn results_reproduce_and_json_round_trips() {
    let args = ["learn3", "--anf", "x1 + x2*x3 + x4*x5*x6", "--n", "7", "--seed", "3", "--lambda", "500"];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    let a: Value = serde_json::from_str(&first).unwrap();
    let b: Value = serde_json::from_str(&second).unwrap();
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["parameters"], b["parameters"]);
    assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", first);
    assert_eq!(a["results"]["variables"][3]["class"], "cubic");
}

#[test]
fn omitted_seed_is_recorded() {
    let report = run_json(&["bv-sample", "--random", "4:1", "--m", "5"]);
    let seed = report["parameters"]["seed"].as_u64().expect("seed recorded");
    let replay = run_json(&["bv-sample", "--random", "4:1", "--m", "5", "--seed", &seed.to_string()]);
    assert_eq!(report["results"], replay["results"]);
}

#[test]
fn every_subcommand_emits_csv() {
    let cases: [(&str, &str); 9] = [
        ("influence", "schema_version,variable,fraction,decimal"),
        ("spectrum", "schema_version,y,bits_x1_first,walsh,probability"),
        ("bv-sample", "schema_version,sample,outcome,bits_x1_first"),
        ("estimate", "schema_version,variable,ones,m,estimate"),
        ("list-influential", "schema_version,variable,ones,listed"),
        ("learn2", "schema_version,variable,class,ones,trials,observed"),
        ("learn3", "schema_version,variable,class,ones,trials,observed"),
        ("classical", "schema_version,variable,changed,m,estimate,oracle_calls"),
        ("verify", "schema_version,identity,status,detail"),
    ];
    for (cmd, header) in cases {
        let (code, out, err) = run(&[cmd, "--anf", "x1 + x2*x3", "--n", "4", "--seed", "1", "--format", "csv"]);
        assert_eq!(code, 0, "{cmd}: {err}");
        assert_eq!(out.lines().next(), Some(header), "{cmd}");
        assert!(out.lines().skip(1).all(|l| l.starts_with("1,")), "{cmd}");
    }
}

#[test]
fn learn2_csv_rows() {
    let (_, out, _) = run(&["learn2", "--anf", "x1 + x2*x3", "--n", "4", "--seed", "5", "--format", "csv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(rows[0].starts_with("1,1,linear,20,20,"));
    assert!(rows[3].starts_with("1,4,absent,0,20,"));
}

#[test]
fn classical_reports_query_ledger() {
    let report = run_json(&["classical", "--random", "6:2", "--m", "1000", "--seed", "4"]);
    assert_eq!(report["results"]["estimates"].as_array().unwrap().len(), 6);
    assert_eq!(report["results"]["estimates"][0]["oracle_calls"], 2000);
    assert_eq!(report["results"]["ledger"]["quantum_oracle_calls"], 1000);
    assert_eq!(report["results"]["ledger"]["classical_oracle_calls"], 12000);
    let single = run_json(&["classical", "--random", "6:2", "--m", "1000", "--seed", "4", "--i", "3"]);
    assert_eq!(single["results"]["estimates"][0]["variable"], 3);
}

#[test]
fn table_files_text_and_binary() {
    let dir = tempfile::tempdir().unwrap();
    let f = Anf::parse("x1 + x2*x3", 3).unwrap().to_truth_table();
    let text = dir.path().join("f.tt");
    let bin = dir.path().join("f.ttb");
    std::fs::write(&text, to_text(&f)).unwrap();
    std::fs::write(&bin, to_binary(&f)).unwrap();
    for path in [&text, &bin] {
        let report = run_json(&["influence", "--table", path.to_str().unwrap()]);
        assert_eq!(report["results"]["values"], serde_json::json!([1.0, 0.5, 0.5]));
    }
    let (code, _, err) = run(&["influence", "--table", text.to_str().unwrap(), "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("disagrees"));
}

#[test]
fn validation_errors_exit_2() {
    let cases: [&[&str]; 8] = [
        &["influence", "--anf", "x1 + x5", "--n", "3"],
        &["influence", "--anf", "x1 +", "--n", "3"],
        &["influence", "--anf", "x1"],
        &["influence"],
        &["influence", "--random", "8-42"],
        &["learn3", "--anf", "x1", "--n", "1", "--epsilon", "0.2"],
        &["learn2", "--anf", "x1", "--n", "1", "--rho", "1"],
        &["estimate", "--anf", "x1", "--n", "1", "--m", "0"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
    let (code, _, _) = run(&["influence", "--table", "/nonexistent/f.tt"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bvinf");
    let ok = Command::new(bin).args(["verify", "--random", "8:42"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["influence", "--anf", "x9", "--n", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("out of range"));
}
