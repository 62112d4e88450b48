use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperring"))
        .args(args)
        .env_remove(hyperring_cli::FLAGS_VAR)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn write_spec(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const Z16: &str = "\
[construction]
kind = RA
n = 16
A = [0, 1]

[ideals]
P = [4]
I = [2]

[queries]
isPrime P
isIPrime P I
";

#[test]
fn validate_accepts_ra_builds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "z6.spec", "[construction]\nkind = RA\nn = 6\nA = [0, 1]\n");
    let out = hyperring(&["validate", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let body = &report(&out)["body"];
    assert_eq!(body["ok"], true);
    assert_eq!(body["size"], 6);
    assert_eq!(body["failures"], Value::Array(vec![]));
}

#[test]
fn validate_reports_broken_tables() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "bad.spec",
        "[construction]\nkind = tables\nadd = [[0,1],[1,1]]\nhmul = [[[0],[0]],[[0],[1]]]\n",
    );
    let out = hyperring(&["validate", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let body = &report(&out)["body"];
    assert_eq!(body["ok"], false);
    assert!(!body["failures"].as_array().unwrap().is_empty());
    // Other commands refuse a ring that is not one.
    assert_eq!(hyperring(&["ideals", &spec]).status.code(), Some(1));
}

#[test]
fn classify_reports_false_verdict_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "z16.spec", Z16);
    let out = hyperring(&["classify", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let doc = report(&out);
    let queries = doc["body"]["queries"].as_array().unwrap();
    assert_eq!(queries[0]["predicate"], "prime");
    assert_eq!(queries[0]["verdict"], false);
    assert_eq!(queries[0]["witness"], serde_json::json!([2, 2]));
    assert_eq!(queries[1]["verdict"], true);
    assert_eq!(doc["header"]["command"], "classify");
}

#[test]
fn witnesses_feed_back_as_queries() {
    let dir = tempfile::tempdir().unwrap();
    let first = hyperring(&["classify", &write_spec(dir.path(), "a.spec", Z16)]);
    let witness = report(&first)["body"]["queries"][0]["witness"].to_string();
    let text = format!("{Z16}isPrime P witness={witness}\nisPrime P witness=[1, 1]\n");
    let out = hyperring(&["classify", &write_spec(dir.path(), "b.spec", &text)]);
    let queries = report(&out)["body"]["queries"].as_array().unwrap().clone();
    assert_eq!(queries[2]["supplied_witness_violates"], true);
    assert_eq!(queries[3]["supplied_witness_violates"], false);
}

#[test]
fn all_classify_queries_true_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let text = "[construction]\nkind = RA\nn = 6\nA = [1]\n[ideals]\nP = [2]\n[queries]\nprime P\n";
    let out = hyperring(&["classify", &write_spec(dir.path(), "z6.spec", text)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let empty_a = write_spec(dir.path(), "a.spec", "[construction]\nkind = RA\nn = 6\nA = []\n");
    let out = hyperring(&["ideals", &empty_a]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4, column 5"), "{err}");
    assert!(out.stdout.is_empty());

    let bad_gen =
        write_spec(dir.path(), "g.spec", "[construction]\nkind = RA\nn = 6\nA = [0, 1]\n[ideals]\nP = [9]\n");
    let out = hyperring(&["classify", &bad_gen]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 9"));

    let missing = dir.path().join("missing.spec");
    assert_eq!(hyperring(&["validate", missing.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(hyperring(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn ideals_and_spectrum_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "z16.spec", Z16);
    let out = hyperring(&["ideals", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let body = &report(&out)["body"];
    // Z16 with A = {0, 1}: the ideals are the subgroups 16Z ⊂ 8Z ⊂ 4Z ⊂ 2Z ⊂ Z.
    assert_eq!(body["ideals"].as_array().unwrap().len(), 5);
    let named: Vec<&Value> = body["ideals"].as_array().unwrap().iter().filter(|i| i["names"] != serde_json::json!([])).collect();
    assert_eq!(named.len(), 2);

    let out = hyperring(&["spectrum", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let body = &report(&out)["body"];
    // 4 proper ideals; 6 predicates without I, 3 with I ranging over 5 ideals.
    assert_eq!(body["grid"].as_array().unwrap().len(), 4 * (6 + 3 * 5));
}

#[test]
fn theorems_from_spec_section() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{Z16}\n[suites]\nT6,T9a family=this\n");
    let out = hyperring(&["theorems", &write_spec(dir.path(), "s.spec", &text)]);
    let doc = report(&out);
    let reports = doc["body"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["suite"], "T6");
    assert_eq!(reports[0]["instances"], 1);
    let clean = reports.iter().all(|r| r["failure_count"] == 0);
    assert_eq!(out.status.code(), Some(if clean { 0 } else { 2 }));
}

#[test]
fn theorems_need_something_to_run() {
    assert_eq!(hyperring(&["theorems"]).status.code(), Some(1));
    assert_eq!(hyperring(&["theorems", "--suite", "T99"]).status.code(), Some(1));
    assert_eq!(hyperring(&["theorems", "--suite", "T4", "--family", "nonsense"]).status.code(), Some(1));
    assert_eq!(hyperring(&["theorems", "--suite", "T4,T6", "--family", "fixtures", "--replay", "0"]).status.code(), Some(1));
}

#[test]
fn injected_fault_is_caught_and_replayed() {
    let out = hyperring(&["--inject-fault", "theorems", "--suite", "T4", "--family", "fixtures", "--replay", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let body = &report(&out)["body"];
    assert!(body["reports"][0]["failure_count"].as_u64().unwrap() > 0);
    let replay = &body["replay"];
    assert_eq!(replay["reproduced"], true);
    let trace: Vec<&str> = replay["trace"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    let before_outcome = trace[trace.len() - 2];
    assert!(before_outcome.starts_with("check P^2 in IP"), "{trace:#?}");
}

#[test]
fn failure_listing_is_capped_but_counted() {
    let out = hyperring(&["--inject-fault", "theorems", "--suite", "T4", "--family", "fixtures", "--list-failures", "1"]);
    let entry = &report(&out)["body"]["reports"][0];
    assert!(entry["failure_count"].as_u64().unwrap() > 1);
    assert_eq!(entry["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn job_count_does_not_change_the_body() {
    let run = |jobs: &str| {
        let out = hyperring(&["theorems", "--suite", "all", "--family", "fixtures", "--jobs", jobs]);
        assert_ne!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
        let doc = report(&out);
        assert_eq!(doc["header"]["flags"]["jobs"].as_u64().unwrap().to_string(), jobs);
        serde_json::to_string(&doc["body"]).unwrap()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn default_flags_variable_is_prepended() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperring"))
        .args(["theorems", "--suite", "T1", "--family", "empty"])
        .env(hyperring_cli::FLAGS_VAR, "--scan-cap 77 --ideal-product raw-union")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let flags = &report(&out)["header"]["flags"];
    assert_eq!(flags["scan_cap"], 77);
    assert_eq!(flags["ideal_product"], "raw-union");

    // Explicit arguments win over the variable.
    let out = Command::new(env!("CARGO_BIN_EXE_hyperring"))
        .args(["--scan-cap", "5", "theorems", "--suite", "T1", "--family", "empty"])
        .env(hyperring_cli::FLAGS_VAR, "--scan-cap 77")
        .output()
        .unwrap();
    assert_eq!(report(&out)["header"]["flags"]["scan_cap"], 5);
}

#[test]
fn body_field_order_is_fixed() {
    let out = hyperring(&["theorems", "--suite", "T1", "--family", "empty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["\"suite\"", "\"statement\"", "\"family\"", "\"examined\"", "\"failure_count\"", "\"notes\""];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert!(text.find("\"header\"").unwrap() < text.find("\"body\"").unwrap());
}
