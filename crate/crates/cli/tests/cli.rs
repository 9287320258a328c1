use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn count_matches_hand_counts() {
    let o = run(&["count", &fx("c3.g"), "--f", "0", "--g", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 3\n");
    let o = run(&["count", &fx("c3.g"), "--f", "0", "--g", "2", "--method", "both"]);
    assert_eq!(stdout(&o), "1 3 3 1\n");
    // perfect matchings of K4
    let o = run(&["count", &fx("k4.g"), "--f", "1", "--g", "1"]);
    assert_eq!(stdout(&o), "0 0 3\n");
}

#[test]
fn count_formats() {
    let o = run(&["count", &fx("c3.g"), "--fugacity", "binrec", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "3/4", "3/4", "1"]));
    let o = run(&["count", &fx("c3.g"), "--f", "0", "--g", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "j,coefficient\n0,1\n1,3\n");
}

#[test]
fn lower_bound_above_a_degree_counts_nothing() {
    let o = run(&["count", &fx("c3.g"), "--f", "3", "--method", "both"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn fugacity_file_with_per_vertex_override() {
    let o = run(&["count", &fx("c3.g"), "--fugacity", &fx("mixed.json"), "--method", "both"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "1 1+2*sqrt(3) 1\n");
}

#[test]
fn analyze_sector_verdicts() {
    let o = run(&["analyze", "--coeffs", "1,3,3,1", "--sector", "pi", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regions"][0]["verdict"]["outcome"], "nonvanishing");
    assert_eq!(v["classification"]["real_rooted_nonpositive"], true);

    let o = run(&["analyze", "--coeffs", "1,2,2", "--sector", "pi", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdict = &v["regions"][0]["verdict"];
    assert_eq!(verdict["outcome"], "counterexample");
    let w = verdict["witness"].as_array().unwrap();
    assert!((w[0].as_f64().unwrap() + 0.5).abs() < 1e-12);
    assert!((w[1].as_f64().unwrap().abs() - 0.5).abs() < 1e-12);
}

#[test]
fn analyze_unit_circle_report() {
    let o = run(&["analyze", &fx("c3.g"), "--fugacity", "binrec", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "3/4", "3/4", "1"]));
    assert!(v["classification"]["max_modulus_deviation"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_samples_the_multivariate_polynomial() {
    let args = ["analyze", &fx("c3.g"), "--sector", "pi/2", "--samples", "50", "--product", "--format", "json"];
    let a = run(&args);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["samples"][0]["verdict"]["exhaustive"], false);
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn analyze_csv_rounds_floats() {
    let o = run(&["analyze", "--coeffs", "1,1,1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("section,key,value,value2\n"));
    assert!(text.contains("root,0,-0.5,-0.866025403784\n"), "{text}");
}

#[test]
fn verify_equality_case() {
    let o = run(&["verify", "thm4", &fx("c3.g")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"]["status"], "confirmed");
    assert!(v["margins"]["bound_slack"].as_f64().unwrap().abs() <= 1e-9);
}

#[test]
fn verify_all_streams_twelve_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = run(&["verify", "all", &fx("c3.g"), "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 12);
    for r in &lines {
        let s = r["verdict"]["status"].as_str().unwrap();
        assert!(s == "confirmed" || s == "inapplicable", "{r}");
    }
    let report: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report, lines);
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let args = ["verify", "all", &fx("k4.g"), "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn scan_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = run(&["scan", "--all-graphs", "--max-n", "3", "--max-m", "4", "--out", &out]);
    assert!(o.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan.json")).unwrap()).unwrap();
    assert_eq!(summary["falsified"], 0);
    assert_eq!(summary, serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap());
    let violations = std::fs::read_to_string(dir.path().join("violations.json")).unwrap();
    assert_eq!(violations.trim(), "[]");
}

#[test]
fn scan_is_deterministic_under_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let args = ["scan", "--random", "--n", "5", "--m", "9", "--count", "6", "--bounds", "sampled", "--per-graph", "4", "--seed", "3", "--out", &out];
    let one = Command::new(env!("CARGO_BIN_EXE_factorpoly")).args(args).env("FACTORPOLY_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_factorpoly")).args(args).env("FACTORPOLY_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn scan_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("family.json");
    std::fs::write(&family, r#"{"generator": {"kind": "named", "named": "paths", "max_size": 5}, "bounds": {"policy": "constant"}}"#).unwrap();
    let o = run(&["scan", "--family", &family.display().to_string(), "--out", &dir.path().display().to_string(), "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graphs 4 "), "{}", stdout(&o));
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn malformed_inputs_exit_2() {
    for f in ["bad_edge.g", "no_header.g", "wrong_count.g", "does_not_exist.g"] {
        assert_eq!(code(&["count", &fx(f)]), 2, "{f}");
    }
    assert_eq!(code(&["count", &fx("c3.g"), "--fugacity", &fx("bad_fugacity.json")]), 2);
    assert_eq!(code(&["count", &fx("c3.g"), "--fugacity", "nonsense"]), 2);
    assert_eq!(code(&["analyze", "--coeffs", "1,x"]), 2);
    assert_eq!(code(&["analyze", "--coeffs", "1,1", "--sector", "4pi"]), 2);
    assert_eq!(code(&["verify", "thm99", &fx("c3.g")]), 2);
    assert_eq!(code(&["--tol", "0", "count", &fx("c3.g")]), 2);
    assert_eq!(code(&["count", &fx("c3.g"), "--f", "2", "--g", "1"]), 2);
}

#[test]
fn caps_exit_3() {
    assert_eq!(code(&["count", &fx("k4.g"), "--method", "brute", "--brute-cap", "3"]), 3);
    assert_eq!(code(&["count", &fx("k4.g"), "--state-cap", "1"]), 3);
}

#[test]
fn root_finder_failure_exits_5() {
    assert_eq!(code(&["analyze", "--coeffs", "1,3,3,1", "--tol", "1e-300"]), 5);
}

#[test]
fn bad_thread_count_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_factorpoly"))
        .args(["scan", "--named", "cycles", "--max-size", "4", "--out", &std::env::temp_dir().display().to_string()])
        .env("FACTORPOLY_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
