use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).expect("valid json")
}

#[test]
fn analyze_reports_flags_and_witnesses() {
    let v = json(&["analyze", "625431", "--kl", "--locus"]);
    assert_eq!(v["flags"]["smooth"], false);
    assert_eq!(v["witnesses"]["smooth"]["pattern"], "4231");
    assert_eq!(
        v["witnesses"]["smooth"]["positions"],
        serde_json::json!([1, 2, 3, 6])
    );
    assert_eq!(v["singular_locus"], serde_json::json!(["216543"]));
    let text = stdout(&["analyze", "1234"]);
    assert!(text.contains("smooth                 yes"));
}

#[test]
fn enumerate_counts_and_lists() {
    assert_eq!(
        stdout(&["enumerate", "count", "smooth", "6"]).trim(),
        "366 (expected 366)"
    );
    assert_eq!(
        stdout(&["enumerate", "list", "boolean", "3"])
            .lines()
            .count(),
        5
    );
    let v = json(&["enumerate", "count", "factorial", "7", "--upto"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"][6]["actual"], 1661);
    assert_eq!(
        stdout(&["--threads", "1", "enumerate", "count", "gorenstein", "5"]).trim(),
        "116"
    );
}

#[test]
fn kl_pairs_and_columns() {
    let v = json(&["kl", "45312", "14325"]);
    assert_eq!(v["polynomial"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["mu"], 1);
    let v = json(&["kl", "231", "312"]);
    assert_eq!(v["below"], false);
    let tsv = stdout(&["--tsv", "kl", "3412"]);
    assert!(tsv.lines().any(|l| l == "1234\t1 + q"));
    assert_eq!(tsv.lines().count(), 15);
}

#[test]
fn intervals_graphs_and_polynomials() {
    let v = json(&["interval", "1324", "3412"]);
    assert_eq!(v["size"], 10);
    assert!(stdout(&["interval", "123", "321", "--dot"]).starts_with("digraph"));
    assert!(stdout(&["graph", "321"]).starts_with("graph bruhat"));
    assert_eq!(json(&["graph", "3412"])["degrees"][0], 5);
    assert_eq!(
        stdout(&["poincare", "321"]).trim(),
        "1 + 2t + 2t^2 + t^3\n= [3][2]"
    );
    assert_eq!(stdout(&["locus", "3412"]).trim(), "1324  codimension 3");
    assert_eq!(
        stdout(&["locus", "45312", "--patterns"]).trim(),
        "14325  codimension 5"
    );
}

#[test]
fn arrangement_prints_sign_vectors() {
    let tsv = stdout(&["--tsv", "arrangement", "321"]);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "signs\tdistance");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"+++\t0"));
}

#[test]
fn matcount_and_the_poincare_comparison() {
    assert_eq!(
        stdout(&[
            "--tsv",
            "matcount",
            "--n",
            "2",
            "--q",
            "2",
            "--forbidden",
            "1,1"
        ]),
        "q\tcount\n2\t2\n"
    );
    let v = json(&["matcount", "--diagram", "231", "--q", "2,3", "--compare"]);
    assert_eq!(
        v["comparison"][0]["matrices"],
        v["comparison"][0]["poincare_side"]
    );
    let v = json(&["matcount", "--diagram", "1324", "--q", "2", "--compare"]);
    assert_ne!(
        v["comparison"][0]["matrices"],
        v["comparison"][0]["poincare_side"]
    );
}

#[test]
fn coxeter_subcommands() {
    let v = json(&["coxeter", "game", "--type", "B2", "--elements"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    let v = json(&[
        "coxeter", "game", "--type", "A2", "--word", "1 2 1", "--leq", "2 1 2",
    ]);
    assert_eq!(v["leq"], true);
    assert_eq!(v["length"], 3);
    let v = json(&["coxeter", "flatten", "2431", "--positions", "2,3,4"]);
    assert_eq!(v["permutation"], "321");
    let text = stdout(&["coxeter", "bn-smooth", "(1,-2,-3)"]);
    assert!(text.starts_with("not smooth"));
}

#[test]
fn series_coefficients() {
    assert_eq!(
        stdout(&["series", "smooth", "--order", "5"]).trim(),
        "1, 1, 2, 6, 22, 88"
    );
    assert_eq!(
        stdout(&["series", "catalan", "--order", "4"]).trim(),
        "1, 1, 2, 5, 14"
    );
}

#[test]
fn verify_runs_selected_criteria() {
    let text = stdout(&["verify", "--only", "1,4"]);
    assert!(text.contains("PASS  1"));
    assert!(text.contains("PASS  4"));
    assert!(text.ends_with("2 of 2 criteria passed\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "12a"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "1223"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "123", "1234"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "13"]).status.code(), Some(2));
    assert_eq!(
        run(&["--budget", "5", "poincare", "4321"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["enumerate", "count", "all", "11"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["matcount", "--n", "4", "--q", "7"]).status.code(),
        Some(3)
    );
}
