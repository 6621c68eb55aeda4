//! End-to-end checks of the `moduli` binary: subcommand wiring, JSON shapes,
//! exit codes and the seed environment variable.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn moduli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
}

fn run(args: &[&str]) -> Output {
    moduli().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("moduli-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn realize_graph_of_round_trip() {
    let graph = write_temp("g.json", r#"{"n":4,"edges":[[1,2],[2,3],[3,4]]}"#);
    let points = std::env::temp_dir().join(format!("moduli-cli-{}-p.json", std::process::id()));
    let out = run(&[
        "realize",
        "--graph",
        graph.to_str().unwrap(),
        "--dim",
        "4",
        "--eps",
        "0.1",
        "--out",
        points.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["graph-of", "--points", points.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["n"], 4);
    assert_eq!(value["edges"], serde_json::json!([[1, 2], [2, 3], [3, 4]]));
}

#[test]
fn witness_reports_clean_path() {
    let p0 = write_temp("w0.json", r#"{"d":1,"points":[[-2.0],[0.0]]}"#);
    let p1 = write_temp("w1.json", r#"{"d":1,"points":[[0.0],[-2.0]]}"#);
    let out = run(&[
        "witness",
        "--p0",
        p0.to_str().unwrap(),
        "--p1",
        p1.to_str().unwrap(),
        "--steps",
        "128",
    ]);
    let value = stdout_json(&out);
    assert_eq!(value["ok"], true);
    assert_eq!(value["steps"], 128);
    assert!(value["min_margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn line_enum_modes() {
    let out = run(&["line-enum", "--n", "3", "--graphs"]);
    let value = stdout_json(&out);
    assert_eq!(value["count"], 8);

    let out = run(&["line-enum", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["assignment"].is_array() && r["witness"]["d"] == 1));
}

#[test]
fn egf_outputs() {
    let out = run(&["egf", "--what", "semiorders", "--n", "5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2371");
    let out = run(&["egf", "--what", "uig", "--n", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "57");
    let out = run(&["egf", "--asymptotic", "--n", "12"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,exact,asymptotic,ratio");
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn euler_json_shape() {
    let out = run(&["euler", "--n", "4"]);
    let value = stdout_json(&out);
    assert_eq!(value["chambers"], 183);
    assert_eq!(value["chi"], -181);
    assert_eq!(value["e1"].as_array().unwrap().len(), 6);
}

#[test]
fn index_check_reports() {
    let sigma = write_temp("s.json", r#"{"n":3,"signs":[1,-1,1]}"#);
    let out = run(&[
        "index-check",
        "--n",
        "3",
        "--d",
        "2",
        "--sigma",
        sigma.to_str().unwrap(),
        "--samples",
        "1500",
        "--seed",
        "7",
    ]);
    let value = stdout_json(&out);
    assert_eq!(value["violations"], 0);
    assert_eq!(value["samples"], 1500);
    assert!(value["observed_values"].as_array().unwrap().len() >= 2);
}

#[test]
fn seed_env_var_is_honored() {
    let sigma = write_temp("s-env.json", r#"{"n":2,"signs":[1]}"#);
    let base = ["index-check", "--n", "2", "--d", "2", "--sigma"];
    let with_seed = |seed: &str| {
        let mut cmd = moduli();
        cmd.args(base)
            .arg(sigma.to_str().unwrap())
            .args(["--samples", "500"])
            .env("MODULI_SEED", seed);
        cmd.output().unwrap()
    };
    let a = with_seed("11");
    let b = with_seed("11");
    assert_eq!(a.stdout, b.stdout);

    let mut cmd = moduli();
    cmd.args(base)
        .arg(sigma.to_str().unwrap())
        .args(["--samples", "500", "--seed", "11"]);
    let c = cmd.output().unwrap();
    assert_eq!(a.stdout, c.stdout, "--seed must agree with MODULI_SEED");
}

#[test]
fn jobs_flag_does_not_change_results() {
    let sigma = write_temp("s-jobs.json", r#"{"n":3,"signs":[-1,1,-1]}"#);
    let census = |jobs: &str| {
        let mut cmd = moduli();
        cmd.args(["--jobs", jobs, "index-check", "--n", "3", "--d", "2", "--sigma"])
            .arg(sigma.to_str().unwrap())
            .args(["--samples", "2000", "--seed", "3"]);
        cmd.output().unwrap().stdout
    };
    assert_eq!(census("1"), census("4"));
}

#[test]
fn bounds_csv() {
    let out = run(&["bounds", "--d", "2", "--n", "20,200,2000"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,lower_log,upper_log,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("20,"));
}

#[test]
fn family_jsonl() {
    let out_path = std::env::temp_dir().join(format!("moduli-cli-{}-fam.jsonl", std::process::id()));
    let out = run(&[
        "family",
        "--d",
        "2",
        "--n",
        "7",
        "--seed",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let members: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(members.len(), 32);
    assert!(members.iter().all(|m| m["points"]["d"] == 2 && m["graph"]["n"] == 7));
}

#[test]
fn verify_quick_exits_zero() {
    let out = run(&["verify", "--level", "quick"]);
    let value = stdout_json(&out);
    assert_eq!(value["ok"], true);
}

#[test]
fn exit_codes() {
    // Usage error from clap.
    let out = moduli().arg("realize").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Usage error from a missing file.
    let out = run(&["graph-of", "--points", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    // Numeric failure: dimension below the vertex count.
    let graph = write_temp("g2.json", r#"{"n":3,"edges":[]}"#);
    let out = run(&["realize", "--graph", graph.to_str().unwrap(), "--dim", "2", "--eps", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
}
