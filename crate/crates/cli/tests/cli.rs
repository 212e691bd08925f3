//! End-to-end tests of the `regis` binary: subcommand behavior, formats,
//! exit codes, and the census cache.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn regis() -> Command {
    Command::new(env!("CARGO_BIN_EXE_regis"))
}

fn run(args: &[&str]) -> Output {
    regis().args(args).output().expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout_lines(out)
        .iter()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

#[test]
fn count_literal_and_stdin() {
    let out = run(&["count", "A_"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["i"], "3");
    assert_eq!(v["coeffs"], serde_json::json!(["1", "2"]));

    let mut child = regis()
        .args(["count", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"A_\nC~\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["i"], "5"); // K4: empty set + 4 singletons
}

#[test]
fn count_from_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.g6");
    // K_{3,3} and C5.
    let k33 = run(&["gen", "--n", "6", "--d", "3"]);
    let k33_line = stdout_lines(&k33)
        .into_iter()
        .next()
        .expect("gen emits K_{3,3} first");
    std::fs::write(&path, format!("{k33_line}\nDqK\n")).unwrap();

    let out = run(&["count", path.to_str().unwrap()]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[0]["i"], "15");
    assert_eq!(lines[0]["coeffs"], serde_json::json!(["1", "6", "6", "2"]));
    assert_eq!(lines[1]["i"], "11"); // C5

    let out = run(&["count", "--csv", path.to_str().unwrap()]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "graph6,i,alpha,coeffs");
    assert!(lines[1].ends_with(",15,3,1 6 6 2"));
}

#[test]
fn poly_output() {
    let out = run(&["poly", "A_"]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out)[0]["coeffs"], serde_json::json!(["1", "2"]));
}

#[test]
fn gen_counts_and_parity_failure() {
    assert_eq!(
        stdout_lines(&run(&["gen", "--n", "6", "--d", "3"])).len(),
        2
    );
    assert_eq!(
        stdout_lines(&run(&["gen", "--n", "4", "--d", "2"])).len(),
        1
    );
    assert_eq!(
        stdout_lines(&run(&["gen", "--n", "8", "--d", "3", "--all-graphs"])).len(),
        6
    );

    let out = run(&["gen", "--n", "8", "--d", "3", "--all-graphs", "--manifest"]);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0]["n"], 8);
    assert_eq!(lines[0]["d"], 3);
    assert_eq!(lines.iter().filter(|l| l["connected"] == false).count(), 1); // K4 + K4

    let out = run(&["gen", "--n", "5", "--d", "3"]);
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(2), "parity is a usage-class error");

    let out = run(&["gen", "--n", "16", "--d", "4"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "beyond caps is a capacity error"
    );
}

#[test]
fn census_verdict_and_formats() {
    let out = run(&["census", "--n", "6", "--d", "3", "--no-cache"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3); // two records + verdict
    assert_eq!(lines[0]["i"], "15");
    assert_eq!(lines[0]["is_alon"], true);
    assert_eq!(lines[1]["i"], "13");
    let verdict = &lines[2]["verdict"];
    assert_eq!(verdict["unique_maximizer"], true);
    assert_eq!(verdict["max_is_alon"], true);
    assert_eq!(verdict["runner_up_gap"], "2");

    let out = run(&["census", "--n", "6", "--d", "3", "--no-cache", "--csv"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "graph6,n,d,i,ratio,is_alon");
    assert_eq!(lines.len(), 4); // header + 2 rows + verdict comment
    assert!(lines[3].starts_with('#'));
}

#[test]
fn census_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();

    let first = regis()
        .args(["census", "--n", "8", "--d", "3"])
        .env("REGIS_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert!(first.status.success());

    // A cache file exists now; the second run must reuse it byte-for-byte.
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = regis()
        .args(["census", "--n", "8", "--d", "3"])
        .env("REGIS_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);

    // Truncate one record line: the run warns, recomputes, and still matches.
    let path = files[0].as_ref().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let last = lines.pop().unwrap();
    let truncated = &last[..last.len() / 2];
    let corrupted = format!("{}\n{}\n", lines.join("\n"), truncated);
    std::fs::write(&path, corrupted).unwrap();

    let third = regis()
        .args(["census", "--n", "8", "--d", "3"])
        .env("REGIS_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    assert!(
        String::from_utf8_lossy(&third.stderr).contains("corrupt cache line"),
        "expected a corruption warning"
    );

    // And --no-cache gives identical output without touching the directory.
    let fourth = regis()
        .args(["census", "--n", "8", "--d", "3", "--no-cache"])
        .env("REGIS_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(first.stdout, fourth.stdout);
}

#[test]
fn census_parallel_matches_serial() {
    let serial = run(&["census", "--n", "10", "--d", "3", "--no-cache"]);
    let parallel = run(&[
        "census",
        "--n",
        "10",
        "--d",
        "3",
        "--no-cache",
        "--jobs",
        "4",
    ]);
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn verify_suites_pass() {
    let out = run(&["verify", "hypothesis", "--n", "8", "--d", "3"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 6); // 5 graphs + summary
    let summary = lines.last().unwrap();
    assert_eq!(summary["failures"], 0);
    // 8 is not divisible by 6: nothing attains the bound.
    for line in &lines[..5] {
        assert_eq!(line["attains_bound"], false);
    }

    let out = run(&[
        "verify", "theorem2", "--n", "6", "--d", "3", "--lambda", "1",
    ]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["pass"], true);
    assert_eq!(lines[1]["pass"], true);

    let out = run(&[
        "verify", "theorem2", "--n", "4..6", "--d", "2..3", "--lambda", "3/2",
    ]);
    assert!(out.status.success());

    let out = run(&["verify", "zhao", "--n", "4..6", "--d", "2"]);
    assert!(out.status.success());

    let out = run(&["verify", "bounds", "--d", "2..4"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    for line in &lines[..3] {
        assert!(line["d1_gap"].as_f64().unwrap() > 0.0);
        assert!(line["d2_gap"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn verify_domain_errors() {
    // lambda < 1 is outside the theorem's domain.
    let out = run(&[
        "verify", "theorem2", "--n", "6", "--d", "3", "--lambda", "1/2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Single infeasible pair surfaces its parity error.
    let out = run(&["verify", "hypothesis", "--n", "5", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing required scope.
    let out = run(&["verify", "hypothesis"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_subcommand() {
    let out = run(&["bounds", "--d", "2..6"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 5);
    for line in &lines {
        assert!(line["D_uniq"].as_f64().unwrap() < 1.0);
        assert!(line["D2"].as_f64().unwrap() < line["kahn_value"].as_f64().unwrap());
    }
    let out = run(&["bounds", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let out = run(&["count", "!!notgraph6!!"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}
