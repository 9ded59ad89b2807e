use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_affbuild"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn standard(n: usize) -> Value {
    let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    json!({ "n": n, "columns": cols })
}

/// `E + t⁻¹·e₁` in rank `n`.
fn line(n: usize) -> Value {
    let mut doc = standard(n);
    doc["columns"][0][0] = json!({ "num": [[-1, "1"]] });
    doc
}

#[test]
fn hungarian() {
    let out = run(&["--json", "hungarian", "-"], r#"{"matrix": [[0, 2], [1, 3]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["certified"], true);
    let bare = run(&["--json", "hungarian", "-"], "[[5, 0], [0, 5]]");
    assert_eq!(json_of(&bare)["value"], 10);
}

#[test]
fn compute_f_on_standard_lattices() {
    let doc = json!({ "n": 3, "field": "rational", "lattices": [standard(3), standard(3), standard(3)], "indices": [1, 1, 1] });
    let out = run(&["--json", "compute-f", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["value"], 0);
    let doc = json!({ "n": 3, "lattices": [line(3), line(3), line(3)] });
    let out = run(&["--json", "compute-f", "--indices", "1,1,1", "-"], &doc.to_string());
    assert_eq!(json_of(&out)["value"], 1);
}

#[test]
fn verify_exit_codes() {
    let doc = json!({ "n": 3, "field": "rational", "lattices": [line(3), line(3), line(3)], "indices": [1, 1, 1] });
    let out = run(&["--json", "verify", "--strategy", "close", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!((v["status"].as_str(), v["lhs"].as_i64()), (Some("verified"), Some(1)));
    assert!(v["witness"].is_object());

    let out = run(&["--json", "--budget", "0", "verify", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["status"], "inconclusive");
}

#[test]
fn errors_exit_one() {
    let doc = json!({ "n": 2, "field": "rational", "lattices": [standard(2)], "indices": [2] });
    let out = run(&["--field", "prime:2", "compute-f", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(run(&["compute-f", "-"], "{not json").status.code(), Some(1));
    assert_eq!(run(&["--field", "prime:4", "gen", "random"], "").status.code(), Some(1));
    let bad = json!({ "n": 2, "lattices": [standard(2)], "indices": [1] });
    assert_eq!(run(&["compute-f", "-"], &bad.to_string()).status.code(), Some(1));
}

#[test]
fn distance_reports_both_directions() {
    let mut m = standard(2);
    m["columns"][0][0] = json!({ "num": [[-2, "1"]] });
    m["columns"][1][1] = json!({ "num": [[1, "1"]] });
    let doc = json!({ "n": 2, "lattices": [standard(2), m] });
    let v = json_of(&run(&["--json", "distance", "-"], &doc.to_string()));
    assert_eq!(v["distance"], json!([2, -1]));
    assert_eq!(v["reverse"], json!([1, -2]));
}

#[test]
fn generated_documents_round_trip() {
    for (kind, cmd) in [("random", "compute-f"), ("close", "close-case"), ("apartment", "apartment")] {
        for field in ["rational", "prime:3"] {
            let gen = run(&["--seed", "9", "--field", field, "--json", "gen", kind, "--n", "3"], "");
            assert_eq!(gen.status.code(), Some(0), "{kind} {field}");
            let again = run(&["--seed", "9", "--field", field, "--json", "gen", kind, "--n", "3"], "");
            assert_eq!(gen.stdout, again.stdout);
            let doc = String::from_utf8(gen.stdout).unwrap();
            let out = run(&["--json", cmd, "-"], &doc);
            assert_eq!(out.status.code(), Some(0), "{cmd} on {kind} {field}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(json_of(&out)["value"].is_i64());
        }
    }
    let subspaces = run(&["--field", "prime:2", "gen", "subspaces", "--n", "3", "--k", "4"], "");
    let v = json_of(&run(&["--json", "konig", "-"], &String::from_utf8(subspaces.stdout).unwrap()));
    assert!(v["value"].as_u64().unwrap() <= 3);
    let matrix = run(&["gen", "matrix", "--n", "4"], "");
    let v = json_of(&run(&["--json", "hungarian", "-"], &String::from_utf8(matrix.stdout).unwrap()));
    assert_eq!(v["certified"], true);
}

#[test]
fn random_strategy_is_seeded() {
    let gen = run(&["--seed", "4", "gen", "random", "--n", "2"], "");
    let doc = String::from_utf8(gen.stdout).unwrap();
    let args = |seed| ["--json", "--seed", seed, "--budget", "64", "verify", "--strategy", "random", "-"];
    let a = run(&args("1"), &doc);
    let b = run(&args("1"), &doc);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["seed"], 1);
    let threaded = run(&["--json", "--seed", "1", "--budget", "64", "--threads", "3", "verify", "--strategy", "random", "-"], &doc);
    assert_eq!(json_of(&threaded)["candidates"], json_of(&a)["candidates"]);
}
