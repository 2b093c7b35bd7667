use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiarc")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verify_exit_codes() {
    let dir = fixtures();
    assert_eq!(run_in(&dir, &["verify", "projective_triangle_q5.pts", "--t", "1"]).status.code(), Some(0));
    let wrong = run_in(&dir, &["verify", "projective_triangle_q5.pts", "--t", "2"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(json(&wrong)["result"]["semiarc_t"], 1);
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("bad.pts"), "gf(5;modulus=0,1)\n1:0:0\n").unwrap();
    let bad = run_in(tmp.path(), &["verify", "bad.pts"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("header"));
    assert_eq!(run_in(tmp.path(), &["verify", "missing.pts"]).status.code(), Some(2));
}

#[test]
fn golden_outputs_q5() {
    let dir = fixtures();
    let o = run_in(&dir, &["verify", "projective_triangle_q5.pts", "--t", "1", "--secant", "0", "--a-n", "1"]);
    assert_eq!(stdout(&o), golden("verify_triangle_q5.json"));

    let o = run_in(&dir, &["blockify", "projective_triangle_q5.pts", "--secant", "0", "--n", "1"]);
    assert_eq!(stdout(&o), golden("blockify_triangle_q5.json"));

    let o = run_in(&dir, &["construct", "projective_triangle_semioval", "--q", "5"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(dir.join("projective_triangle_q5.pts")).unwrap());
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn blockify_writes_the_projective_triangle() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("projective_triangle_q5.pts"), tmp.path().join("projective_triangle_q5.pts")).unwrap();
    let o = run_in(tmp.path(), &["blockify", "projective_triangle_q5.pts", "--secant", "1:0:0", "--n", "1", "--out", "b.pts"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["size"], 9);
    assert_eq!(v["result"]["size_matches"], true);
    let text = std::fs::read_to_string(tmp.path().join("b.pts")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 10);
    let o = run_in(tmp.path(), &["verify", "b.pts"]);
    assert_eq!(json(&o)["result"]["size"], 9);
}

/// Every catalog construction's output verifies with its certified t.
#[test]
fn construct_verify_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::copy(fixtures().join("km_arc_q8_tau4.pts"), dir.join("km.pts")).unwrap();
    let line = run_in(dir, &["construct", "two-lines", "--q", "7", "--t", "0"]);
    assert_eq!(line.status.code(), Some(2), "t=0 is out of range");
    std::fs::write(dir.join("line7.pts"), "gf(7^1;modulus=0,1)\n0:1:0\n0:1:1\n0:1:2\n0:1:3\n0:1:4\n0:1:5\n0:1:6\n0:0:1\n").unwrap();
    let cases: &[&[&str]] = &[
        &["projective-triangle", "--q", "7"],
        &["projective-triangle", "--q", "9", "--r", "1", "--seed", "3"],
        &["hyperoval", "--q", "8"],
        &["km-deletion", "--q", "8", "--tau", "4", "--r", "1", "--input", "km.pts"],
        &["km-deletion", "--q", "8", "--tau", "4", "--r", "2", "--input", "km.pts"],
        &["baer", "--q", "9", "--t", "3"],
        &["redei", "--q", "7", "--t", "2", "--input", "line7.pts"],
        &["two-lines", "--q", "5", "--t", "2"],
        &["additive-subgroups", "--q", "9"],
        &["multiplicative-subgroups", "--q", "7"],
        &["sqrtq-semioval", "--q", "9"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let out = format!("c{i}.pts");
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["--out", &out]);
        let o = run_in(dir, &args);
        assert_eq!(o.status.code(), Some(0), "{case:?}: {}", String::from_utf8_lossy(&o.stderr));
        let built = json(&o);
        let t = built["result"]["t"].as_u64().unwrap().to_string();
        let v = run_in(dir, &["verify", &out, "--t", &t]);
        assert_eq!(v.status.code(), Some(0), "{case:?} does not verify as t={t}");
        assert_eq!(json(&v)["result"]["size"], built["result"]["size"]);
    }
}

#[test]
fn search_certificate() {
    let o = run_in(&fixtures(), &["search", "long_secant_q5.json", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["field"], "gf(5^1;modulus=0,1)");
    assert_eq!(v["params"]["workers"], 2);
    assert_eq!(v["result"]["witness_count"], 0);
    assert_eq!(v["result"]["certificate"]["exhausted"], true);
    assert!(v["result"]["certificate"]["nodes"].as_u64().unwrap() > 0);
    let one = run_in(&fixtures(), &["search", "long_secant_q5.json"]);
    assert_eq!(json(&one)["result"]["nodes"], v["result"]["nodes"]);

    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("s.json"), r#"{"q":5,"t":2,"min_size":4,"max_size":31,"secant":{"line":0,"k":4},"mode":"first_witness"}"#).unwrap();
    let o = run_in(tmp.path(), &["search", "s.json", "--out-dir", "w"]);
    assert_eq!(json(&o)["result"]["witnesses"].as_array().unwrap().len(), 1);
    let v = run_in(tmp.path(), &["verify", "w/witness_0000.pts", "--t", "2"]);
    assert_eq!(v.status.code(), Some(0));
    std::fs::write(tmp.path().join("bad.json"), "{\"q\":5}").unwrap();
    assert_eq!(run_in(tmp.path(), &["search", "bad.json"]).status.code(), Some(2));
}

#[test]
fn szw_and_directions() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::write(dir.join("f.poly"), "gf(5^1;modulus=0,1)\n1 0 1\n0 1 2\n").unwrap();
    std::fs::write(dir.join("g.poly"), "gf(5^1;modulus=0,1)\n2 0 1\n0 0 4\n").unwrap();
    let o = run_in(dir, &["szw", "f.poly", "g.poly"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["checks"].as_array().unwrap().len(), 5);
    std::fs::write(dir.join("h.poly"), "gf(7^1;modulus=0,1)\n1 0 1\n").unwrap();
    assert_eq!(run_in(dir, &["szw", "f.poly", "h.poly"]).status.code(), Some(2));

    // graph of x^3 over GF(5)
    std::fs::write(dir.join("cube.pts"), "gf(5^1;modulus=0,1)\n0:0:1\n1:1:1\n2:3:1\n3:2:1\n4:4:1\n").unwrap();
    let v = json(&run_in(dir, &["directions", "cube.pts"]));
    assert_eq!(v["result"]["count"], 4);
    assert_eq!(v["result"]["band"], "unrestricted");
    std::fs::write(dir.join("row.pts"), "gf(5^1;modulus=0,1)\n0:0:1\n1:0:1\n2:0:1\n3:0:1\n").unwrap();
    let v = json(&run_in(dir, &["directions", "row.pts", "--extend"]));
    assert_eq!(v["result"]["extensions"], serde_json::json!(["1:0:4"]));
}

#[test]
fn scenario_and_plane() {
    let o = run_in(&fixtures(), &["scenario", "two-line-semiarcs", "--q", "5", "--t", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["status"], "pass");
    assert_eq!(v["result"]["cases"].as_array().unwrap().len(), 2);
    assert_eq!(run_in(&fixtures(), &["scenario", "nonsense", "--q", "5"]).status.code(), Some(2));
    let o = run_in(&fixtures(), &["plane", "--q", "2"]);
    assert_eq!(stdout(&o), "plane order=2\n1 3 5\n0 3 4\n2 3 6\n0 1 2\n1 4 6\n0 5 6\n2 4 5\n");
}

#[test]
fn outputs_independent_of_workers_and_runs() {
    let a = run_in(&fixtures(), &["search", "long_secant_q5.json", "--workers", "1"]);
    let b = run_in(&fixtures(), &["search", "long_secant_q5.json", "--workers", "8"]);
    let strip = |o: &Output| {
        let mut v = json(o);
        v["result"].as_object_mut().unwrap().remove("wall_time_s");
        v["params"].as_object_mut().unwrap().remove("workers");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let c1 = run_in(&fixtures(), &["construct", "two-lines", "--q", "7", "--t", "3", "--seed", "9"]);
    let c2 = run_in(&fixtures(), &["construct", "two-lines", "--q", "7", "--t", "3", "--seed", "9"]);
    assert_eq!(c1.stdout, c2.stdout);
}
