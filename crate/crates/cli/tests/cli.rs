use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run_with(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isoheight"));
    cmd.args(args).env_remove("ISOHEIGHT_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().expect("binary runs");
    let text = String::from_utf8(stdout).expect("UTF-8 output");
    let json: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (status.code().expect("exit code"), json, text)
}

fn run(args: &[&str]) -> (i32, Value, String) {
    run_with(args, &[])
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", "fields", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn main_bound_is_exact() {
    let (code, out, _) = run(&["bound", "main", "--ex", "-1", "--ey", "-1", "--belyi", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out["status"], "ok");
    let expected = format!("268435456{}/1", "0".repeat(338));
    assert_eq!(out["payload"]["bound"], expected.as_str());
    assert_eq!(out["payload"]["approx"], "2.68435456e346");
    assert_eq!(out["diagnostics"], serde_json::json!([]));
}

#[test]
fn affine_and_isogeny_bounds() {
    let (code, out, _) = run(&["bound", "affine-arithmetic", "--ex", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["bound"], format!("16384{}/1", "0".repeat(300)).as_str());
    let (code, out, _) = run(&["bound", "isogeny", "--case", "non-arithmetic", "--ex", "-3", "--ey", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["deg_pi_x"]["exact"], "42/1");
    assert_eq!(out["payload"]["deg_pi_y"]["exact"], "126/1");
    let (code, out, _) = run(&["bound", "isogeny", "--case", "arithmetic-projective", "--gx", "2"]);
    assert_eq!(code, 1);
    assert!(out["diagnostics"][0].as_str().unwrap().contains("--gy"));
}

#[test]
fn morphism_height_bound() {
    let (code, out, _) = run(&["bound", "dfs", "--h", "-1/2", "--g", "0", "--deg", "7"]);
    assert_eq!(code, 0);
    // genus 0 adds nothing
    assert_eq!(out["payload"]["bound"]["lo"], "-1/2");
    assert_eq!(out["payload"]["bound"]["hi"], "-1/2");
    let (code, _, _) = run(&["bound", "dfs", "--h", "1", "--g", "3", "--deg", "2", "--sharp", "--gy", "1"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["bound", "dfs", "--h", "1", "--g", "3", "--deg", "2", "--sharp"]);
    assert_eq!(code, 1);
}

#[test]
fn hurwitz_minimum() {
    let (code, out, _) = run(&["verify", "hurwitz42"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["minimum"], "1/42");
    assert_eq!(out["payload"]["witnesses"], serde_json::json!([{"g": 0, "r": 0, "cones": [2, 3, 7]}]));
}

#[test]
fn inequality_reports() {
    let (code, out, _) = run(&["verify", "proof-steps", "--gmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["all_certified"], true);
    let (code, out, _) = run(&["verify", "odlyzko", "--nmax", "100"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["items"].as_array().unwrap().len(), 101);
    assert_eq!(out["payload"]["certified"], 101);
}

#[test]
fn precision_comes_from_the_environment() {
    let (code, out, _) = run_with(&["verify", "odlyzko", "--nmax", "1"], &[("ISOHEIGHT_PRECISION", "512")]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["items"][0]["precision"], 512);
    // the flag wins over the environment
    let (_, out, _) =
        run_with(&["verify", "odlyzko", "--nmax", "1", "--precision", "256"], &[("ISOHEIGHT_PRECISION", "512")]);
    assert_eq!(out["payload"]["items"][0]["precision"], 256);
    let (code, out, _) = run_with(&["verify", "odlyzko", "--nmax", "1"], &[("ISOHEIGHT_PRECISION", "4")]);
    assert_eq!(code, 1);
    assert_eq!(out["payload"], Value::Null);
}

#[test]
fn dessin_census_on_stdout_and_file() {
    let (code, out, _) = run(&["dessins", "enumerate", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["entries"].as_array().unwrap().len(), 3);
    assert_eq!(out["payload"]["header"]["count"], 3);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.jsonl");
    let (code, _, _) = run(&["dessins", "enumerate", "--degree", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 26);
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["degree"], 4);
}

#[test]
fn degree_cap_is_enforced() {
    let (code, out, _) = run(&["dessins", "enumerate", "--degree", "9"]);
    assert_eq!(code, 1);
    assert_eq!(out["status"], "error");
    assert!(out["diagnostics"][0].as_str().unwrap().contains("cap"));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let (_, _, a) = run(&["dessins", "enumerate", "--degree", "5", "--jobs", "1"]);
    let (_, _, b) = run(&["dessins", "enumerate", "--degree", "5", "--jobs", "3"]);
    let (_, _, c) = run(&["dessins", "enumerate", "--degree", "5", "--jobs", "3"]);
    assert_eq!(a, b);
    assert_eq!(b, c);
    let (_, _, a) = run(&["verify", "proof-steps", "--gmax", "10", "--jobs", "1"]);
    let (_, _, b) = run(&["verify", "proof-steps", "--gmax", "10", "--jobs", "4"]);
    assert_eq!(a, b);
}

#[test]
fn certificate_replay_and_check() {
    let (code, out, text) = run(&[
        "certificate", "replay", "--case", "arithmetic-projective", "--gx", "3", "--gy", "2", "--ex", "-4", "--ey", "-2",
        "--belyi", "5",
    ]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(out["payload"]["verified"], true);
    assert!(out["payload"]["steps"].as_array().unwrap().iter().all(|s| s["status"] == "CERTIFIED"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(&path, serde_json::to_string(&out["payload"]).unwrap()).unwrap();
    let (code, check, _) = run(&["certificate", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(check["payload"]["reproduced"], true);

    let mut forged = out["payload"].clone();
    forged["final"] = Value::from("1/1");
    std::fs::write(&path, serde_json::to_string(&forged).unwrap()).unwrap();
    let (code, check, _) = run(&["certificate", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(check["payload"]["reproduced"], false);
}

#[test]
fn covolume_and_consistency() {
    let q = fixture("rationals.json");
    let (code, out, _) = run(&["shimizu", "covolume", "--field", &q]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["covolume"]["approx_lo"], "1.66666667e-1");
    let (code, out, _) = run(&["shimizu", "consistency", "--field", &q, "--d1", "1", "--d2", "1", "--e", "-1/6"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["outcome"], "CONSISTENT");
    let (code, out, _) = run(&["shimizu", "consistency", "--field", &q, "--d1", "1", "--d2", "1", "--e", "1/5"]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["outcome"], "INCONSISTENT");

    let k = fixture("q_sqrt5.json");
    let (code, out, _) = run(&["shimizu", "covolume", "--field", &k]);
    assert_eq!(code, 1);
    assert!(out["diagnostics"][0].as_str().unwrap().contains("zeta2_enclosure"));
    let (code, _, _) = run(&["shimizu", "covolume", "--field", &k, "--zeta-from-norms"]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["shimizu", "zeta2", "--field", &k]);
    assert_eq!(code, 0);
    assert_eq!(out["payload"]["zeta2"]["approx_lo"], "1.15960445");
}

#[test]
fn undecided_consistency_exits_with_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    let wide = r#"{"n":1,"dF":1,"zeta2":{"lo":"4/3","hi":"363/100"},"prime_norms":[],"B":null,"ramified":[]}"#;
    std::fs::write(&path, wide).unwrap();
    let (code, out, _) =
        run(&["shimizu", "consistency", "--field", path.to_str().unwrap(), "--d1", "1", "--d2", "1", "--e", "1/6"]);
    assert_eq!(code, 2);
    assert_eq!(out["status"], "unknown");
    assert_eq!(out["payload"]["outcome"], "UNKNOWN");
}

#[test]
fn malformed_input_yields_error_json() {
    for args in [
        vec!["bound", "main", "--ex", "-1", "--ey", "-1", "--belyi", "1", "--bogus"],
        vec!["bound", "dfs", "--h", "1/0", "--g", "1", "--deg", "2"],
        vec!["bound", "dfs", "--h", "one", "--g", "1", "--deg", "2"],
        vec!["bound", "main", "--ex", "1", "--ey", "-1", "--belyi", "1"],
        vec!["certificate", "replay", "--case", "elliptic", "--gx", "2", "--ex", "-2"],
        vec!["shimizu", "covolume", "--field", "/nonexistent/field.json"],
        vec!["verify"],
    ] {
        let (code, out, text) = run(&args);
        assert_eq!(code, 1, "{args:?}: {text}");
        assert_eq!(out["status"], "error");
        assert_eq!(out["payload"], Value::Null);
        assert!(!out["diagnostics"].as_array().unwrap().is_empty());
    }
}
