use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cck(args: &[&str]) -> Run {
    cck_env(args, None)
}

fn cck_env(args: &[&str], budget: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cck"));
    cmd.args(args).env_remove("CCK_BUDGET");
    if let Some(b) = budget {
        cmd.env("CCK_BUDGET", b);
    }
    let out = cmd.output().expect("run cck");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {:?} / {:?}", run.stdout, run.stderr))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generated(dir: &Path, family: &str, h: usize, k: usize) -> PathBuf {
    let run = cck(&["generate", family, &h.to_string(), &k.to_string()]);
    assert_eq!(run.code, 0);
    write(dir, &format!("{family}_{h}_{k}.txt"), &run.stdout)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn assert_verifies(dir: &Path, cert: &str, graph: &Path) {
    let c = write(dir, "cert.json", cert);
    let run = cck(&["verify", s(&c), s(graph)]);
    assert_eq!(run.code, 0, "{} {}", run.stdout, cert);
    assert_eq!(json(&run)["ok"], true);
}

#[test]
fn generate_edge_list_and_json() {
    let run = cck(&["generate", "closure", "3", "2"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("7 10\n"));
    assert_eq!(run.stdout.lines().count(), 11);
    let run = cck(&["generate", "weak", "3", "2", "--format", "json"]);
    let v = json(&run);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 7);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);
}

#[test]
fn certify_example() {
    let run = cck(&["certify", "--h", "2", "--k", "2", "--d", "1"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_eq!((v["lp"].as_str(), v["bound"].as_str(), v["ok"].as_bool()), (Some("3/2"), Some("3/2"), Some(true)));
}

#[test]
fn exists_example_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "closure", 3, 2);
    let run = cck(&["exists", s(&g), "--colours", "2", "--clustering", "2"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "{\"schema\":1,\"exists\":false}\n"));
    let run = cck(&["exists", s(&g), "--colours", "2", "--clustering", "4"]);
    let v = json(&run);
    assert_eq!(v["exists"], true);
    assert_verifies(dir.path(), &run.stdout, &g);
}

#[test]
fn budget_override_is_indeterminate() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "closure", 3, 3);
    let run = cck_env(&["exists", s(&g), "--colours", "2", "--defect", "2"], Some("10"));
    assert_eq!(run.code, 3);
    assert_eq!(json(&run)["status"], "indeterminate");
}

#[test]
fn cluster_colour_branches_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "closure", 3, 2);
    let run = cck(&["cluster-colour", s(&g), "--h", "3", "--k", "2"]);
    assert_eq!(run.code, 2);
    let v = json(&run);
    assert_eq!(v["minor"]["pattern"], "W(3,2)");
    assert_verifies(dir.path(), &run.stdout, &g);

    let path = write(dir.path(), "path.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let run = cck(&["cluster-colour", s(&path), "--h", "3", "--k", "3"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert!(v["colours"].as_u64().unwrap() <= 2);
    assert_eq!(v["groups"].as_array().unwrap().len(), 6);
    assert_verifies(dir.path(), &run.stdout, &path);
}

#[test]
fn tampered_branch_set_is_disconnected() {
    let dir = tempfile::tempdir().unwrap();
    let cycle: String = std::iter::once("9 9\n".to_string()).chain((0..9).map(|i| format!("{} {}\n", i, (i + 1) % 9))).collect();
    let host = write(dir.path(), "c9.txt", &cycle);
    let run = cck(&["minor", s(&host), "C(3,1)"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_verifies(dir.path(), &run.stdout, &host);
    let sets = v["minor"]["branch_sets"].as_array().unwrap();
    let (big, set) = sets.iter().enumerate().max_by_key(|(_, b)| b.as_array().unwrap().len()).unwrap();
    let members = set.as_array().unwrap();
    assert!(members.len() >= 3);
    let mut messages = Vec::new();
    for drop in 0..members.len() {
        let mut t = v.clone();
        t["minor"]["branch_sets"][big].as_array_mut().unwrap().remove(drop);
        let c = write(dir.path(), "tampered.json", &t.to_string());
        let run = cck(&["verify", s(&c), s(&host)]);
        assert_eq!(run.code, 1);
        messages.push(json(&run)["violation"].as_str().unwrap().to_string());
    }
    assert!(messages.iter().any(|m| m.contains("disconnected")), "{messages:?}");
}

#[test]
fn lowered_fractional_weight_is_a_coverage_violation() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "closure", 2, 2);
    let run = cck(&["lp-lower", s(&g), "--d", "1"]);
    assert_eq!(run.code, 0);
    let mut v = json(&run);
    assert_eq!(v["lp"], "3/2");
    assert_verifies(dir.path(), &run.stdout, &g);
    v["weights"][0] = Value::from("0");
    let c = write(dir.path(), "low.json", &v.to_string());
    let run = cck(&["verify", s(&c), s(&g)]);
    assert_eq!(run.code, 1);
    assert!(json(&run)["violation"].as_str().unwrap().starts_with("coverage < 1 at vertex"));
}

#[test]
fn pathwidth_product_and_combine() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    let pd = write(dir.path(), "pd.json", "[[0,1],[1,2],[2,3],[3,4]]");
    let run = cck(&["pw-2colour", s(&path), s(&pd)]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_eq!(v["max_path"], 4);
    assert_verifies(dir.path(), &run.stdout, &path);
    let a = write(dir.path(), "a.json", &run.stdout);

    let c32 = generated(dir.path(), "closure", 3, 2);
    let run = cck(&["pw-2colour", s(&c32), "--exact-pd"]);
    assert_eq!(json(&run)["width"], 2);
    assert_verifies(dir.path(), &run.stdout, &c32);

    let b = write(dir.path(), "b.json", "[0,0,1,1,2]");
    let run = cck(&["product", s(&a), s(&b)]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["colouring"].as_array().unwrap().len(), 5);

    let cover = write(
        dir.path(),
        "cover.json",
        r#"{"delta":"1/3","d":3,"sets":[[0,1,2,3,4],[0,1,2,5,6],[1,2,3,4,5,6]]}"#,
    );
    let run = cck(&["combine", s(&c32), "--cover", s(&cover), "--h", "3", "--k", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["total"], "3");
    assert_eq!(v["epsilon"], "1");
    assert_verifies(dir.path(), &run.stdout, &c32);
    let whole = write(dir.path(), "whole.json", r#"{"delta":"0","d":3,"sets":[[0,1,2,3,4,5,6]]}"#);
    let run = cck(&["combine", s(&c32), "--cover", s(&whole), "--h", "3", "--k", "2"]);
    assert_eq!(run.code, 2, "{}", run.stdout);
}

#[test]
fn treedepth_and_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.txt", "3 2\n0 1\n0 2\n");
    let v = json(&cck(&["treedepth", s(&star), "--exact"]));
    assert_eq!(v["treedepth"], 2);
    let v = json(&cck(&["treedepth", s(&star), "--dfs"]));
    assert_eq!(v["depth"], 2);
    // Path 0-1-2 as a chain rooted at 1 with 2 hanging under 0.
    let tree = write(dir.path(), "tree.json", "[1,1,0]");
    let path = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let v = json(&cck(&["normalize", s(&path), "--tree", s(&tree)]));
    assert_eq!(v["parents"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["root_distance_sums"], serde_json::json!([3, 2]));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "weak", 3, 3);
    for args in [
        vec!["cluster-colour", s(&g), "--h", "3", "--k", "2"],
        vec!["lp-lower", s(&g), "--d", "2"],
        vec!["treedepth", s(&g)],
    ] {
        let a = cck(&args);
        let b = cck(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let run = cck(&["treedepth", "/nonexistent/graph.txt"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error:"));
    let bad = write(dir.path(), "bad.txt", "3 2\n0 1\n1 x\n");
    let run = cck(&["treedepth", s(&bad)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("line 3"), "{}", run.stderr);
    assert_eq!(cck(&["generate", "closure", "3"]).code, 1);
    assert_eq!(cck(&["certify", "--h", "2", "--k", "2", "--d", "1", "--bogus"]).code, 1);
    assert_eq!(cck(&["--help"]).code, 0);
}
