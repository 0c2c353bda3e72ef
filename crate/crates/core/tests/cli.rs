use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_graded-lab"));
    c.env_remove("GRADED_LAB_BUDGET");
    c
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = c.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

const Z24: &str = r#"{"ring": {"kind": "Zn", "n": 24}, "submodules": [{"gen": [8]}], "s_sets": [[1, 5]]}"#;

#[test]
fn validate_ok_and_broken() {
    let good = file(Z24);
    let (code, out, _) = run(bin().arg("validate").arg(good.path()));
    assert_eq!(code, 0);
    assert!(out.contains("valid"));

    let non_assoc = file(r#"{"ring": {"kind": "tables", "add": [[0,1],[1,0]], "mul": [[0,0],[0,0]]}}"#);
    let (code, _, err) = run(bin().arg("validate").arg(non_assoc.path()));
    assert_eq!(code, 1, "{err}");

    let garbage = file("{ not json");
    assert_eq!(run(bin().arg("validate").arg(garbage.path())).0, 1);
    assert_eq!(run(bin().arg("validate").arg("/nonexistent/structure.json")).0, 1);
}

#[test]
fn classify_designated_and_selected() {
    let cyclic = file(r#"{"integer": {"shape": "cyclic", "n": 24, "d": 8}}"#);
    let (code, out, _) = run(bin().arg("classify").arg(cyclic.path()));
    assert_eq!(code, 0);
    assert!(out.contains("weakly primal false"), "{out}");

    let z12 = file(r#"{"ring": {"kind": "Zn", "n": 12}}"#);
    let (code, out, _) = run(bin().args(["classify", "--submodule", "zero"]).arg(z12.path()));
    assert_eq!(code, 0);
    assert!(out.contains("weakly primal true, primal false"), "{out}");

    let (code, _, _) = run(bin().args(["classify", "--submodule", "gen:99"]).arg(z12.path()));
    assert_eq!(code, 1);
    let (code, _, _) = run(bin().args(["classify", "--submodule", "bogus"]).arg(z12.path()));
    assert_eq!(code, 1);
}

#[test]
fn localize_prints_classes() {
    let f = file(Z24);
    let (code, out, _) = run(bin().args(["localize", "--s", "5"]).arg(f.path()));
    assert_eq!(code, 0);
    assert!(out.contains("R_S: 24 classes"), "{out}");
    let (code, _, _) = run(bin().args(["localize", "--s", "2"]).arg(f.path()));
    assert_eq!(code, 0);
    let (code, _, _) = run(bin().args(["localize", "--s", "0"]).arg(f.path()));
    assert_eq!(code, 1);
}

#[test]
fn claims_run_small_budget() {
    let budget = file(r#"{"max_zn": 6, "quadratic_n": [], "include_products": false, "max_integer_m": 4, "max_cyclic_n": 4}"#);
    let out = NamedTempFile::new().unwrap();
    let (code, summary, err) = run(bin().args(["claims", "run", "--budget"]).arg(budget.path()).arg("--out").arg(out.path()));
    assert_eq!(code, 0, "{err}");
    assert!(summary.contains("0 errors"), "{summary}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.path()).unwrap()).unwrap();
    assert_eq!(report["claims"].as_array().unwrap().len(), 27);

    let (code, json, _) = run(bin().args(["claims", "run", "--claim", "lem1", "--budget"]).arg(budget.path()));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["claims"][0]["id"], "lem1");

    let (code, _, _) = run(bin().args(["claims", "run", "--claim", "nope", "--budget"]).arg(budget.path()));
    assert_eq!(code, 1);
}

#[test]
fn budget_env_override() {
    let budget = file(r#"{"max_zn": 3, "quadratic_n": [], "include_products": false, "max_integer_m": 1, "max_cyclic_n": 1}"#);
    let (code, json, _) = run(bin().args(["claims", "run", "--claim", "rem2"]).env("GRADED_LAB_BUDGET", budget.path()));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["meta"]["instance_count"], 2);

    let (code, _, _) = run(bin().args(["claims", "run"]).env("GRADED_LAB_BUDGET", "/nonexistent/budget.json"));
    assert_eq!(code, 1);
}

#[test]
fn examples_reproduce_side_by_side() {
    let (code, out, _) = run(bin().args(["examples", "reproduce"]));
    assert_eq!(code, 0);
    for id in ["exm1.1", "exm1.2", "exm1.3", "exm1.4"] {
        assert!(out.contains(id), "{out}");
    }
    assert!(!out.contains("REJECTED"));
}
