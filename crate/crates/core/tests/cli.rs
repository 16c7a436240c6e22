use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn airline_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata/airline")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudopoly")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

/// A copy of the airline inputs whose files can be edited.
struct Inputs {
    dir: TempDir,
}

impl Inputs {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        for f in ["lattice.json", "domain.json", "table.csv"] {
            fs::copy(airline_dir().join(f), dir.path().join(f)).unwrap();
        }
        Inputs { dir }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn edit(&self, name: &str, f: impl FnOnce(String) -> String) {
        let p = self.dir.path().join(name);
        let text = fs::read_to_string(&p).unwrap();
        fs::write(p, f(text)).unwrap();
    }

    fn run(&self, cmd: &str, extra: &[&str]) -> Output {
        let (d, t) = (self.path("domain.json"), self.path("table.csv"));
        let mut args = vec![cmd, "--domain", &d, "--table", &t];
        args.extend_from_slice(extra);
        run(&args)
    }
}

#[test]
fn check_airline() {
    let inputs = Inputs::new();
    let o = inputs.run("check", &[]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["boundary_ok"], true);
    assert_eq!(r["pseudo_polynomial"], true);
    assert_eq!(r["phi_minus"], json!({"X1": {"A1": "B", "A2": "D", "A3": "G", "A4": "V"}, "X2": {"E": "B", "F": "V"}}));
    assert_eq!(r["phi_plus"], json!({"X1": {"A1": "B", "A2": "D", "A3": "G", "A4": "V"}, "X2": {"E": "N", "F": "V"}}));
    assert_eq!(r["witness"], Value::Null);
}

#[test]
fn swapped_bounds_give_a_boundary_witness() {
    let inputs = Inputs::new();
    inputs.edit("domain.json", |t| t.replace(r#""zero": "A1", "one": "A4""#, r#""zero": "A4", "one": "A1""#));
    let o = inputs.run("check", &[]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    assert_eq!(r["boundary_ok"], false);
    assert_eq!(r["witness"]["kind"], "boundary");
    assert_eq!(r["witness"]["coordinate"], "X1");
}

#[test]
fn missing_row_is_an_input_error() {
    let inputs = Inputs::new();
    inputs.edit("table.csv", |t| t.lines().filter(|l| *l != "A3,F,G").map(|l| format!("{l}\n")).collect());
    let o = inputs.run("check", &[]);
    assert_eq!(code(&o), 2);
    let d = stderr_json(&o);
    assert_eq!(d["error"], "missing_tuples");
    assert_eq!(d["missing"], json!(["(A3,F)"]));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_lattice_is_an_input_error() {
    let inputs = Inputs::new();
    inputs.edit("lattice.json", |t| t.replace(r#""G": ["n", "d"],"#, ""));
    let o = inputs.run("check", &[]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "lattice");
}

#[test]
fn bounds_are_inferred_or_required() {
    let inputs = Inputs::new();
    inputs.edit("domain.json", |t| {
        t.replace(r#", "zero": "A1", "one": "A4""#, "").replace(r#", "zero": "E", "one": "F""#, "")
    });
    let o = inputs.run("check", &[]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["bounds_source"], json!(["inferred", "inferred"]));
    assert_eq!(r["domains"][0]["zero"], "A1");
    let o = inputs.run("check", &["--bounds", "explicit"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ambiguous_bounds_list_candidates() {
    let dir = TempDir::new().unwrap();
    let lattice = fs::read_to_string(airline_dir().join("lattice.json")).unwrap();
    let domain = format!(r#"{{"domains": [{{"name": "X", "elements": ["a", "b"]}}], "lattice": {lattice}}}"#);
    fs::write(dir.path().join("domain.json"), domain).unwrap();
    fs::write(dir.path().join("table.csv"), "x1,f\na,G\nb,G\n").unwrap();
    let (d, t) = (dir.path().join("domain.json"), dir.path().join("table.csv"));
    let o = run(&["check", "--domain", d.to_str().unwrap(), "--table", t.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let diag = stderr_json(&o);
    assert_eq!(diag["error"], "ambiguous_bounds");
    assert_eq!(diag["candidates"][0]["candidates"].as_array().unwrap().len(), 2);
}

#[test]
fn factorize_airline() {
    let inputs = Inputs::new();
    let o = inputs.run("factorize", &[]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["counts"], json!({"phi_vectors": 2, "total": 3, "capped": false}));
    let list = r["factorizations"].as_array().unwrap();
    assert_eq!(list.len(), 3);
    assert!(list.iter().all(|f| f["verified"] == true));
    let dnf: Vec<&str> = list.iter().map(|f| f["dnf"].as_str().unwrap()).collect();
    assert_eq!(dnf, ["(N ∧ y1) ∨ (y1 ∧ y2)", "y1 ∧ y2", "(N ∧ y1) ∨ (y1 ∧ y2)"]);

    let o = inputs.run("factorize", &["--count-only"]);
    assert_eq!(stdout_json(&o)["counts"], json!({"phi_vectors": 2, "total": 3, "capped": false}));

    let o = inputs.run("factorize", &["--max-factorizations", "2", "--strict"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout_json(&o)["counts"]["capped"], true);
    let o = inputs.run("factorize", &["--max-factorizations", "2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn reports_are_byte_stable() {
    let inputs = Inputs::new();
    let a = inputs.run("factorize", &["--trace"]);
    let b = inputs.run("factorize", &["--trace"]);
    assert_eq!(a.stdout, b.stdout);
    let out = inputs.path("report.json");
    let c = inputs.run("factorize", &["--trace", "--output", &out]);
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn constant_table_flags_sugeno() {
    let inputs = Inputs::new();
    inputs.edit("table.csv", |t| {
        t.lines()
            .enumerate()
            .map(|(i, l)| if i == 0 { format!("{l}\n") } else { format!("{},G\n", &l[..l.len() - 2]) })
            .collect()
    });
    let o = inputs.run("factorize", &[]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    let list = r["factorizations"].as_array().unwrap();
    assert!(!list.is_empty());
    assert!(list.iter().all(|f| f["sugeno"].is_boolean()));
    assert!(list.iter().any(|f| f["sugeno"] == true));
    assert!(list.iter().any(|f| f["sugeno"] == false));
}

#[test]
fn verify_round_trips_and_rejects_tampering() {
    let inputs = Inputs::new();
    let report = inputs.path("report.json");
    assert_eq!(code(&inputs.run("factorize", &["--output", &report])), 0);
    for i in 0..3 {
        let o = inputs.run("verify", &["--factorization", &report, "--index", &i.to_string()]);
        assert_eq!(code(&o), 0, "factorization #{i}");
        assert_eq!(stdout_json(&o)["verified"], true);
    }

    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let mut third = r["factorizations"][2].clone();
    third["p"]["coeffs"]["1"] = json!("D");
    let tampered = inputs.path("tampered.json");
    fs::write(&tampered, third.to_string()).unwrap();
    let o = inputs.run("verify", &["--factorization", &tampered]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["verified"], false);
    assert_eq!(v["witness"]["kind"], "tuple");

    let mut outside = r["factorizations"][2].clone();
    outside["phi"]["X2"]["E"] = json!("V");
    fs::write(&tampered, outside.to_string()).unwrap();
    let o = inputs.run("verify", &["--factorization", &tampered]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["admissibility"]["side"], "upper");
    assert_eq!(v["admissibility"]["coordinate"], "X2");
    assert_eq!(v["admissibility"]["point"], "E");

    let mut broken = r["factorizations"][0].clone();
    broken["phi"]["X3"] = json!({});
    fs::write(&tampered, broken.to_string()).unwrap();
    assert_eq!(code(&inputs.run("verify", &["--factorization", &tampered])), 2);
}

#[test]
fn chain_mode() {
    let inputs = Inputs::new();
    assert_eq!(code(&inputs.run("check", &["--chain-mode", "force"])), 2);
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("inst");
    let o = run(&["generate", "--seed", "3", "--limits", "2,3,4", "--out-dir", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (d, t) = (p.join("domain.json"), p.join("table.csv"));
    let o = run(&["check", "--domain", d.to_str().unwrap(), "--table", t.to_str().unwrap(), "--chain-mode", "auto"]);
    assert!(code(&o) <= 1);
    let r = stdout_json(&o);
    let lattice: Value = serde_json::from_str(&fs::read_to_string(p.join("lattice.json")).unwrap()).unwrap();
    let elements = lattice["elements"].as_object().unwrap();
    let is_chain = elements.len() == 3 || elements.len() == 4;
    assert_eq!(r.get("chain").is_some(), is_chain);
}

#[test]
fn generated_instances_round_trip() {
    let dir = TempDir::new().unwrap();
    for seed in 0..8u64 {
        let p = dir.path().join(seed.to_string());
        assert_eq!(code(&run(&["generate", "--seed", &seed.to_string(), "--out-dir", p.to_str().unwrap()])), 0);
        let (d, t) = (p.join("domain.json"), p.join("table.csv"));
        let o = run(&["factorize", "--domain", d.to_str().unwrap(), "--table", t.to_str().unwrap()]);
        let r = stdout_json(&o);
        assert_eq!(code(&o), if r["pseudo_polynomial"] == true { 0 } else { 1 });
    }
}

#[test]
fn oracle_compare_summary() {
    let o = run(&["oracle-compare", "--seeds", "1..20", "--limits", "2,3,6"]);
    assert_eq!(code(&o), 0);
    let s = stdout_json(&o);
    assert_eq!(s["cases"], 20);
    assert_eq!(s["passed"], true);
    assert_eq!(code(&run(&["oracle-compare", "--seeds", "5..1"])), 2);
}

#[test]
fn help_lists_every_flag() {
    let o = run(&["factorize", "--help"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for flag in [
        "--lattice",
        "--domain",
        "--table",
        "--output",
        "--bounds",
        "--chain-mode",
        "--trace",
        "--max-factorizations",
        "--count-only",
        "--strict",
    ] {
        assert!(text.contains(flag), "{flag}");
    }
}
