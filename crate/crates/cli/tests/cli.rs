use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beilinson"))
}

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/problems")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn conic() -> String {
    problems().join("conic.txt").display().to_string()
}

const CONIC_Q: &str = "field: Q\nn: 2\npolys:\n  X0*X2 - X1^2\n";
const LINE_D1: &str = "field: Fp 3\nn: 1\nd: 1\npolys:\n";

#[test]
fn build_kronecker_conic() {
    let (v, code) = json(&["build", &conic(), "--model", "kronecker"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "build");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["results"]["dims"], serde_json::json!([3, 5]));
    assert_eq!(v["results"]["arrows"], 3);
}

#[test]
fn build_writes_a_loadable_representation() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    for model in ["beilinson", "modified", "triple", "kronecker"] {
        let o = run(&[
            "build",
            &conic(),
            "--model",
            model,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{model}");
        let rep: beilinson_core::Representation =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!(rep.check_relations().unwrap().is_empty(), "{model}");
    }
}

#[test]
fn build_plain_line_is_a_kronecker_quiver() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "line.txt", LINE_D1);
    let (v, code) = json(&["build", f.to_str().unwrap(), "--model", "beilinson"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["results"]["arrows"], 2);
    assert_eq!(v["results"]["relations"], 0);
}

#[test]
fn bad_syntax_reports_position() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "bad.txt",
        "field: Fp 5\nn: 2\npolys:\n  X0*X2 - X1^^2\n",
    );
    let o = run(&["build", f.to_str().unwrap(), "--model", "kronecker"]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.txt:4:"), "{err}");
}

#[test]
fn inconsistent_degrees_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "de.txt",
        "field: Fp 5\nn: 2\nd: 2\ne: 2\npolys:\n  X0*X2 - X1^2\n",
    );
    let o = run(&["build", f.to_str().unwrap(), "--model", "triple"]);
    assert!(!o.status.success());
}

#[test]
fn point_counts_through_each_realization() {
    for (via, want) in [
        ("direct", 6),
        ("kronecker", 6),
        ("triple", 6),
        ("full", 6),
        ("moduli", 6),
        ("chart", 5),
    ] {
        let (v, code) = json(&["points", &conic(), "--via", via, "--q", "5"]);
        assert_eq!(code, 0, "{via}");
        assert_eq!(v["results"]["count"], want, "{via}");
        assert_eq!(v["results"]["points"].as_array().unwrap().len(), want);
    }
}

#[test]
fn points_reject_bad_q() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.txt", CONIC_Q);
    let o = run(&["points", f.to_str().unwrap(), "--q", "4"]);
    assert!(!o.status.success());
    // the file fixes F_5
    let o = run(&["points", &conic(), "--q", "3"]);
    assert!(!o.status.success());
    // over Q a q is required
    let o = run(&["points", f.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn budget_refusal_names_the_estimate() {
    let o = run(&["points", &conic(), "--via", "moduli", "--budget", "10"]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("estimated 961 candidates"), "{err}");
}

#[test]
fn verify_rational_conic_at_two_primes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.txt", CONIC_Q);
    let (v, code) = json(&["verify", f.to_str().unwrap(), "--q", "3", "--q", "5"]);
    assert_eq!(code, 0, "{v:#}");
    assert_eq!(v["verdict"], "pass");
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 16);
    assert!(checks.iter().all(|c| c["ok"] == true));
}

#[test]
fn verify_plane_counts_seven_everywhere() {
    let p2 = problems().join("p2.txt");
    let (v, code) = json(&["verify", p2.to_str().unwrap()]);
    assert_eq!(code, 0);
    for c in v["results"]["checks"].as_array().unwrap() {
        for key in ["count_x", "count_grass", "classes"] {
            if let Some(n) = c["detail"].get(key) {
                if !c["name"].as_str().unwrap().starts_with("chart") {
                    assert_eq!(n, 7, "{c}");
                }
            }
        }
    }
}

#[test]
fn fault_injected_representation_fails() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&[
        "build",
        &conic(),
        "--model",
        "beilinson",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let mut rep: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let entry = &mut rep["matrices"]["x1^0"][0][0];
    let old: u32 = entry.as_str().unwrap().parse().unwrap();
    *entry = Value::String(((old + 1) % 5).to_string());
    std::fs::write(&out, serde_json::to_string(&rep).unwrap()).unwrap();

    let o = run(&[
        "verify",
        &conic(),
        "--representation",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8_lossy(&o.stdout);
    let line = text
        .lines()
        .find(|l| l.contains("stored representation"))
        .unwrap();
    assert!(line.contains("FAIL") && line.contains("x1^0"), "{line}");
}

#[test]
fn hilbert_tables() {
    let (v, _) = json(&["hilbert", &conic()]);
    assert_eq!(v["results"]["values"], serde_json::json!([1, 3, 5, 7, 9]));
    let (v, _) = json(&[
        "hilbert",
        problems().join("p2.txt").to_str().unwrap(),
        "--upto",
        "3",
    ]);
    assert_eq!(v["results"]["values"], serde_json::json!([1, 3, 6, 10]));
    let (v, _) = json(&["hilbert", problems().join("empty.txt").to_str().unwrap()]);
    assert_eq!(v["results"]["values"], serde_json::json!([1, 0, 0, 0, 0]));
}

#[test]
fn equations_reparse() {
    let (v, code) = json(&["equations", &conic()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 9);
    assert_eq!(v["results"]["reparsed"], true);
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "line.txt", LINE_D1);
    let (v, _) = json(&["equations", f.to_str().unwrap()]);
    assert_eq!(v["results"]["count"], 0);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["verify", "CONIC"],
        vec!["points", "CONIC", "--via", "full"],
        vec!["equations", "CONIC"],
    ] {
        let c = conic();
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "CONIC" { c.as_str() } else { a })
            .collect();
        let (a, _) = json(&args);
        let (b, _) = json(&args);
        assert_eq!(strip(a), strip(b));
    }
}

#[test]
fn report_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "hilbert",
        &conic(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    let printed: Value = serde_json::from_slice(&o.stdout).unwrap();
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(printed["results"], saved["results"]);
}
