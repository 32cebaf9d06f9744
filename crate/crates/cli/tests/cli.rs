use std::path::PathBuf;
use std::process::{Command, Output};

fn baxter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baxter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("baxter-cli-{}-{name}", std::process::id()))
}

#[test]
fn verify_glq_runs_four_checks() {
    let o = baxter(&["verify", "--family", "glq", "--n", "2", "--q", "1.3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for name in [
        "braid",
        "unitarity",
        "minimal-polynomial",
        "factorization-plain",
    ] {
        assert!(s.contains(name), "{s}");
    }
    assert!(s.contains("verdict: PASS"));
}

#[test]
fn verify_vertex8_at_loose_tolerance() {
    let o = baxter(&[
        "verify", "--family", "vertex8", "--p", "0.1", "--q", "1.3", "--trunc", "40",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("tol=1.00e-8"));
}

#[test]
fn parameter_errors_exit_two() {
    let o = baxter(&["verify", "--family", "glq", "--n", "2", "--q", "1.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeated eigenvalues"));
    assert_eq!(
        baxter(&["verify", "--family", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        baxter(&["verify", "--family", "nested"]).status.code(),
        Some(2)
    );
    assert_eq!(
        baxter(&["verify", "--family", "soq", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(baxter(&["verify"]).status.code(), Some(2));
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let o = baxter(&["verify", "--family", "gl", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = baxter(&["verify", "--family", "glq", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: FAIL"));
}

#[test]
fn diag_soq3_multiplicities() {
    let o = baxter(&["diag", "--family", "soq3", "--q", "1.5", "--theta", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = s.lines().find(|l| l.starts_with("diagonal at")).unwrap();
    assert!(
        line.contains("×1") && line.contains("×3") && line.ends_with("1.0000 ×5"),
        "{line}"
    );
}

#[test]
fn diag_nested_labels() {
    let o = baxter(&["diag", "--family", "nested", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("row labels: 1(+), 2(+), 3(+), 4(+), 5, 4(-), 3(-), 2(-), 1(-)"));
}

#[test]
fn diag_at_zero_is_identity() {
    let o = baxter(&["diag", "--family", "glq", "--n", "2", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("diagonal at theta=0: 1.0000 ×4"));
}

#[test]
fn transfer_examples() {
    let o = baxter(&[
        "transfer", "--family", "vertex6", "--L", "2", "--gamma", "0.9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x-table"));
    let o = baxter(&[
        "transfer",
        "--family",
        "exotic-so",
        "--n",
        "3",
        "--q",
        "1.5",
        "--L",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constraint classes"));
    let o = baxter(&[
        "transfer", "--family", "vertex6", "--L", "1", "--theta", "0.3", "--theta2", "0.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degenerate"));
}

#[test]
fn transfer_cap_is_a_parameter_error() {
    let o = baxter(&["transfer", "--family", "exotic-so", "--n", "4", "--L", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_is_deterministic() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for path in [&a, &b] {
        let o = baxter(&[
            "verify",
            "--family",
            "exotic-so",
            "--n",
            "3",
            "--q",
            "1.5",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["invocation"]["seed"], 42);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        for key in ["name", "samples", "max_residual", "tol", "pass"] {
            assert!(c.get(key).is_some(), "{c}");
        }
    }
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn seed_changes_samples() {
    let run = |seed: &str| {
        let p = tmp(&format!("seed-{seed}.json"));
        baxter(&[
            "verify",
            "--family",
            "glq",
            "--seed",
            seed,
            "--json",
            p.to_str().unwrap(),
        ]);
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let _ = std::fs::remove_file(p);
        v["checks"].clone()
    };
    assert_ne!(run("1"), run("2"));
}
