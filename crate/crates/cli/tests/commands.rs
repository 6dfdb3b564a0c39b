use std::process::Command;

use krull_cli::{parse, run, Options};

fn krull(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_krull")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn table<'a>(report: &'a krull_cli::Report, name: &str) -> &'a [usize] {
    &report.tables.iter().find(|t| t.name == name).unwrap_or_else(|| panic!("no table {name}")).dims
}

#[test]
fn krull_filtration_of_the_polynomial_algebra_counts_binary_digits() {
    let cmd = krull_cli::Command::Krull {
        max: 2,
        expr: parse("bz2(1)").unwrap(),
    };
    let r = run(&cmd, Options { degree: 16, gen_window: None }).unwrap();
    for n in 0..=2 {
        let want: Vec<usize> = (0..=16usize).map(|d| usize::from(d.count_ones() as usize <= n)).collect();
        assert_eq!(table(&r, &format!("k_{n}")), &want[..], "k_{n}");
    }
    assert!(r.passed());
}

#[test]
fn sigma_of_a_free_module() {
    let cmd = krull_cli::Command::Sigma {
        max: 2,
        expr: parse("free(1)").unwrap(),
    };
    let r = run(&cmd, Options::default()).unwrap();
    assert_eq!(table(&r, "σ_0"), &[0, 0, 0, 0, 0]);
    assert_eq!(table(&r, "σ_1"), &[1, 0, 0, 0, 0]);
    assert_eq!(table(&r, "σ_2"), &[0, 0, 0, 0, 0]);
    assert!(r.passed());
}

#[test]
fn verify_the_pullback() {
    let (code, out, _) = krull(&["verify", "example62"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS R_0 k_1 M ⊊ k_1 R_0 M"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn nilpotent_filtration_of_a_finite_module() {
    let (code, out, _) = krull(&["nil", "trunc(2, free(1))", "--degree", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("nil_1  [0 1 1 0 0 0 0 0 0]"), "{out}");
    assert!(out.contains("nil_2  [0 0 1 0 0 0 0 0 0]"), "{out}");
}

#[test]
fn iterated_tbar_of_a_tensor_square_is_regular() {
    let (code, out, _) = krull(&["tbar", "--iter", "2", "tensor(free(1), free(1))", "--degree", "8", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tables"][0]["dims"][0], 2);
    assert_eq!(v["tables"][1]["dims"][0], 1);
}

#[test]
fn json_reports_follow_the_schema_and_are_deterministic() {
    let args = ["krull", "--max", "2", "tensor(free(1), free(2))", "--degree", "12", "--json"];
    let (code, first, _) = krull(&args);
    assert_eq!(code, 0);
    let (_, second, _) = krull(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["assertions", "cert", "command", "degree_cap", "tables"]);
    assert_eq!(v["command"], "krull --max 2 tensor(free(1), free(2))");
    assert_eq!(v["degree_cap"], 12);
    for t in v["tables"].as_array().unwrap() {
        assert!(t["name"].is_string() && t["dims"].is_array());
    }
    for a in v["assertions"].as_array().unwrap() {
        assert!(a["anchor"].is_string() && a["pass"].is_boolean());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(krull(&["info", "free(2)", "--degree", "8"]).0, 0);
    // usage errors
    assert_eq!(krull(&["info"]).0, 2);
    assert_eq!(krull(&["frobnicate", "free(1)"]).0, 2);
    let (code, _, err) = krull(&["info", "tensor(free(1) free(1))"]);
    assert_eq!(code, 2);
    assert!(err.contains("byte 15"), "{err}");
    assert_eq!(krull(&["verify", "no-such-suite"]).0, 2);
    // a generator window beyond what k_n M is certified through
    let (code, _, err) = krull(&["sigma", "--max", "1", "free(1)", "--degree", "8", "--gen-window", "40"]);
    assert_eq!(code, 2);
    assert!(err.contains("degree 40"), "{err}");
}
