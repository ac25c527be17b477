use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use twinbuild::twintree::{Field, LaurentMat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinbuild")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn result(args: &[&str]) -> Value {
    ok(args)["result"].clone()
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twinbuild-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn spec_examples() {
    let a2 = fixture("a2.json", r#"{"rank":2,"m":[[1,3],[3,1]]}"#);
    let aff = fixture("affA2.json", r#"{"rank":3,"m":[[1,3,3],[3,1,3],[3,3,1]]}"#);
    let a2 = a2.to_str().unwrap();
    let aff = aff.to_str().unwrap();
    assert_eq!(result(&["coxeter", "reduce", "--matrix", a2, "--word", "1 2 1 2"]), "2 1");
    assert_eq!(result(&["diagram", "check", "--matrix", aff, "--condition", "R2"]), true);
    assert_eq!(result(&["bounded", "case2", "--matrix", aff, "--bound", "6"]), 0);
}

#[test]
fn envelope_records_version_seed_and_bounds() {
    let v = ok(&["twintree", "axioms", "--q", "4", "--samples", "20", "--seed", "3"]);
    assert_eq!(v["tool"], "twinbuild");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["seed"], 3);
    assert_eq!(v["bounds"]["samples"], 20);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["coxeter", "w0", "--matrix", "affA2", "--subset", "{1,2,3}"]).status.code(), Some(2));
    assert_eq!(run(&["coxeter", "reduce", "--matrix", "A2", "--word", "1 5"]).status.code(), Some(2));
    assert_eq!(run(&["coxeter", "reduce", "--matrix", "A2", "--word", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["twintree", "torusfix", "--q", "3", "--radius", "1"]).status.code(), Some(2));
    assert_eq!(run(&["twintree", "pcheck", "--q", "11"]).status.code(), Some(2));
    assert_eq!(run(&["thinb", "chain", "--matrix", "affA2", "--r", "e:J{1}:+", "--q", "2 3:J{1}:+"]).status.code(), Some(2));
    let bad = r#"{"q":4,"entries":[{"1":[1,0]},{},{},{"0":[1,0]}]}"#;
    assert_eq!(run(&["twintree", "birkhoff", "--g", bad]).status.code(), Some(2));
}

#[test]
fn randomized_commands_require_a_seed() {
    assert_eq!(run(&["twintree", "axioms", "--q", "4"]).status.code(), Some(2));
    assert_eq!(run(&["diagram", "audit", "--random", "5"]).status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["twintree", "axioms", "--q", "5", "--samples", "50", "--seed", "9"][..],
        &["diagram", "audit", "--random", "20", "--seed", "4"][..],
        &["bounded", "enumerate", "--matrix", "affA2", "--bound", "3"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    let par = run(&["bounded", "enumerate", "--matrix", "affA2", "--bound", "3"]).stdout;
    let seq = run(&["--sequential", "bounded", "enumerate", "--matrix", "affA2", "--bound", "3"]).stdout;
    assert_eq!(par, seq);
}

#[test]
fn outputs_reparse() {
    let w = result(&["coxeter", "reduce", "--matrix", "B3", "--word", "3 2 3 2 1 3"]);
    let again = result(&["coxeter", "reduce", "--matrix", "B3", "--word", w.as_str().unwrap()]);
    assert_eq!(w, again);

    let p = result(&["thinb", "proj", "--matrix", "affA2", "--onto", "e:J{1,2}:+", "--residue", "3 1 2:J{2}:-"]);
    let same = result(&["thinb", "proj", "--matrix", "affA2", "--onto", p.as_str().unwrap(), "--residue", "3 1 2:J{2}:-"]);
    assert_eq!(p, same);

    let root = result(&["thinb", "root", "--matrix", "affA2", "--x", "e:+", "--y", "1:-"]);
    let iv = result(&["thinb", "interval", "--matrix", "affA2", "--phi", root.as_str().unwrap(), "--psi", root.as_str().unwrap()]);
    assert!(iv.as_array().unwrap().contains(&root));

    let f = Field::get(4).unwrap();
    let g = LaurentMat::mul_all(f, [&LaurentMat::upper(f, 2, 2), &LaurentMat::lower(f, 3, -1), &LaurentMat::s0(f)]);
    let d = result(&["twintree", "bruhat", "--g", &g.to_json().to_string(), "--sign", "-"]);
    assert!(d["w"].is_string());
    for part in ["left", "right"] {
        let m = d[part].to_string();
        assert_eq!(result(&["twintree", "bruhat", "--g", &m, "--sign", "-"])["w"], "e");
    }
    let audit = result(&["diagram", "audit", "--random", "3", "--seed", "1"]);
    for rep in audit["reports"].as_array().unwrap() {
        let m = rep["matrix"].to_string();
        assert_eq!(result(&["diagram", "audit", "--matrix", &m])["reports"][0], *rep);
    }
}

#[test]
fn plain_output() {
    let out = run(&["--plain", "coxeter", "reflections", "--matrix", "A2", "--max-length", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n2\n1 2 1\n");
}
