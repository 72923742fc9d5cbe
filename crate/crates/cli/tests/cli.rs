use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn nefmirror(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefmirror")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = nefmirror(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn classify_reports_mum_at_the_origin() {
    let (code, r) = report(&["pf", "classify", "--op", "L", "--point", "z=0"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(
        r["results"],
        json!({"operator": "L", "point": "z=0", "indicial": [0, 0, 0, 0], "jordan": [4], "classification": "MUM"})
    );
    let (_, k) = report(&["pf", "classify", "--op", "R"]);
    assert_eq!(k["results"]["classification"], "K");
    assert_eq!(k["results"]["jordan"], json!([2, 2]));
}

#[test]
fn output_is_byte_identical() {
    for args in [&["pf", "frobenius", "--order", "24"][..], &["fan", "compare"], &["family", "odp"]] {
        let a = nefmirror(&[args, &["--json"]].concat());
        let b = nefmirror(&[args, &["--json"]].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("timing_ms"));
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, r) = report(&["pf", "yukawa", "--timing"]);
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn usage_errors_exit_two() {
    let empty = tmp("empty.json");
    std::fs::write(&empty, "").unwrap();
    let e = empty.to_str().unwrap();
    for args in [
        vec!["polytope", "dual", "--in", e],
        vec!["polytope", "dual", "--in", "/nonexistent/file.json"],
        vec!["polytope", "dual", "--builtin", "delta", "--in", e],
        vec!["polytope", "dual", "--builtin", "cube"],
        vec!["family", "singular", "--psi", "1+x"],
        vec!["family", "patch", "--cone", "W1"],
        vec!["pf", "classify", "--op", "L", "--point", "psi=0"],
        vec!["pf", "frobenius", "--op", "M"],
        vec!["frobnicate"],
        vec!["pf"],
    ] {
        assert_eq!(nefmirror(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn singular_fibers_by_literal() {
    let (code, r) = report(&["family", "singular", "--psi=-1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["rank"], 2);
    let (code, r) = report(&["family", "singular", "--psi", "-1+1*z6"]);
    assert_eq!(code, 0);
    assert_eq!(r["inputs"]["psi"], json!({"a": "-1", "b": "1"}));
    let (code, r) = report(&["family", "singular", "--psi", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["on_fiber"], false);
}

#[test]
fn node_forms_are_reported_per_root() {
    let (code, r) = report(&["family", "odp"]);
    // The computed form differs from the printed one, so the report fails.
    assert_eq!(code, 1);
    let roots = r["results"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 6);
    assert!(roots.iter().all(|x| x["rank"] == 2 && x["form"]["det"] == "9/16"));
    assert_eq!(r["results"]["printed_form"]["det"], "3");
    assert_eq!(r["results"]["witness"]["rank"], 3);
}

#[test]
fn out_writes_the_report() {
    let path = tmp("diamond.json");
    let p = path.to_str().unwrap();
    let (code, r) = report(&["pf", "diamond", "--out", p]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, r);
}

#[test]
fn dual_of_a_file_round_trips() {
    let (_, r) = report(&["polytope", "dual", "--builtin", "nabla"]);
    assert_eq!(r["results"]["reflexive"], true);
    let path = tmp("nabla_dual.json");
    std::fs::write(&path, r["results"]["dual"].to_string()).unwrap();
    let (code, back) = report(&["polytope", "dual", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(back["results"]["vertices"], 15);
    assert_eq!(back["results"]["reflexive"], true);
}

#[test]
fn nef_partitions_and_sums() {
    assert_eq!(report(&["nef", "check", "--builtin", "delta"]).1["results"]["nef_partition"], true);
    assert_eq!(report(&["nef", "dual", "--builtin", "nabla"]).0, 0);
    let (code, r) = report(&["polytope", "sum", "--builtin", "nabla1", "nabla2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["matches_total"], true);
    let (code, r) = report(&["polytope", "sum", "--builtin", "delta1", "delta1"]);
    assert_eq!((code, r["status"].clone()), (0, json!("info")));
}

#[test]
fn nonregular_triangulation_is_rejected() {
    let (code, r) = report(&["projectivity", "check", "--builtin", "nonregular"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["witness_verified"], true);
    let (code, r) = report(&["triangulate", "verify", "--builtin", "nonregular"]);
    // A proper triangulation, but it skips lattice points and has no central vertex.
    assert_eq!(code, 1);
    assert_eq!(r["results"]["axioms"], true);
    assert_eq!(r["results"]["covers"], true);
    assert_eq!(r["results"]["maximal"], false);
    assert_eq!(r["results"]["star"], false);
}

#[test]
fn text_mode_summarizes() {
    let out = nefmirror(&["pf", "yukawa"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("pf yukawa: pass\n"));
    assert!(text.contains("  holds: true"));
}

#[test]
fn annihilation_and_frobenius_orders() {
    let (code, r) = report(&["pf", "annihilate", "--order", "50"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["first_coefficients"], json!(["1", "36", "8100"]));
    // R does not annihilate the period in z.
    assert_eq!(report(&["pf", "annihilate", "--op", "R", "--order", "10"]).0, 1);
    let (code, r) = report(&["pf", "frobenius", "--op", "L", "--order", "16"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["log_solutions"], 3);
    let (_, r) = report(&["pf", "frobenius", "--op", "R", "--order", "16"]);
    assert_eq!(
        r["results"]["coefficient_formulas"]["6"],
        "(12*lambda^3 + 20*lambda^2 + 32*lambda + 16)/(lambda^4 + 20*lambda^3 + 148*lambda^2 + 480*lambda + 576)"
    );
}
