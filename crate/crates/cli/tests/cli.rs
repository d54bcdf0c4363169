use std::fs;
use std::process::{Command, Output};

use qschur::oracle::build_rep;
use qschur::text::{parse_element, ElementJson};
use qschur::{Context, Orientation};

fn qschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = qschur(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn multiply_examples() {
    assert_eq!(
        ok(&[
            "multiply",
            "--d",
            "1",
            "--lhs",
            "e^(1) K[0,1]",
            "--rhs",
            "K[0,1] f^(1)"
        ]),
        "K[1,0]\n"
    );
    assert_eq!(
        ok(&[
            "multiply",
            "--d",
            "1",
            "--lhs",
            "K[1,0] + K[0,1]",
            "--rhs",
            "e^(1) K[0,1] f^(1)"
        ]),
        "K[1,0]\n"
    );
}

#[test]
fn multiply_by_identity_file_is_verbatim() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("identity.json");
    let ctx = Context::new(2);
    fs::write(&id, ctx.identity().to_json_string()).unwrap();
    let x = "(v^2 - 3) * e^(1) K[0,2] f^(1) + K[1,1]";
    let canonical = parse_element(x, &ctx, Orientation::Ekf)
        .unwrap()
        .to_string();
    let out = ok(&[
        "multiply",
        "--d",
        "2",
        "--lhs",
        x,
        "--rhs",
        id.to_str().unwrap(),
    ]);
    assert_eq!(out.trim_end(), canonical);
}

#[test]
fn mismatched_degree_is_a_usage_error() {
    let lhs = Context::new(2).identity().to_json_string();
    let out = qschur(&["multiply", "--d", "1", "--lhs", &lhs, "--rhs", "K[1,0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("context mismatch"));
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = qschur(&[
        "multiply", "--d", "1", "--lhs", "K[1,0] +", "--rhs", "K[1,0]",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qschur(&["multiply", "--d", "1", "--lhs", "K[2,0]", "--rhs", "K[1,0]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_examples() {
    assert_eq!(
        ok(&["reduce", "--d", "2", "--monomial", "1,1,1,1"]),
        "(v + v^-1) * K[2,0]\ndefect s = 1\nrange: k = 1..=1\n"
    );
    assert_eq!(
        ok(&["reduce", "--d", "3", "--monomial", "0,2,1,0"]),
        "K[2,1]\ndefect s = -1\nrange: none (already canonical)\n"
    );
    assert_eq!(
        ok(&["reduce", "--d", "1", "--monomial", "1,1,0,1"]),
        "0\ndefect s = 2\nrange: empty\n"
    );
    let json = ok(&[
        "reduce",
        "--d",
        "2",
        "--monomial",
        "1,1,1,1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["defect"], 1);
    assert_eq!(v["range"], serde_json::json!([1, 1]));
}

#[test]
fn reduce_rejects_bad_quadruples() {
    for m in ["1,1,1,1", "1,2,3", "a,0,1,0"] {
        let out = qschur(&["reduce", "--d", "1", "--monomial", m]);
        assert_eq!(out.status.code(), Some(2), "{m}");
    }
}

#[test]
fn basis_listing() {
    let out = ok(&["basis", "--d", "3"]);
    assert_eq!(out.lines().count(), 20);
    assert_eq!(out.lines().next(), Some("K[0,3]"));
    let out = ok(&["basis", "--d", "1", "--orientation", "fke"]);
    assert_eq!(out, "K[0,1]\nK[1,0]\nK[1,0] e^(1)\nf^(1) K[1,0]\n");
    assert_eq!(
        ok(&[
            "basis",
            "--d",
            "2",
            "--kbinom",
            "--of",
            "K[1,1] + (v + v^-1) * K[2,0]"
        ]),
        "[K1;1]\n"
    );
}

#[test]
fn table_small_degrees() {
    let t0 = ok(&["table", "--d", "0"]);
    assert_eq!(t0.lines().count(), 1);
    let line: serde_json::Value = serde_json::from_str(t0.lines().next().unwrap()).unwrap();
    assert_eq!(line["lhs"], "K[0,0]");
    assert_eq!(
        line["product"]["terms"][0]["coeff"],
        serde_json::json!([[0, "1"]])
    );

    let t1 = ok(&["table", "--d", "1"]);
    assert_eq!(t1.lines().count(), 16);
    let hit = t1
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["lhs"] == "e^(1) K[0,1]" && v["rhs"] == "K[0,1] f^(1)")
        .unwrap();
    let product: ElementJson = serde_json::from_value(hit["product"].clone()).unwrap();
    let ctx = Context::new(1);
    assert_eq!(
        product.to_element(&ctx).unwrap(),
        ctx.idempotent(1, 0).unwrap()
    );

    let t2 = ok(&["table", "--d", "2"]);
    assert_eq!(t2.lines().count(), 100);
    assert!(t2.starts_with("{\"lhs\":"));
}

#[test]
fn table_is_closed_under_the_representation() {
    for d in 0..=3u32 {
        let ctx = Context::new(d);
        let rep = build_rep(d).unwrap();
        for o in ["ekf", "fke"] {
            let orientation = if o == "ekf" {
                Orientation::Ekf
            } else {
                Orientation::Fke
            };
            let table = ok(&["table", "--d", &d.to_string(), "--orientation", o]);
            for line in table.lines() {
                let v: serde_json::Value = serde_json::from_str(line).unwrap();
                let x = parse_element(v["lhs"].as_str().unwrap(), &ctx, orientation).unwrap();
                let y = parse_element(v["rhs"].as_str().unwrap(), &ctx, orientation).unwrap();
                let p: ElementJson = serde_json::from_value(v["product"].clone()).unwrap();
                let p = p.to_element(&ctx).unwrap();
                assert!(p.is_canonical());
                assert_eq!(p.orientation(), orientation);
                assert_eq!(
                    rep.matrix_of_element(&p).unwrap(),
                    rep.matrix_of_element(&x)
                        .unwrap()
                        .mul(&rep.matrix_of_element(&y).unwrap()),
                    "{line}"
                );
            }
        }
    }
}

#[test]
fn table_guard() {
    let out = qschur(&["table", "--d", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    assert_eq!(
        ok(&["table", "--d", "2", "--out", path.to_str().unwrap()]),
        ""
    );
    let first = fs::read(&path).unwrap();
    let second = ok(&["table", "--d", "2"]);
    assert_eq!(first, second.as_bytes());
}

#[test]
fn verify_passes() {
    for d in ["0", "3"] {
        let out = ok(&["verify", "--d", d, "--suite", "all"]);
        assert!(
            out.contains(&format!("suite all at d = {d}: pass")),
            "{out}"
        );
    }
    let json = ok(&[
        "verify",
        "--d",
        "2",
        "--suite",
        "relations",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["suite"], "relations");
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks
        .iter()
        .all(|c| c["pass"] == true && c["witness"].is_null() && c["id"].is_string()));
}

#[test]
fn injected_faults_fail_verification() {
    let out = qschur(&[
        "verify",
        "--d",
        "3",
        "--suite",
        "reduction",
        "--inject-fault",
        "skip-reduction",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    let out = qschur(&[
        "verify",
        "--d",
        "3",
        "--suite",
        "relations",
        "--inject-fault",
        "mutate-coproduct",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["pass"] == false && c["witness"].is_string()));
}

#[test]
fn verify_guards() {
    assert_eq!(
        qschur(&["verify", "--d", "7", "--suite", "oracle"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qschur(&["verify", "--d", "11", "--suite", "relations"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qschur(&["verify", "--d", "2", "--suite", "everything"])
            .status
            .code(),
        Some(2)
    );
    let out = qschur(&[
        "verify",
        "--d",
        "11",
        "--suite",
        "relations",
        "--max-d-override",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
