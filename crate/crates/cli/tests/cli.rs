use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corings"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(cmd: &str, file: &str) -> (i32, Value) {
    let path = example(file);
    let out = run(&[cmd, path.to_str().unwrap(), "--format", "json"]);
    let doc = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), doc)
}

#[test]
fn bundled_examples_exit_as_documented() {
    let cases = [
        ("check-coring", "trivial.json", 0),
        ("frobenius-coring", "trivial.json", 0),
        ("check-algebra", "algebras.json", 0),
        ("check-algebra", "algebra_perturbed.json", 1),
        ("check-coring", "corings.json", 0),
        ("check-coring", "coring_mutated.json", 1),
        ("cotensor", "cotensor_grouplike.json", 0),
        ("nat-space", "nat_space_grouplike.json", 0),
        ("coseparable", "coseparable.json", 1),
        ("injective", "injective.json", 1),
        ("frobenius-coring", "qc2_dual.json", 0),
        ("frobenius-coring", "t2_dual.json", 1),
        ("frobenius-pair", "frobenius_pair_qc2.json", 0),
        ("frobenius-pair", "frobenius_pair_rejected.json", 1),
        ("frobenius-extension", "extension_qc2.json", 0),
        ("frobenius-extension", "extension_t2.json", 1),
        ("graded-build", "graded_c2.json", 0),
        ("graded-cohom", "graded_c2.json", 0),
        ("tstar-check", "tstar_t2.json", 1),
        ("entwine-check", "entwine.json", 0),
        ("entwine-check", "entwine_perturbed.json", 1),
    ];
    for (cmd, file, code) in cases {
        let (got, doc) = json(cmd, file);
        assert_eq!(got, code, "{cmd} {file}");
        assert_eq!(doc["exit_code"], code, "{cmd} {file}");
    }
}

#[test]
fn reports_carry_values_and_witnesses() {
    let (_, doc) = json("cotensor", "cotensor_grouplike.json");
    assert_eq!(doc["results"][0]["values"]["dim"], 5);
    let (_, doc) = json("nat-space", "nat_space_grouplike.json");
    assert_eq!(doc["results"][0]["values"]["dim"], 3);

    let (_, doc) = json("frobenius-coring", "qc2_dual.json");
    let r = &doc["results"][0];
    assert_eq!(r["verdict"], "Frobenius");
    let labels: Vec<&str> = r["witnesses"].as_array().unwrap().iter().map(|w| w["label"].as_str().unwrap()).collect();
    assert!(labels.iter().any(|l| l.contains("psi_raw")), "{labels:?}");
    assert!(labels.iter().any(|l| l.contains("omega_raw")), "{labels:?}");

    let (_, doc) = json("frobenius-coring", "t2_dual.json");
    let r = &doc["results"][0];
    assert_eq!(r["verdict"], "NotFrobenius");
    let reason = r["reason"].as_str().unwrap();
    assert!(reason.starts_with("generic determinant ≡ 0 (grid exhausted"), "{reason}");
}

#[test]
fn failing_checks_name_a_witness() {
    let (_, doc) = json("check-coring", "coring_mutated.json");
    let failed: Vec<&Value> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| c["witnesses"].as_array().is_some_and(|w| !w.is_empty())));
}

#[test]
fn names_select_objects_in_declaration_order() {
    let path = example("corings.json");
    let out = run(&["check-coring", path.to_str().unwrap(), "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let all: Vec<String> = doc["results"].as_array().unwrap().iter().map(|r| r["object"].as_str().unwrap().to_string()).collect();
    assert!(all.len() >= 2);
    let out = run(&["check-coring", path.to_str().unwrap(), &all[1], "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 1);
    assert_eq!(doc["results"][0]["object"], all[1].as_str());

    let out = run(&["check-coring", path.to_str().unwrap(), "no-such-coring"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_three_with_a_location() {
    let dir = std::env::temp_dir().join(format!("corings-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let bad_scalar = dir.join("bad_scalar.json");
    std::fs::write(
        &bad_scalar,
        r#"{"algebras": [{"name": "a", "dim": 2, "unit": [1, "x"], "mult": []}]}"#,
    )
    .unwrap();
    let out = run(&["check-algebra", bad_scalar.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["exit_code"], 3);
    let loc = doc["error"]["location"].as_str().unwrap();
    assert!(loc.contains("algebras[0]") && loc.contains("unit[1]"), "{loc}");

    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\"algebras\": [").unwrap();
    let out = run(&["check-algebra", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let unknown = dir.join("unknown.json");
    std::fs::write(&unknown, r#"{"algebra": []}"#).unwrap();
    assert_eq!(run(&["check-algebra", unknown.to_str().unwrap()]).status.code(), Some(3));

    let missing = dir.join("missing.json");
    assert_eq!(run(&["check-algebra", missing.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_is_read_from_the_environment() {
    let path = example("t2_dual.json");
    let out = Command::new(env!("CARGO_BIN_EXE_corings"))
        .args(["frobenius-coring", path.to_str().unwrap(), "--format", "json"])
        .env("CORINGS_BUDGET_HEIGHT", "2")
        .env("CORINGS_BUDGET_GRID", "5000")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["budget"]["height"], 2);
    assert_eq!(doc["budget"]["grid"], 5000);
}

#[test]
fn text_output_ends_with_the_status_line() {
    let path = example("qc2_dual.json");
    let out = run(&["frobenius-coring", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("status: pass (exit 0)"), "{text}");
}
