use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn confrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confrb"))
        .args(args)
        .env_remove("CONFRB_MAX_CANDIDATES")
        .output()
        .expect("spawn confrb")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = confrb(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("confrb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn axioms() {
    for preset in ["sl2", "cur-sl2", "vir", "rank2-example"] {
        let (code, v) = json(&["axioms", "--preset", preset]);
        assert_eq!(code, 0, "{preset}: {v}");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["defects"].as_array().unwrap().len(), 0);
    }
    let bad = scratch("broken.json", "{\"generators\": [\"L\"], ");
    let (code, v) = json(&["axioms", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string() || v["message"].is_string(), "{v}");
}

#[test]
fn rb_check() {
    assert_eq!(json(&["rb-check", "--preset", "cur-sl2", "--catalog", "R1", "--weight", "0"]).0, 0);
    assert_eq!(json(&["rb-check", "--preset", "cur-sl2", "--catalog", "Q1", "--weight", "1"]).0, 0);
    let (code, v) = json(&["rb-check", "--preset", "cur-sl2", "--catalog", "Q1", "--weight", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let defects = v["defects"].as_array().unwrap();
    assert!(!defects.is_empty());
    assert!(defects.iter().all(|d| d["value"] != "0"));
}

#[test]
fn rb_check_size_mismatch() {
    let op = scratch("op.json", "[[\"0\", \"0\"], [\"0\", \"0\"]]");
    let (code, _) = json(&["rb-check", "--preset", "cur-sl2", "--operator", op.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn derive_system() {
    for w in ["0", "1"] {
        let (code, v) = json(&["derive-system", "--weight", w, "--compare"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["status"], "pass");
    }
    let (code, v) = json(&["derive-system", "--weight", "0"]);
    assert_eq!(code, 0);
    let text = v["output"].to_string();
    let n = v["output"]["equations"]
        .as_array()
        .map(Vec::len)
        .unwrap_or_else(|| panic!("no equation list: {text}"));
    assert_eq!(n, 18);
}

#[test]
fn ccybe() {
    let (code, v) = json(&["ccybe", "--preset", "cur-sl2", "--family", "ii", "--check", "ccybe", "--to-rb"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["output"]["family"]["name"], "R2");
    assert_eq!(v["output"]["q_odd"], true);

    let wedge = scratch("wedge.json", r#"{"rank": 2, "terms": {"h,e": "1", "e,h": "-1"}}"#);
    let (code, v) = json(&["ccybe", "--preset", "cur-sl2", "--tensor", wedge.to_str().unwrap(), "--check", "ccybe"]);
    assert_eq!(code, 0, "{v}");

    let ee = scratch("ee.json", r#"{"rank": 2, "terms": {"e,e": "1"}}"#);
    let (code, v) = json(&["ccybe", "--preset", "cur-sl2", "--tensor", ee.to_str().unwrap(), "--check", "skew"]);
    assert_eq!(code, 1, "{v}");

    let rank3 = scratch("r3.json", r#"{"rank": 3, "terms": {"e,e,e": "1"}}"#);
    let (code, _) = json(&["ccybe", "--preset", "cur-sl2", "--tensor", rank3.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn search() {
    let (code, v) = json(&["search", "--preset", "vir", "--weight", "0", "--deg", "3", "--coeffs", "-1,0,1"]);
    assert_eq!(code, 0, "{v}");
    let hits = v["output"]["hits"].as_array().unwrap();
    assert_eq!(hits.len(), 1);

    let (code, v) = json(&[
        "search", "--preset", "cur-sl2", "--weight", "0", "--deg", "0", "--coeffs", "-1,0,1", "--pattern", "Re=0",
    ]);
    assert_eq!(code, 0, "{v}");
    assert!(!v["output"]["hits"].as_array().unwrap().is_empty());

    let (code, v) = json(&["search", "--preset", "vir", "--deg", "2", "--coeffs", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["hits"].as_array().unwrap().len(), 1);

    let (code, _) = json(&["search", "--preset", "cur-sl2", "--deg", "1"]);
    assert_eq!(code, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_confrb"))
        .args(["search", "--preset", "vir", "--deg", "3"])
        .env("CONFRB_MAX_CANDIDATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn text_and_json_carry_the_same_defects() {
    let args = ["rb-check", "--preset", "cur-sl2", "--catalog", "Q1", "--weight", "0"];
    let (_, v) = json(&args);
    let text = String::from_utf8(confrb(&args).stdout).unwrap();
    for d in v["defects"].as_array().unwrap() {
        assert!(text.contains(d["location"].as_str().unwrap()), "{text}");
        assert!(text.contains(d["value"].as_str().unwrap()), "{text}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(confrb(&["axioms", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(confrb(&["frobnicate"]).status.code(), Some(2));
}
