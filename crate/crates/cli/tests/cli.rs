use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn preab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preab")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(args: &[&str]) -> Value {
    let out = preab(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.display().to_string()
}

fn verdicts(v: &Value) -> Vec<(String, String)> {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["property"].as_str().unwrap().to_string(), x["verdict"].as_str().unwrap().to_string()))
        .collect()
}

fn has_fact(v: &Value, property: &str, holds: bool) -> bool {
    v["facts"].as_array().unwrap().iter().any(|f| f["property"] == property && f["holds"] == holds)
}

#[test]
fn classify_vectq_passes_everything() {
    let v = report(&["classify", "vectq"]);
    assert_eq!(v["schema"], "preab/1");
    assert!(verdicts(&v).iter().all(|(_, r)| r == "pass-on-corpus"));
    assert!(v["certificates"].as_array().unwrap().is_empty());
    for p in ["semi-abelian", "quasi-abelian", "integral", "admissible-intersections"] {
        assert!(has_fact(&v, p, true), "{p}");
    }
}

#[test]
fn classify_pairvect_reports_the_balance_witness() {
    let v = report(&["classify", "pairvect"]);
    assert!(verdicts(&v).iter().all(|(_, r)| r == "pass-on-corpus"));
    let w = &v["balance_witnesses"][0];
    assert_eq!(w["source"]["subspace"], Value::Array(vec![]));
    assert_eq!(w["source"]["dim"], 1);
    assert_eq!(w["target"]["dim"], 1);
}

#[test]
fn product_verdicts_agree_with_components() {
    let a = verdicts(&report(&["classify", "vectq"]));
    let b = verdicts(&report(&["classify", "pairvect"]));
    let p = verdicts(&report(&["classify", "product:vectq:pairvect"]));
    for ((x, y), z) in a.iter().zip(&b).zip(&p) {
        let both = x.1 == "pass-on-corpus" && y.1 == "pass-on-corpus";
        assert_eq!(both, z.1 == "pass-on-corpus", "{}", z.0);
    }
    let v = report(&["classify", "product:fgab:vectq"]);
    assert_eq!(v["instance"], "product:fgab:vectq");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [&["classify", "fgab", "--seed", "9"][..], &["ai-check", "pairvect", "all"], &["classify", "mock-lazy"]] {
        assert_eq!(preab(args).stdout, preab(args).stdout);
    }
}

#[test]
fn emitted_certificates_verify() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["classify", "mock-closure"][..],
        &["classify", "mock-lazy-dual"],
        &["classify", "pairvect"],
        &["ai-check", "fgab", "split"],
        &["seq-verify", "1/1000", "8"],
    ] {
        let v = report(args);
        let path = write(&dir, "r.json", &v);
        let out = preab(&["verify", &path]);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn tampering_is_detected() {
    let dir = TempDir::new().unwrap();
    let mut v = report(&["ai-check", "fgab", "split"]);
    v["certificates"][0]["morphisms"]["phi_a"] = v["certificates"][0]["morphisms"]["c"].clone();
    assert_eq!(code(&preab(&["verify", &write(&dir, "a.json", &v)])), 1);

    let mut v = report(&["classify", "mock-closure"]);
    v["facts"].as_array_mut().unwrap().pop();
    assert_eq!(code(&preab(&["verify", &write(&dir, "b.json", &v)])), 1);

    let mut v = report(&["seq-verify", "1/10"]);
    v["banach"]["n"] = Value::from(11);
    assert_eq!(code(&preab(&["verify", &write(&dir, "c.json", &v)])), 1);
}

#[test]
fn ai_check_examples() {
    let v = report(&["ai-check", "fgab", "split"]);
    assert_eq!(v["verdict"]["verdict"], "certificate");
    assert_eq!(v["certificates"][0]["section_trick"], true);
    for inst in ["vectq", "pairvect", "fgab"] {
        let v = report(&["ai-check", inst, "all"]);
        assert_eq!(v["verdict"]["verdict"], "pass-on-corpus", "{inst}");
        assert_eq!(v["axioms"]["verdict"], "pass-on-corpus", "{inst}");
        assert!(has_fact(&v, "quasi-abelian", true));
    }
}

#[test]
fn seq_verify_examples() {
    let v = report(&["seq-verify", "1/1000", "8"]);
    assert_eq!(v["banach"]["n"], 1000);
    assert_eq!(v["nuclear"]["n"], 1000);
    let v = report(&["seq-verify", "1", "1"]);
    assert_eq!(v["banach"]["n"], 1);
    assert_eq!(v["nuclear"]["n"], 1);
}

#[test]
fn operational_errors_set_exit_codes() {
    assert_eq!(code(&preab(&["classify", "banach"])), 2);
    assert_eq!(code(&preab(&["ai-check", "product:vectq", "all"])), 2);
    assert_eq!(code(&preab(&["seq-verify", "0"])), 2);
    assert_eq!(code(&preab(&["seq-verify", "-1/3"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    for text in ["[{", "[]", r#"[{"source":1,"target":2,"matrix":[]}]"#, r#"[{"source":2,"target":1,"matrix":[["1"]]}]"#] {
        std::fs::write(&bad, text).unwrap();
        assert_eq!(code(&preab(&["classify", "vectq", "--corpus", bad.to_str().unwrap()])), 3, "{text}");
    }
    assert_eq!(code(&preab(&["classify", "vectq", "--corpus", "/nonexistent.json"])), 3);
}

#[test]
fn generated_corpora_load_back() {
    let dir = TempDir::new().unwrap();
    for inst in ["vectq", "fgab", "pairvect", "product:vectq:pairvect"] {
        let path = dir.path().join(format!("{}.json", inst.replace(':', "_")));
        let p = path.to_str().unwrap();
        let out = preab(&["corpus", "gen", "--instance", inst, "--seed", "4", "--size", "20", "--json", p]);
        assert_eq!(code(&out), 0);
        let v = report(&["classify", inst, "--corpus", p]);
        assert_eq!(v["fingerprint"]["morphisms"], 20);
        assert_eq!(v["fingerprint"]["seed"], Value::Null);
        assert!(Path::new(p).exists());
    }
}
