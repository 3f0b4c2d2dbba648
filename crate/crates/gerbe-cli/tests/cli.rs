use serde_json::Value;
use std::process::{Command, Output};

fn gerbe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gerbe")).args(args).output().expect("spawn gerbe")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timing(mut v: Value) -> Value {
    for r in v.as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

#[test]
fn check_all_is_reproducible() {
    let a = gerbe(&["check-all", "--seed", "42"]);
    let b = gerbe(&["check-all", "--seed", "42", "--serial"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(b.status.code(), Some(0));
    let (a, b) = (without_timing(json(&a)), without_timing(json(&b)));
    assert!(a.as_array().unwrap().len() > 40);
    assert_eq!(a, b);
}

#[test]
fn filter_narrows_the_run() {
    let out = gerbe(&["check-all", "cocycle-a-general", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["identity"].as_str().unwrap()).collect();
    assert_eq!(names, ["cocycle-a-general"]);
    assert_eq!(v[0]["seed"], 1);
}

#[test]
fn list_prints_the_registry() {
    let out = gerbe(&["check-all", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["inversion", "three-term-e1e2e3", "hermitian-metric-ab", "fibre-integral"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn config_overrides() {
    let dir = std::env::temp_dir().join(format!("gerbe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"inversion": {"samples": 3}}"#).unwrap();
    let out = gerbe(&["check-all", "inversion", "--config", good.to_str().unwrap()]);
    assert_eq!(json(&out)[0]["samples"], 3);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"not-an-identity": {"samples": 3}}"#).unwrap();
    assert_eq!(gerbe(&["check-all", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn single_checks() {
    let out = gerbe(&["check", "inversion", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["identity"].as_str(), v["samples"].as_u64(), v["pass"].as_bool()), (Some("inversion"), Some(20), Some(true)));
    let out = gerbe(&["check", "gamma-three-term", "--samples", "5", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
    assert_eq!(gerbe(&["check", "no-such-identity"]).status.code(), Some(2));
}

#[test]
fn eval_theta() {
    let out = gerbe(&["eval", "theta", "--z", "0.3+0.1i", "--tau", "0.2+0.9i"]);
    assert!(out.status.success());
    let v = json(&out);
    let (re, im) = (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    assert!(re.is_finite() && im.is_finite());
    assert!(v["tail_bound"].as_f64().unwrap() < 1e-15);
    // a real τ is outside the domain
    assert_eq!(gerbe(&["eval", "theta", "--z", "0.3", "--tau", "0.2"]).status.code(), Some(2));
}

#[test]
fn bernoulli_output() {
    let out = gerbe(&["bernoulli", "--r", "2", "--n", "2"]);
    let v = json(&out);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 6);
    let out = gerbe(&["bernoulli", "--r", "1", "--n", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("B_{1,2} = ") && text.trim_end().ends_with("/ (x1)"), "{text}");
    assert!(text.contains("1/6*x1^2"));
}

#[test]
fn wedge_commands() {
    let v = json(&gerbe(&["wedge-info", "--a", "1,0,0", "--b", "1,2,0"]));
    assert_eq!(v["modulus"], 2);
    let out = gerbe(&["normal-form", "--a", "1,0,0", "--b", "1,2,0"]);
    assert!(out.status.success());
    assert_eq!(gerbe(&["wedge-info", "--a", "1,0", "--b", "1,2,0"]).status.code(), Some(2));
}
