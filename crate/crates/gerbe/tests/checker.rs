use gerbe::checker::*;
use gerbe::special::TruncationPolicy;
use std::collections::BTreeSet;

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn registry_is_well_formed() {
    let reg = registry();
    let names: BTreeSet<&str> = reg.iter().map(|s| s.name).collect();
    assert_eq!(names.len(), reg.len(), "duplicate identity names");
    for required in [
        "bernoulli-printed",
        "theta-quasi-periodicity",
        "theta-modular",
        "theta-multiplier",
        "gamma-three-term",
        "gamma-modular",
        "narukawa-2",
        "narukawa-3",
        "inversion",
        "three-term-e1e2e3",
        "three-term-coplanar",
        "four-term",
        "wedge-oracle",
        "cocycle-abc",
        "cocycle-ab",
        "cocycle-a-general",
        "translation-3-cocycle",
        "fundamental-set-cardinality",
        "orbit-count",
        "hermitian-bertie",
        "hermitian-cocycle",
        "equazione1",
        "equazione2",
        "equazione3",
        "h3-shift",
        "h3-subdivision",
        "im-product",
        "h-ab-series",
        "curvature-h2",
        "curvature-h3",
        "fibre-integral",
    ] {
        assert!(names.contains(required), "{required} not registered");
    }
    assert!(reg.iter().all(|s| s.samples > 0 && s.tol > 0.0 && !s.formula.is_empty()));
}

#[test]
fn named_runs() {
    let r = run_check("inversion", 100, 42, 1e-9, &pol()).unwrap();
    assert!(r.pass, "{:?}", r.failures);
    assert_eq!((r.identity.as_str(), r.samples, r.seed), ("inversion", 100, 42));
    let r = run_check("three-term-e1e2e3", 100, 42, 1e-8, &pol()).unwrap();
    assert!(r.pass);
    assert!(r.max_rel_dev < 1e-8);
}

#[test]
fn zero_tolerance_fails() {
    let r = run_check("gamma-three-term", 20, 42, 0.0, &pol()).unwrap();
    assert!(!r.pass);
    assert!(r.failure_count > 0);
    assert!(r.failures.len() <= r.failure_count.min(20));
}

#[test]
fn unknown_names_are_rejected() {
    assert!(matches!(run_check("no-such-identity", 1, 42, 1e-8, &pol()), Err(CheckerError::Unknown(_))));
    assert!(parse_overrides(r#"{"no-such-identity": {"samples": 3}}"#).is_err());
    let o = parse_overrides(r#"{"inversion": {"samples": 3, "tol": 1e-6}}"#).unwrap();
    assert_eq!(o["inversion"].samples, Some(3));
}

#[test]
fn same_seed_same_report() {
    let strip = |mut r: CheckReport| {
        r.wall_time_ms = 0;
        r
    };
    let a = strip(run_check("cocycle-ab", 10, 7, 1e-8, &pol()).unwrap());
    let b = strip(run_check("cocycle-ab", 10, 7, 1e-8, &pol()).unwrap());
    assert_eq!(a, b);
    let c = strip(run_check("cocycle-ab", 10, 8, 1e-8, &pol()).unwrap());
    assert_ne!(a.max_rel_dev, c.max_rel_dev);
}

#[test]
fn filter_and_overrides_shape_the_run() {
    let mut cfg = RunConfig { filter: Some("theta".into()), ..Default::default() };
    let reports = run_all(&cfg);
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.identity.contains("theta")));
    cfg.overrides = parse_overrides(r#"{"theta-periodicity": {"samples": 5}}"#).unwrap();
    cfg.parallel = false;
    let reports = run_all(&cfg);
    let per = reports.iter().find(|r| r.identity == "theta-periodicity").unwrap();
    assert_eq!(per.samples, 5);
    assert!(reports.iter().all(|r| r.pass));
}
