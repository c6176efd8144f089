mod common;

use common::fixture;
use serre_bound::dataset::{self, canonicalize, load_dataset, parse, serialize};
use serre_bound::Error;
use serre_core::forms::FormError;
use serre_core::numfield::make_quadratic_field;

#[test]
fn canonical_form_is_idempotent() {
    let k = make_quadratic_field(5).unwrap();
    for name in ["monotone.json", "sqrt2_form.json", "exhausted.json"] {
        let bytes = std::fs::read(fixture(name)).unwrap();
        let once = canonicalize(&k, &bytes).unwrap();
        let twice = canonicalize(&k, once.as_bytes()).unwrap();
        assert_eq!(once, twice, "{name}");
        let loaded = load_dataset(&k, &fixture(name)).unwrap();
        assert_eq!(serialize(&k, &loaded.dataset), once);
    }
}

#[test]
fn canonical_form_normalizes() {
    let k = make_quadratic_field(5).unwrap();
    let messy = br#"{"forms": [
        {"label": "z", "level_hnf": [[1, 0], [0, 1]], "level_norm": "1", "weight": [2],
         "hecke_poly": ["0", 1], "eigenvalues": {"19.19.1": [2], "11.11.1": ["-3"]}},
        {"label": "a", "level_hnf": [[1, 0], [0, 1]], "level_norm": 1, "weight": [2, 2],
         "hecke_poly": [0, 1], "eigenvalues": {}}],
        "field": "2.2.5.1"}"#;
    let c = canonicalize(&k, messy).unwrap();
    let file = parse(c.as_bytes()).unwrap();
    assert_eq!(file.forms[0].label, "a");
    assert_eq!(file.forms[1].weight, vec![2, 2]);
    assert!(file.primes.contains_key("11.11.1") && file.primes.contains_key("19.19.1"));
    let v: serde_json::Value = serde_json::from_str(&c).unwrap();
    assert_eq!(v["forms"][1]["eigenvalues"]["11.11.1"], serde_json::json!([-3]));
    assert_eq!(v["forms"][1]["level_norm"], serde_json::json!(1));
}

#[test]
fn big_integers_survive() {
    let k = make_quadratic_field(5).unwrap();
    // constant term beyond i64
    let d = "-100000000000000000000000000003";
    let src = format!(
        r#"{{"field": "2.2.5.1", "forms": [{{"label": "b", "level_hnf": [[1, 0], [0, 1]], "level_norm": 1,
        "weight": [2, 2], "hecke_poly": ["{d}", 0, 1], "eigenvalues": {{}}}}]}}"#
    );
    let c = canonicalize(&k, src.as_bytes()).unwrap();
    assert!(c.contains(&format!("\"{d}\"")));
    assert_eq!(canonicalize(&k, c.as_bytes()).unwrap(), c);
}

#[test]
fn mutated_fixtures_are_rejected() {
    let k = make_quadratic_field(5).unwrap();
    let cases: &[(&str, &str)] = &[
        ("wrong_weight", "parallel weight must be 2"),
        ("hasse_weil", "violates the Hasse-Weil bound"),
        ("bad_hnf", "is not a canonical HNF"),
        ("truncated_vector", "has 1 coordinates, expected 2"),
        ("duplicate_label", "duplicate form label"),
        ("level_norm", "does not match the HNF norm"),
        ("unknown_prime", "is not a prime of the base field"),
        ("bad_prime_key", "malformed prime key"),
        ("reducible_hecke_poly", "reducible"),
        ("field_mismatch", "does not match the base field"),
        ("fractional_eigenvalue", "expected an integer"),
        ("missing_weight", "missing field `weight`"),
        ("bad_prime_table", "HNF does not match"),
    ];
    for (name, needle) in cases {
        let err = load_dataset(&k, &fixture(&format!("mutated/{name}.json"))).err().unwrap_or_else(|| panic!("{name} accepted"));
        assert!(err.to_string().contains(needle), "{name}: {err}");
    }
    let err = load_dataset(&k, &fixture("mutated/hasse_weil.json")).err().unwrap();
    assert!(matches!(err, Error::Form(FormError::HasseWeil { norm: 9, .. })));
}

#[test]
fn genuine_fixtures_pass() {
    let k = make_quadratic_field(5).unwrap();
    let l = load_dataset(&k, &fixture("monotone.json")).unwrap();
    assert_eq!(l.dataset.records.len(), 3);
    assert_eq!(l.sha256, dataset::sha256_hex(&std::fs::read(fixture("monotone.json")).unwrap()));
    assert!(matches!(load_dataset(&k, &fixture("missing.json")), Err(Error::Io { .. })));
}
