//! Command-line behaviour: exit codes, batch runs and the JSON report shape.

use std::io::Write as _;

use serde_json::Value;

use radicals::cli::{run_with, DegreeOracle, ExactOracle};
use radicals::rgroup::FiniteFieldGroup;
use radicals::{Radical, RadicalGroup, Result};

fn capture_with(oracle: &dyn DegreeOracle, args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let argv = std::iter::once("radicals").chain(args.iter().copied());
    let code = run_with(argv, oracle, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

fn capture(args: &[&str]) -> (i32, String) {
    capture_with(&ExactOracle, args)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let (code, out) = capture(&v);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{out}: {e}")))
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn batch_file(lines: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(lines.as_bytes()).unwrap();
    f
}

/// Adds one to every degree.
struct OffByOne;

impl DegreeOracle for OffByOne {
    fn degree(&self, gens: &[Radical], max_degree: usize, seed: u64) -> Result<u64> {
        ExactOracle.degree(gens, max_degree, seed).map(|d| d + 1)
    }

    fn degree_ff(&self, gamma: &FiniteFieldGroup) -> Result<u64> {
        ExactOracle.degree_ff(gamma).map(|d| d + 1)
    }
}

#[test]
fn verify_agrees_on_quartic_root_of_minus_four() {
    let (code, v) = json(&["verify", "rt(-4,4)"]);
    assert_eq!(code, 0);
    assert_eq!(v["provenance"], "both");
    assert_eq!(v["payload"]["engine"], 2);
    assert_eq!(v["payload"]["oracle"], 2);
    assert_eq!(v["payload"]["equal"], true);
}

#[test]
fn verify_mismatch_exits_one() {
    let (code, out) = capture_with(&OffByOne, &["verify", "rt(2,3)"]);
    assert_eq!(code, 1);
    assert!(out.contains("MISMATCH"), "{out}");
    let (code, _) = capture_with(&OffByOne, &["--base", "fp:7", "verify", "zeta(9)"]);
    assert_eq!(code, 1);
}

#[test]
fn batch_of_identities() {
    let f = batch_file("# three identities\nverify rt(2,2)\n\nverify \"rt(5,2), zeta(5)\"\nverify rt(-4,4)\n");
    let path = f.path().to_str().unwrap();
    let (code, out) = capture(&["--jobs", "2", "batch", path]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("summary: 3 ok, 0 mismatch, 0 error"), "{out}");
    let (_, out) = capture(&["--json", "batch", path]);
    let last: Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["payload"], serde_json::json!({"lines": 3, "ok": 3, "mismatch": 0, "error": 0}));
}

#[test]
fn empty_batch_reports_zeros() {
    let f = batch_file("");
    let (code, v) = json(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], serde_json::json!({"lines": 0, "ok": 0, "mismatch": 0, "error": 0}));
}

#[test]
fn batch_mismatch_and_error_counts() {
    let f = batch_file("verify rt(2,2)\ndegree rt(2,\nverify zeta(8)\n");
    let (code, out) = capture_with(&OffByOne, &["batch", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("summary: 0 ok, 2 mismatch, 1 error"), "{out}");
    let (code, _) = capture(&["batch", "/nonexistent/batch.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(capture(&["degree", "rt(2,2)"]).0, 0);
    assert_eq!(capture(&["degree", "rt(2,"]).0, 2);
    assert_eq!(capture(&["gauss", "9"]).0, 2);
    assert_eq!(capture(&["--base", "fp:7", "minpoly", "rt(2,2)"]).0, 2);
    assert_eq!(capture(&["--max-degree", "8", "minpoly", "rt(2,3) + rt(3,3) + rt(5,3)"]).0, 3);
    assert_ne!(capture(&["no-such-verb"]).0, 0);
}

#[test]
fn parse_errors_carry_offsets() {
    let (code, v) = json(&["degree", "rt(2,2) * foo"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["offset"], 10);
    assert_eq!(v["error"]["input"], "rt(2,2) * foo");
    let (_, text) = capture(&["degree", "rt(2,2) * foo"]);
    assert!(text.lines().any(|l| l.trim_end().ends_with('^')), "{text}");
}

#[test]
fn printed_generators_reparse() {
    for spec in ["zeta(12), rt(18,4)", "zeta(8)^3*rt(6,2)", "rt(-4,4), rt(3,6), 5/7"] {
        let g = RadicalGroup::parse(spec).unwrap();
        let (_, v) = json(&["index", spec]);
        let printed: Vec<Radical> = v["payload"]["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().parse().unwrap())
            .collect();
        assert_eq!(printed, g.invariant_generators(), "{spec}");
        assert_eq!(RadicalGroup::new(printed).index(), g.index(), "{spec}");
    }
    let (_, v) = json(&["entangle", "2"]);
    for s in v["payload"]["generators"].as_array().unwrap() {
        let a: Radical = s.as_str().unwrap().parse().unwrap();
        assert_eq!(a.format(), s.as_str().unwrap());
    }
}

#[test]
fn gauss_prints_legendre_symbols() {
    let (code, v) = json(&["gauss", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["coefficients"], serde_json::json!(["0", "1", "-1", "-1", "1"]));
    assert_eq!(v["payload"]["check"], "square = 5");
    let (_, v) = json(&["gauss", "7"]);
    assert_eq!(v["payload"]["square"], -7);
}

#[test]
fn reports_match_schema() {
    let schema = validator();
    let f = batch_file("verify rt(2,2)\n");
    let path = f.path().to_str().unwrap().to_string();
    let cases: Vec<Vec<&str>> = vec![
        vec!["degree", "zeta(3), zeta(8)^3*rt(6,2)"],
        vec!["degree", "rt(2,4), rt(-3,2)"],
        vec!["--base", "fp:13", "degree", "zeta(7), 2"],
        vec!["index", "rt(2,6)"],
        vec!["entangle", "2", "--conductor", "24"],
        vec!["--base", "fp:7", "entangle", "2"],
        vec!["minpoly", "rt(2,2) + rt(3,2)"],
        vec!["check-kneser", "rt(-4,4)"],
        vec!["check-kneser", "rt(2,3)"],
        vec!["check-abelian", "-4", "4"],
        vec!["irreducible", "-4", "4"],
        vec!["gauss", "11"],
        vec!["express", "rt(3,2)"],
        vec!["express", "rt(2,3)"],
        vec!["subfields", "rt(2,4)"],
        vec!["subfields", "rt(-4,4)"],
        vec!["verify", "rt(5,2), zeta(5)"],
        vec!["ff", "11", "30"],
        vec!["batch", &path],
        vec!["degree", "rt(2,"],
        vec!["gauss", "4"],
    ];
    for mut args in cases {
        args.insert(0, "--json");
        let (_, out) = capture(&args);
        for line in out.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            let errors: Vec<String> = schema.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path())).collect();
            assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
            assert_eq!(v["schema"], "radicals-report/1");
        }
    }
}
