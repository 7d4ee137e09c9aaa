use std::io::Write;
use std::process::{Command, Output};

use formdepth::cli::{canonical, run_json, Overrides};
use formdepth::{Field, Polynomial, Ring};
use proptest::prelude::*;
use serde_json::Value;

fn job(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn formdepth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formdepth")).args(args).output().unwrap()
}

fn run_job(sub: &str, text: &str, extra: &[&str]) -> (i32, String) {
    let f = job(text);
    let mut args = vec![sub, "--input", f.path().to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = formdepth(&args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const CONICS: &str = r#"{"field":{"type":"rational"},"variables":["x","y","z"],"forms":["x^2+y*z","y^2+x*z"]}"#;
const LINES_35: &str =
    r#"{"field":{"type":"prime","p":32003},"variables":["x","y","z"],"forms":["x","y","z","x+y+z","x+2*y+3*z"]}"#;

#[test]
fn analyze_reports_rty() {
    let (code, out) = run_job("analyze", CONICS, &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdicts"]["rty"], true);
    assert_eq!(v["details"]["depth"], 0);
    assert!(v["engine"]["version"].is_string());
}

#[test]
fn arrangement_succeeds_and_rejects_bad_characteristic() {
    let (code, out) = run_job("arrangement", LINES_35, &[]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["verdicts"]["betti_matches"], true);

    let (code, out) = run_job(
        "arrangement",
        r#"{"field":{"type":"prime","p":3},"variables":["x","y"],"forms":["x","y","x+y"]}"#,
        &[],
    );
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["kind"], "characteristic");
}

#[test]
fn malformed_input_exits_2() {
    let (code, _) = run_job("analyze", "{ not json", &[]);
    assert_eq!(code, 2);
    let (code, out) = run_job("analyze", r#"{"field":{"type":"rational"},"variables":["x"],"forms":["x^"]}"#, &[]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "parse");
    let out = formdepth(&["analyze", "--input", "/nonexistent/job.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_reduction_exits_3() {
    // Conics: J_F lives in degree 3, the single factors in degree 2.
    let (code, out) = run_job("reduction", CONICS, &[]);
    assert_eq!(code, 3, "{out}");
    assert_eq!(json(&out)["error"]["kind"], "bound-exceeded");
}

#[test]
fn verify_suite_passes_all_trials() {
    let out = formdepth(&["verify", "--suite", "arrangements", "--seed", "42", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["verdicts"]["passed"], 20);
    assert_eq!(v["verdicts"]["trials"], 20);
    assert_eq!(v["verdicts"]["all_passed"], true);
}

#[test]
fn text_output_has_a_betti_staircase() {
    let (code, out) = run_job("analyze", CONICS, &["--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("rty: true"));
    let stair = &out[out.find("betti:").unwrap()..];
    assert!(stair.contains("total:     1     3     4     2"), "{stair}");
    assert!(stair.contains("    2:     .     3     .     ."));
}

#[test]
fn reports_are_deterministic() {
    for (sub, text, extra) in [
        ("analyze", CONICS, vec![]),
        ("arrangement", LINES_35, vec![]),
        ("classify2q", CONICS, vec![]),
        ("verify", "", vec!["--suite", "conics", "--seed", "7", "--trials", "6"]),
    ] {
        let runs: Vec<Value> = (0..2)
            .map(|_| {
                let out = if text.is_empty() {
                    String::from_utf8(formdepth(&[&[sub][..], &extra].concat()).stdout).unwrap()
                } else {
                    run_job(sub, text, &extra).1
                };
                canonical(&out).unwrap()
            })
            .collect();
        assert_eq!(
            serde_json::to_string(&runs[0]).unwrap(),
            serde_json::to_string(&runs[1]).unwrap(),
            "{sub}"
        );
    }
}

#[test]
fn classify_reports_the_category() {
    let (code, out) = run_job(
        "classify2q",
        r#"{"field":{"type":"rational"},"variables":["x","y","z"],"forms":["x^2+y*z","x^2+y^2+y*z"]}"#,
        &[],
    );
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["summary"].as_str().unwrap().contains("deg R/J_F"));
    assert!(v["details"]["e"] == 1 || v["details"]["e"] == 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arbitrary_jobs_never_panic(
        forms in prop::collection::vec("[xyz0-9+*^ ()-]{1,10}", 0..4),
        cmd in prop::sample::select(vec!["rty", "classify2q", "criteria", "betti-predict", "reduction", "arrangement"]),
    ) {
        let doc = serde_json::json!({
            "field": {"type": "prime", "p": 101},
            "variables": ["x", "y", "z"],
            "forms": forms,
            "command": cmd,
            "options": {"r_max": 2},
        });
        let outcome = run_json(&doc.to_string(), None, &Overrides::default());
        prop_assert!((0..=4).contains(&outcome.exit_code));
        if outcome.report.error.is_some() {
            prop_assert!(outcome.exit_code != 0);
        }
        let ring = Ring::new(Field::prime(101).unwrap(), vec!["x".into(), "y".into(), "z".into()]).unwrap();
        for w in outcome.report.witnesses.values() {
            let p = Polynomial::parse(&ring, w);
            prop_assert!(p.is_ok(), "witness {} does not parse", w);
            prop_assert_eq!(&p.unwrap().to_string(), w);
        }
    }
}
