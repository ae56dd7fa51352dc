use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tczeta::zeta::{from_coefficients, RationalFunction};

fn data(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    root.join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tczeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_str(&stdout(&o)).unwrap(), o.status.code().unwrap())
}

/// Every `{numerator, denominator, display}` object in a report.
fn rationals(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Object(m) => {
            if m.contains_key("numerator") && m.contains_key("display") {
                out.push(v.clone());
            }
            m.values().for_each(|x| rationals(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| rationals(x, out)),
        _ => {}
    }
}

fn coeffs(v: &Value) -> Vec<num_bigint::BigInt> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string().parse().unwrap())
        .collect()
}

#[test]
fn zeta_of_the_s3_inner_automorphism() {
    let o = run(&["zeta", &data("s3.grp"), &data("s3/inner.endo")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1 / (1 - z)^3"), "{text}");
    assert!(text.contains("congruence residues: 0 0 0 0 0 0 0 0 0 0 0 0"), "{text}");
}

#[test]
fn endomorphism_found_next_to_the_group_file() {
    let o = run(&["zeta", &data("s3.grp"), "inner.endo"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["zeta", "s3.grp", "inner.endo"]);
    assert!(stdout(&o).contains("1 / (1 - z)^3"));
}

#[test]
fn shift_over_s3() {
    let o = run(&["shift", "--base", &data("s3.grp")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "R: 1 / (1 - 6*z)",
        "RT: 1 / (1 - 3*z)",
        "RTf: 1 / (1 - 2*z)",
        "TBFT fails: true",
        "TBFTf fails: true",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
    let text = stdout(&run(&["shift", "--base", &data("z4.grp")]));
    assert!(text.contains("TBFT fails: false") && text.contains("TBFTf fails: false"));
}

#[test]
fn negation_on_z_has_infinite_reidemeister_number() {
    let o = run(&["abelian", "--matrix", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let (report, code) = json(&["abelian", "--matrix", "-1"]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "error");
    assert_eq!(report["error"]["code"], "InfiniteReidemeister");
    assert!(report["error"]["message"].as_str().unwrap().contains("n=2"));
}

#[test]
fn abelian_cat_map() {
    let (report, code) = json(&["abelian", "--matrix", "2 1; 1 1", "--profinite", "3"]);
    assert_eq!(code, 0);
    let counts: Vec<i64> = report["results"]["counts"].as_array().unwrap()[..4]
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 5, 16, 45]);
    assert_eq!(report["results"]["zeta"]["display"], "(1 - z)^2 / (1 - 3*z + z^2)");
    assert_eq!(report["results"]["profinite"].as_array().unwrap().len(), 3);
}

#[test]
fn json_reports_round_trip_and_rationals_reparse() {
    let s3 = data("s3.grp");
    let inner = data("s3/inner.endo");
    let z6 = data("z6.grp");
    let neg = data("z6/neg.endo");
    let cases: Vec<Vec<&str>> = vec![
        vec!["classes", &s3],
        vec!["reid", &z6, &neg],
        vec!["zeta", &z6, &neg, "--check-congruences", "--check-fe"],
        vec!["tbft", &s3, &inner],
        vec!["chartable", &s3],
        vec!["rt-zeta", &z6, &neg],
        vec!["abelian", "--matrix", "2"],
        vec!["shift", "--base", &s3, "--max-n", "5"],
    ];
    for args in cases {
        let (report, code) = json(&args);
        assert_eq!(code, 0, "{args:?}: {report}");
        assert_eq!(report["schema"], 1);
        assert_eq!(report["command"], args[0]);
        assert_eq!(report["status"], "ok");
        let again: Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(again, report);
        let mut found = Vec::new();
        rationals(&report, &mut found);
        for r in found {
            let parsed = RationalFunction::parse(r["display"].as_str().unwrap()).unwrap();
            let direct = from_coefficients(&coeffs(&r["numerator"]), &coeffs(&r["denominator"])).unwrap();
            assert_eq!(parsed, direct, "{r}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "shift", "--base", "q8", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["chartable", "s4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn twisted_class_function_basis_via_rep_file() {
    let (report, code) = json(&["tbft", "s3", "inner", "--rep", &data("s3/2.rep")]);
    assert_eq!(code, 0);
    let basis = &report["results"]["basis"];
    assert_eq!(basis["rank"], 3);
    assert_eq!(basis["holds"], true);
    for f in basis["functions"].as_array().unwrap() {
        assert!(f["intertwiner_residual"].as_f64().unwrap() < 1e-9);
    }
    let (report, code) = json(&["tbft", "s3", "inner"]);
    assert_eq!(code, 0);
    assert!(report["results"].get("basis").is_none());
}

#[test]
fn input_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["zeta", "s3"]).status.code(), Some(1));
    assert_eq!(run(&["classes", "/nonexistent/group.grp"]).status.code(), Some(1));
    let (report, code) = json(&["frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(report["error"]["code"], "UsageError");
    assert_eq!(report["schema"], 1);

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("bad.grp");
    std::fs::write(&bad, "kind: permutation\ndegree: 3\ngen a: 1 1 2\n").unwrap();
    let (report, code) = json(&["classes", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report["error"]["code"], "ParseError");

    let hom = dir.join("nothom.endo");
    std::fs::write(&hom, "map a: b\nmap b: b\n").unwrap();
    let (report, code) = json(&["reid", "s3", hom.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report["error"]["code"], "NotAHomomorphism");

    let (_, code) = json(&["abelian", "--matrix", "1 2; 3"]);
    assert_eq!(code, 1);
    let (_, code) = json(&["reid", "s3", "inner", "--max-n", "0"]);
    assert_eq!(code, 1);
}
