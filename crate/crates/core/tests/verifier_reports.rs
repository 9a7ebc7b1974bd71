use serde_json::Value;

use gqx_core::permgroup::Budget;
use gqx_core::verifier::{
    exclusion_run, run_exclusion, run_structural_suite, to_report_json, CheckStatus, Family,
    RunOptions, SCHEMA,
};

fn no_numbers(v: &Value, path: &str) {
    match v {
        Value::Number(n) => panic!("numeric JSON value {n} at {path}"),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| no_numbers(x, &format!("{path}[{i}]"))),
        Value::Object(o) => o.iter().for_each(|(k, x)| no_numbers(x, &format!("{path}.{k}"))),
        _ => {}
    }
}

fn anchored(v: &Value) -> bool {
    v.get("anchor").and_then(Value::as_str).is_some_and(|s| !s.is_empty())
}

#[test]
fn exclusion_report_shape() {
    let opts = RunOptions { seed: 7, threads: 1 };
    let report = run_exclusion(&[Family::Suzuki, Family::Ree], 1, 8, &opts).unwrap();
    assert!(report.excluded());
    let v: Value = serde_json::from_str(&to_report_json(&report)).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["seed"], "7");
    no_numbers(&v, "$");
    for p in v["provenance"].as_array().unwrap() {
        assert!(anchored(p));
    }
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 16);
    for run in runs {
        assert!(anchored(run) && anchored(&run["parabolic"]));
        for pair in run["pairs"].as_array().unwrap() {
            assert!(anchored(pair));
            pair["solves"].as_array().unwrap().iter().for_each(|s| assert!(anchored(s)));
        }
        run["sweep"].as_array().unwrap().iter().for_each(|s| assert!(anchored(s)));
    }
}

#[test]
fn threads_do_not_change_bytes() {
    let fams = [Family::Suzuki, Family::Ree];
    let one = run_exclusion(&fams, 1, 30, &RunOptions { seed: 3, threads: 1 }).unwrap();
    let four = run_exclusion(&fams, 1, 30, &RunOptions { seed: 3, threads: 4 }).unwrap();
    assert_eq!(to_report_json(&one), to_report_json(&four));
}

#[test]
fn ree_runs_reject_by_prime() {
    for m in 1..=6 {
        let run = exclusion_run(Family::Ree, m);
        assert_eq!(run.verdict, "excluded");
        for pair in &run.pairs {
            for s in &pair.solves {
                assert_eq!(s.p, "3");
                assert_eq!(s.path, "prime-rejected");
                assert!(s.solutions.is_empty());
            }
        }
    }
}

#[test]
fn suzuki_sweep_has_no_thick_solution() {
    let run = exclusion_run(Family::Suzuki, 5);
    assert!(!run.sweep.is_empty());
    for s in &run.sweep {
        assert!(s.solutions.iter().all(|[a, b]| a == "1" || b == "1"));
        assert_eq!(s.characterization_agrees, Some(true));
    }
}

#[test]
fn sz8_suite_passes_and_is_deterministic() {
    let budget = Budget { seed: 11, ..Default::default() };
    let a = run_structural_suite(Family::Suzuki, 1, false, &budget).unwrap();
    let b = run_structural_suite(Family::Suzuki, 1, false, &budget).unwrap();
    assert!(a.passed(), "{}", to_report_json(&a));
    assert!(a.checks.iter().all(|c| c.status == CheckStatus::Pass || c.status == CheckStatus::FormulaOnly));
    assert_eq!(to_report_json(&a), to_report_json(&b));
    let v: Value = serde_json::from_str(&to_report_json(&a)).unwrap();
    no_numbers(&v, "$");
    v["checks"].as_array().unwrap().iter().for_each(|c| assert!(anchored(c)));
}
