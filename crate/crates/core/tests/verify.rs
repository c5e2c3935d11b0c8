use shapwa::engine::Hmm;
use shapwa::gadgets::{sat_to_ensemble, wmg_rnn_instance, wmg_to_sigmoid, GainRule};
use shapwa::oracle::{CnfFormula, Wmg};
use shapwa::scalar::{int, Rat};
use shapwa::verify::*;
use shapwa::wa::Wa;
use shapwa::Result;

/// Engine with an off-by-one on the interventional local pipeline.
struct Corrupted;

impl Backend for Corrupted {
    fn loc_i(&self, f: &Wa, w: &[usize], i: usize, d: &Hmm) -> Result<Rat> {
        Ok(Engine.loc_i(f, w, i, d)? + int(1))
    }
    fn loc_b(&self, f: &Wa, w: &[usize], i: usize, w_ref: &[usize]) -> Result<Rat> {
        Engine.loc_b(f, w, i, w_ref)
    }
    fn glo_i(&self, f: &Wa, i: usize, n: usize, d: &Hmm) -> Result<Rat> {
        Engine.glo_i(f, i, n, d)
    }
    fn glo_b(&self, f: &Wa, i: usize, n: usize, w_ref: &[usize], d: &Hmm) -> Result<Rat> {
        Engine.glo_b(f, i, n, w_ref, d)
    }
}

fn small() -> SuiteConfig {
    SuiteConfig { instances: 12, max_local_len: 4, max_global_len: 3, ..SuiteConfig::default() }
}

#[test]
fn engine_suite_passes() {
    let report = run_suite(&Engine, 0, &small()).unwrap();
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(report.to_text().lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn corrupted_backend_is_caught() {
    let report = run_suite(&Corrupted, 0, &small()).unwrap();
    assert!(!report.passed());
    let text = report.to_text();
    assert!(text.contains("FAIL loc-i-shap"), "{text}");
    assert!(text.contains("counterexample"), "{text}");
    assert!(text.contains("PASS loc-b-shap"));
    let json = report.to_json_value();
    assert_eq!(json["properties"][0]["counterexamples"].as_array().unwrap().len(), 12);
}

#[test]
fn suite_is_deterministic() {
    let a = run_suite(&Corrupted, 4, &small()).unwrap().to_json_value();
    let b = run_suite(&Corrupted, 4, &small()).unwrap().to_json_value();
    assert_eq!(a, b);
}

#[test]
fn wmg_certificates() {
    let g = Wmg::new(vec![1, 1], 2).unwrap();
    let c = certify_wmg(&g, 1, &wmg_to_sigmoid(&g, 1, GainRule::Sharpened).unwrap()).unwrap();
    assert_eq!(c.verdict, "not dummy; φ_b > ε");
    assert!(c.consistent);
    let c = certify_wmg(&g, 1, &wmg_to_sigmoid(&g, 1, GainRule::Printed).unwrap()).unwrap();
    assert!(!c.consistent);
    let g = Wmg::new(vec![3, 1, 1], 3).unwrap();
    let c = certify_wmg(&g, 2, &wmg_rnn_instance(&g, 2).unwrap()).unwrap();
    assert_eq!(c.verdict, "dummy; φ_b ≤ ε");
    assert_eq!(c.phi, "0");
}

#[test]
fn sat_certificate() {
    let cnf = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
    let c = certify_sat(&cnf, &sat_to_ensemble(&cnf).unwrap()).unwrap();
    assert_eq!(c.verdict, "unsatisfiable; φ_b = 0");
    assert!(c.consistent);
}
