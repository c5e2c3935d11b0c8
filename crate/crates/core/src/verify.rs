//! Seeded engine-versus-oracle suites and gadget certificates.

use rand::Rng;
use serde_json::{json, Value};

use crate::engine::{self, Hmm};
use crate::error::Result;
use crate::gadgets::{GadgetInstance, GadgetModel};
use crate::oracle::{
    self, csp_brute, dummy_check, empty_brute, eval_ensemble, sat_brute, CnfFormula, Context, CspInstance, DenseWa, RnnRelu,
    Support, Variant, Wmg,
};
use crate::random::{self, random_hmm, random_wa, random_word};
use crate::scalar::{fmt_rat, to_f64, Rat};
use crate::wa::{Alphabet, Wa};

/// The four SHAP pipelines under test. The engine is the default; tests
/// substitute broken implementations to check that the harness notices.
pub trait Backend {
    fn loc_i(&self, f: &Wa, w: &[usize], i: usize, d: &Hmm) -> Result<Rat>;
    fn loc_b(&self, f: &Wa, w: &[usize], i: usize, w_ref: &[usize]) -> Result<Rat>;
    fn glo_i(&self, f: &Wa, i: usize, n: usize, d: &Hmm) -> Result<Rat>;
    fn glo_b(&self, f: &Wa, i: usize, n: usize, w_ref: &[usize], d: &Hmm) -> Result<Rat>;
}

pub struct Engine;

impl Backend for Engine {
    fn loc_i(&self, f: &Wa, w: &[usize], i: usize, d: &Hmm) -> Result<Rat> {
        engine::loc_i_shap(f, w, i, d)
    }
    fn loc_b(&self, f: &Wa, w: &[usize], i: usize, w_ref: &[usize]) -> Result<Rat> {
        engine::loc_b_shap(f, w, i, w_ref)
    }
    fn glo_i(&self, f: &Wa, i: usize, n: usize, d: &Hmm) -> Result<Rat> {
        engine::glo_i_shap(f, i, n, d)
    }
    fn glo_b(&self, f: &Wa, i: usize, n: usize, w_ref: &[usize], d: &Hmm) -> Result<Rat> {
        engine::glo_b_shap(f, i, n, w_ref, d)
    }
}

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub instances: usize,
    pub max_wa_dim: usize,
    pub max_hmm_dim: usize,
    pub max_local_len: usize,
    pub max_global_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { instances: 50, max_wa_dim: 4, max_hmm_dim: 3, max_local_len: 5, max_global_len: 4 }
    }
}

/// One random test case: a model, a distribution, local and global settings.
#[derive(Clone, Debug)]
pub struct Instance {
    pub model: Wa,
    pub dist: Hmm,
    pub input: Vec<usize>,
    pub reference: Vec<usize>,
    pub local_feature: usize,
    pub global_len: usize,
    pub global_reference: Vec<usize>,
    pub global_feature: usize,
}

impl Instance {
    pub fn random(r: &mut impl Rng, cfg: &SuiteConfig) -> Instance {
        let s = Alphabet::binary();
        let dim = r.gen_range(1..=cfg.max_wa_dim);
        let model = random_wa(r, &s, dim);
        let states = r.gen_range(1..=cfg.max_hmm_dim);
        let dist = random_hmm(r, &s, states);
        let n = r.gen_range(1..=cfg.max_local_len);
        let m = r.gen_range(1..=cfg.max_global_len);
        Instance {
            input: random_word(r, 2, n),
            reference: random_word(r, 2, n),
            local_feature: r.gen_range(1..=n),
            global_len: m,
            global_reference: random_word(r, 2, m),
            global_feature: r.gen_range(1..=m),
            model,
            dist,
        }
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "model": self.model.to_json(),
            "distribution": self.dist.to_json_value(),
            "input": self.input,
            "reference": self.reference,
            "local_feature": self.local_feature,
            "global_length": self.global_len,
            "global_reference": self.global_reference,
            "global_feature": self.global_feature,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub instance: usize,
    pub expected: Option<Rat>,
    pub actual: std::result::Result<Rat, String>,
    pub witness: Value,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    /// One `PASS`/`FAIL` line per property; a failing property dumps its
    /// first counterexample.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} ({}/{} agree, seed {})\n",
                p.name,
                p.checked - p.failures.len(),
                p.checked,
                self.seed
            ));
            if let Some(f) = p.failures.first() {
                out.push_str(&format!("  counterexample #{}: {}\n", f.instance, failure_json(f)));
            }
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "properties": self.properties.iter().map(|p| json!({
                "name": p.name,
                "checked": p.checked,
                "passed": p.passed(),
                "counterexamples": p.failures.iter().map(failure_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn failure_json(f: &Failure) -> Value {
    json!({
        "instance": f.instance,
        "oracle": f.expected.as_ref().map(fmt_rat),
        "backend": match &f.actual { Ok(v) => json!(fmt_rat(v)), Err(e) => json!({ "error": e }) },
        "witness": f.witness,
    })
}

pub const PROPERTIES: [&str; 4] = ["loc-i-shap", "loc-b-shap", "glo-i-shap", "glo-b-shap"];

/// Runs every pipeline of `backend` against the enumeration oracle on
/// `cfg.instances` instances drawn from `seed`.
pub fn run_suite(backend: &dyn Backend, seed: u64, cfg: &SuiteConfig) -> Result<Report> {
    let mut r = random::rng(seed);
    let mut props: Vec<PropertyReport> =
        PROPERTIES.iter().map(|&name| PropertyReport { name, checked: 0, failures: Vec::new() }).collect();
    for k in 0..cfg.instances {
        let inst = Instance::random(&mut r, cfg);
        let results = check_instance(backend, &inst)?;
        for (p, (expected, actual)) in props.iter_mut().zip(results) {
            p.checked += 1;
            let actual = actual.map_err(|e| e.to_string());
            if actual.as_ref().ok() != Some(&expected) {
                p.failures.push(Failure { instance: k, expected: Some(expected), actual, witness: inst.to_json_value() });
            }
        }
    }
    Ok(Report { seed, properties: props })
}

type Pair = (Rat, Result<Rat>);

/// Oracle value and backend value for each of the four pipelines.
pub fn check_instance(backend: &dyn Backend, inst: &Instance) -> Result<[Pair; 4]> {
    let dense = DenseWa::new(&inst.model)?;
    let f = |x: &[usize]| dense.eval(x);
    let k = inst.model.alphabet().len();
    let (w, i) = (&inst.input, inst.local_feature);
    let local_sup = Support::enumerate(k, w.len(), |x| oracle::dists::hmm_prob(&inst.dist, x))?;
    let local_ctx = Context::Distribution(local_sup);
    let m = inst.global_len;
    let sup = Support::enumerate(k, m, |x| oracle::dists::hmm_prob(&inst.dist, x))?;
    let ctx = Context::Distribution(sup.clone());
    let gi = inst.global_feature;
    Ok([
        (
            oracle::shap_local(Variant::Interventional, &f, w, i, &local_ctx)?,
            backend.loc_i(&inst.model, w, i, &inst.dist),
        ),
        (
            oracle::shap_local(Variant::Baseline, &f, w, i, &Context::Reference(inst.reference.clone()))?,
            backend.loc_b(&inst.model, w, i, &inst.reference),
        ),
        (
            oracle::shap_global(Variant::Interventional, &f, gi, m, &ctx, &sup)?,
            backend.glo_i(&inst.model, gi, m, &inst.dist),
        ),
        (
            oracle::shap_global(
                Variant::Baseline,
                &f,
                gi,
                m,
                &Context::Reference(inst.global_reference.clone()),
                &sup,
            )?,
            backend.glo_b(&inst.model, gi, m, &inst.global_reference, &inst.dist),
        ),
    ])
}

/// Oracle verdict for a gadget, compared with brute force on the source problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub verdict: String,
    pub phi: String,
    pub threshold: String,
    /// Whether the SHAP-side verdict agrees with the brute-force answer.
    pub consistent: bool,
}

impl Certificate {
    pub fn to_json_value(&self) -> Value {
        json!({ "verdict": self.verdict, "phi_b": self.phi, "threshold": self.threshold, "consistent": self.consistent })
    }
}

fn baseline_phi(inst: &GadgetInstance) -> Result<(Option<Rat>, f64)> {
    fn ctx<S>(z: &[usize]) -> Context<S> {
        Context::Reference(z.to_vec())
    }
    match &inst.model {
        GadgetModel::Sigmoid(net) => {
            let f = net.compiled();
            let v = oracle::shap_local::<f64>(Variant::Baseline, &f, &inst.x, inst.feature, &ctx(&inst.x_ref))?;
            Ok((None, v))
        }
        GadgetModel::Rnn(rnn) => {
            let f = |x: &[usize]| rnn.eval(x);
            let v = oracle::shap_local(Variant::Baseline, &f, &inst.x, inst.feature, &ctx(&inst.x_ref))?;
            Ok((Some(v.clone()), to_f64(&v)))
        }
        GadgetModel::Ensemble(e) => {
            let f = |x: &[usize]| eval_ensemble(e, x);
            let v = oracle::shap_local(Variant::Baseline, &f, &inst.x, inst.feature, &ctx(&inst.x_ref))?;
            Ok((Some(v.clone()), to_f64(&v)))
        }
    }
}

/// Dummy players have φ_b ≤ ε (sigmoid) or φ_b = 0 (RNN).
pub fn certify_wmg(g: &Wmg, i: usize, inst: &GadgetInstance) -> Result<Certificate> {
    let dummy = dummy_check(g, i)?;
    let (exact, approx) = baseline_phi(inst)?;
    let eps = inst.epsilon.clone().unwrap_or_default();
    let (below, phi, threshold) = match exact {
        Some(v) => (v <= eps, fmt_rat(&v), fmt_rat(&eps)),
        None => (approx <= to_f64(&eps), format!("{approx:.12}"), fmt_rat(&eps)),
    };
    let verdict = match (dummy, below) {
        (true, true) => "dummy; φ_b ≤ ε",
        (false, false) => "not dummy; φ_b > ε",
        (true, false) => "dummy but φ_b > ε",
        (false, true) => "not dummy but φ_b ≤ ε",
    };
    Ok(Certificate { verdict: verdict.into(), phi, threshold, consistent: dummy == below })
}

/// Satisfiable iff φ_b(n+1) > 0.
pub fn certify_sat(cnf: &CnfFormula, inst: &GadgetInstance) -> Result<Certificate> {
    let sat = sat_brute(cnf)?.is_some();
    let (exact, _) = baseline_phi(inst)?;
    let v = exact.unwrap_or_default();
    let positive = v > Rat::default();
    let verdict = match (sat, positive) {
        (true, true) => "satisfiable; φ_b > 0",
        (false, false) => "unsatisfiable; φ_b = 0",
        (true, false) => "satisfiable but φ_b = 0",
        (false, true) => "unsatisfiable but φ_b > 0",
    };
    Ok(Certificate { verdict: verdict.into(), phi: fmt_rat(&v), threshold: "0".into(), consistent: sat == positive })
}

/// A centre string exists iff the concatenated RNN accepts something.
pub fn certify_csp(csp: &CspInstance, rnn: &RnnRelu) -> Result<Certificate> {
    let centre = csp_brute(csp)?;
    let one = Rat::from_integer(1.into());
    let empty = empty_brute(&|x| rnn.eval(x) == one, csp.alphabet_size, csp.len())?;
    let verdict = match (centre.is_some(), empty) {
        (true, false) => "centre string exists; model non-empty",
        (false, true) => "no centre string; model empty",
        (true, true) => "centre string exists but model empty",
        (false, false) => "no centre string but model non-empty",
    };
    Ok(Certificate {
        verdict: verdict.into(),
        phi: "n/a".into(),
        threshold: "n/a".into(),
        consistent: centre.is_some() != empty,
    })
}
