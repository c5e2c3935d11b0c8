//! Hardness-reduction gadgets: WMG → sigmoid / RNN-ReLU, 3-SAT → voting
//! ensemble, closest string → RNN-ReLU.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frontends::{DecisionTree, EnsembleMode, TreeEnsemble, TreeNode};
use crate::oracle::{CnfFormula, CspInstance, RnnRelu, SigmoidNet, Wmg};
use crate::scalar::{binomial, fmt_rat, int, json_mat, json_rat, json_vec, ratio, to_f64, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum GadgetModel {
    Sigmoid(SigmoidNet),
    Rnn(RnnRelu),
    Ensemble(TreeEnsemble),
}

/// A constructed model with the input pair and threshold of the reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetInstance {
    pub model: GadgetModel,
    pub feature: usize,
    pub x: Vec<usize>,
    pub x_ref: Vec<usize>,
    pub epsilon: Option<Rat>,
    pub notes: Vec<String>,
}

/// Gain of the sigmoid gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GainRule {
    /// `2·log((1−ε)/ε)` as printed. Unsound: a pivotal coalition only gains
    /// `1 − 2ε`, and for ⟨2,(1,1),2⟩ the non-dummy player gets φ_b = 5/18 < ε = 1/3.
    Printed,
    /// `2·log((1−δ)/δ)` with δ = ε/4: every sigmoid tail is below ε/4, so
    /// dummies stay at φ_b ≤ ε/4 and a pivotal coalition contributes more
    /// than ε. The threshold ε itself is unchanged.
    Sharpened,
}

/// C_N = N·C(N−1, ⌊(N−1)/2⌋): the reciprocal of the smallest Shapley weight.
pub fn c_n(n: usize) -> BigInt {
    BigInt::from(n) * binomial(n - 1, (n - 1) / 2)
}

/// ε = 1/(1 + C_N).
pub fn wmg_epsilon(n: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() + c_n(n))
}

fn ones(n: usize) -> Vec<usize> {
    vec![1; n]
}

fn check_player(g: &Wmg, i: usize) -> Result<()> {
    if i == 0 || i > g.players() {
        return Err(Error::IndexOutOfRange { index: i, max: g.players() });
    }
    Ok(())
}

/// `f_G(x) = σ(C·(Σ nⱼxⱼ − q + ½))`; player i is a dummy iff φ_b ≤ ε.
pub fn wmg_to_sigmoid(g: &Wmg, i: usize, rule: GainRule) -> Result<GadgetInstance> {
    check_player(g, i)?;
    let n = g.players();
    let eps = wmg_epsilon(n);
    let delta = match rule {
        GainRule::Printed => eps.clone(),
        GainRule::Sharpened => &eps / int(4),
    };
    let d = to_f64(&delta);
    let gain = 2.0 * ((1.0 - d) / d).ln();
    let net = SigmoidNet {
        weights: g.powers.iter().map(|&p| int(p as i64)).collect(),
        bias: ratio(1, 2) - int(g.quota as i64),
        gain,
    };
    let mut notes = vec![
        "C_N = N*binom(N-1, floor((N-1)/2)); the factorial after the binomial in the printed formula is dropped".to_string(),
        "main-text variant uses gain 2*log(N) and eps = 1/(N+1); the appendix form is used here".to_string(),
    ];
    notes.push(match rule {
        GainRule::Printed => "gain 2*log((1-eps)/eps) as printed; known to misclassify e.g. <2,(1,1),2>, i=1".to_string(),
        GainRule::Sharpened => "gain 2*log((1-d)/d) with d = eps/4; the printed gain only separates pivotal gaps of 1-2*eps".to_string(),
    });
    Ok(GadgetInstance {
        model: GadgetModel::Sigmoid(net),
        feature: i,
        x: ones(n),
        x_ref: vec![0; n],
        epsilon: Some(eps),
        notes,
    })
}

/// RNN-ReLU of hidden size N+2 with `f_G(x) = v_G(S_x)` on {0,1}^N.
///
/// Neurons 2..=N+1 form a shift register: at step t the vote weights are
/// injected along it so that n_t reaches neuron N+1 after the last step;
/// neuron N+2 is a constant 1 used for the quota.
pub fn wmg_to_rnnrelu(g: &Wmg) -> RnnRelu {
    let n = g.players();
    let d = n + 2;
    let mut h_init = vec![Rat::zero(); d];
    h_init[d - 1] = Rat::one();
    let mut w = vec![vec![Rat::zero(); d]; d];
    for j in 0..n {
        w[j + 1][j] = Rat::one();
    }
    w[d - 1][d - 1] = Rat::one();
    let mut v1 = vec![Rat::zero(); d];
    for (j, &p) in g.powers.iter().enumerate() {
        v1[j + 1] = int(p as i64);
    }
    let mut out = vec![Rat::zero(); d];
    out[n] = Rat::one();
    out[d - 1] = -int(g.quota as i64);
    RnnRelu::new(h_init, w, vec![vec![Rat::zero(); d], v1], out).expect("dimensions agree")
}

/// Player i is a dummy iff φ_b = 0.
pub fn wmg_rnn_instance(g: &Wmg, i: usize) -> Result<GadgetInstance> {
    check_player(g, i)?;
    let n = g.players();
    Ok(GadgetInstance {
        model: GadgetModel::Rnn(wmg_to_rnnrelu(g)),
        feature: i,
        x: ones(n),
        x_ref: vec![0; n],
        epsilon: Some(Rat::zero()),
        notes: vec![],
    })
}

/// Tree accepting `C ∧ x_{n+1}`: test x_{n+1}, then the literals in turn.
fn clause_tree(vars: usize, clause: &[i64]) -> DecisionTree {
    let mut lits: Vec<i64> = Vec::new();
    for &l in clause {
        if !lits.contains(&l) {
            lits.push(l);
        }
    }
    let tautology = lits.iter().any(|l| lits.contains(&-l));
    let mut nodes = vec![TreeNode::Leaf(int(0)), TreeNode::Leaf(int(1))];
    let (zero, one) = (0, 1);
    // build the literal chain bottom-up
    let mut next = zero;
    if tautology {
        next = one;
    } else {
        for &l in lits.iter().rev() {
            let var = l.unsigned_abs() as usize;
            let children = if l > 0 { vec![next, one] } else { vec![one, next] };
            nodes.push(TreeNode::Split { feature: var, children });
            next = nodes.len() - 1;
        }
    }
    nodes.push(TreeNode::Split { feature: vars + 1, children: vec![zero, next] });
    let root = nodes.len() - 1;
    DecisionTree::new(vars + 1, 2, nodes, root).expect("clause tree is valid")
}

/// m clause trees and m−1 null trees, unit weights, voting mode.
pub fn sat_to_ensemble(cnf: &CnfFormula) -> Result<GadgetInstance> {
    let m = cnf.clauses.len();
    if m == 0 {
        return Err(Error::InvalidModel("formula needs at least one clause".into()));
    }
    let n = cnf.vars;
    let mut trees: Vec<DecisionTree> = cnf.clauses.iter().map(|c| clause_tree(n, c)).collect();
    for _ in 1..m {
        trees.push(DecisionTree::constant(n + 1, 2, int(0)));
    }
    let weights = vec![Rat::one(); trees.len()];
    Ok(GadgetInstance {
        model: GadgetModel::Ensemble(TreeEnsemble::new(trees, weights, EnsembleMode::Vote)?),
        feature: n + 1,
        x: ones(n + 1),
        x_ref: vec![0; n + 1],
        epsilon: Some(Rat::zero()),
        notes: vec!["votes count class c as 2c-1, so the vote is positive iff every clause tree fires".to_string()],
    })
}

/// CONSTRUCT(w, k): cell of size |w|+1 whose neuron n ends at ReLU(d_H(w, w′) − k).
///
/// The last neuron is a constant 1 that feeds the −k; it starts at 1
/// (h_init = e_{n+1}), otherwise the −k never fires.
pub fn csp_construct(w: &[usize], k: usize, alphabet_size: usize) -> Result<RnnRelu> {
    let n = w.len();
    if n == 0 {
        return Err(Error::InvalidModel("empty reference string".into()));
    }
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let d = n + 1;
    let mut h_init = vec![Rat::zero(); d];
    h_init[n] = Rat::one();
    let mut wm = vec![vec![Rat::zero(); d]; d];
    for j in 1..n {
        wm[j][j - 1] = Rat::one();
    }
    wm[n - 1][n] = -int(k as i64);
    wm[n][n] = Rat::one();
    let v = (0..alphabet_size)
        .map(|s| {
            let mut e: Vec<Rat> = w.iter().map(|&c| if c != s { Rat::one() } else { Rat::zero() }).collect();
            e.push(Rat::zero());
            e
        })
        .collect();
    RnnRelu::new(h_init, wm, v, vec![Rat::zero(); d])
}

/// Block-diagonal concatenation of the CONSTRUCT cells with output
/// `Σᵢ −hᵢ[n] + ½·h₁[n+1]`: f(w′) = 1 iff w′ is within radius k of all strings.
pub fn csp_to_rnn(inst: &CspInstance) -> Result<RnnRelu> {
    if inst.strings.is_empty() {
        return Err(Error::InvalidModel("CSP needs at least one string".into()));
    }
    let n = inst.len();
    let cells = inst
        .strings
        .iter()
        .map(|w| csp_construct(w, inst.k, inst.alphabet_size))
        .collect::<Result<Vec<_>>>()?;
    let d = cells.len() * (n + 1);
    let mut h_init = Vec::with_capacity(d);
    let mut w = vec![vec![Rat::zero(); d]; d];
    let mut v = vec![Vec::with_capacity(d); inst.alphabet_size];
    let mut out = Vec::with_capacity(d);
    for (c, cell) in cells.iter().enumerate() {
        let off = c * (n + 1);
        h_init.extend(cell.h_init.iter().cloned());
        for (r, row) in cell.w.iter().enumerate() {
            for (col, val) in row.iter().enumerate() {
                w[off + r][off + col] = val.clone();
            }
        }
        for (s, vs) in cell.v.iter().enumerate() {
            v[s].extend(vs.iter().cloned());
        }
        let mut o = vec![Rat::zero(); n + 1];
        o[n - 1] = -Rat::one();
        if c == 0 {
            o[n] = ratio(1, 2);
        }
        out.extend(o);
    }
    RnnRelu::new(h_init, w, v, out)
}

fn mat_json(m: &[Vec<Rat>]) -> Value {
    Value::Array(m.iter().map(|r| json!(r.iter().map(fmt_rat).collect::<Vec<_>>())).collect())
}

fn vec_json(v: &[Rat]) -> Value {
    json!(v.iter().map(fmt_rat).collect::<Vec<_>>())
}

pub fn rnn_to_json(r: &RnnRelu) -> Value {
    json!({
        "type": "rnn-relu",
        "h_init": vec_json(&r.h_init),
        "W": mat_json(&r.w),
        "embeddings": r.v.iter().map(|e| vec_json(e)).collect::<Vec<_>>(),
        "output": vec_json(&r.out),
    })
}

/// Inverse of [`rnn_to_json`].
pub fn rnn_from_json(v: &Value) -> Result<RnnRelu> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
    RnnRelu::new(json_vec(get("h_init")?)?, json_mat(get("W")?)?, json_mat(get("embeddings")?)?, json_vec(get("output")?)?)
}

impl GadgetModel {
    /// Reads a model tagged with `"type"`: `sigmoid`, `rnn-relu` or `ensemble`.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        match v.get("type").and_then(Value::as_str) {
            Some("sigmoid") => {
                let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
                let gain = get("gain")?.as_f64().ok_or_else(|| Error::Parse("`gain` must be a number".into()))?;
                Ok(GadgetModel::Sigmoid(SigmoidNet { weights: json_vec(get("weights")?)?, bias: json_rat(get("bias")?)?, gain }))
            }
            Some("rnn-relu") => Ok(GadgetModel::Rnn(rnn_from_json(v)?)),
            Some("ensemble") => Ok(GadgetModel::Ensemble(TreeEnsemble::from_json_value(v)?)),
            other => Err(Error::Parse(format!("unknown model type {other:?}"))),
        }
    }
}

impl GadgetInstance {
    pub fn to_json_value(&self) -> Value {
        let model = match &self.model {
            GadgetModel::Sigmoid(s) => json!({
                "type": "sigmoid",
                "weights": vec_json(&s.weights),
                "bias": fmt_rat(&s.bias),
                "gain": s.gain,
            }),
            GadgetModel::Rnn(r) => rnn_to_json(r),
            GadgetModel::Ensemble(e) => {
                let mut v = e.to_json_value();
                v["type"] = json!("ensemble");
                v
            }
        };
        json!({
            "model": model,
            "feature": self.feature,
            "x": self.x,
            "x_ref": self.x_ref,
            "epsilon": self.epsilon.as_ref().map(fmt_rat),
            "epsilon_f64": self.epsilon.as_ref().map(to_f64),
            "notes": self.notes,
        })
    }
}
