use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use shapwa::engine::{self, Hmm};
use shapwa::frontends::{
    self, check_order, identity_order, Dataset, DecisionTree, EnsembleMode, HmmVec, IndDist,
    LinearModel, MarkovDist, NaiveBayes, TreeEnsemble,
};
use shapwa::gadgets::{self, GadgetModel, GainRule};
use shapwa::oracle::{self, CnfFormula, Context, CspInstance, DenseWa, Support, Variant, Wmg};
use shapwa::scalar::{fmt_rat, to_f64, Field, Rat};
use shapwa::verify::{self, Engine, SuiteConfig};
use shapwa::wa::{Alphabet, Wa, WaJson};
use shapwa::Error;

#[derive(Parser)]
#[command(name = "shapwa", version, about = "Exact SHAP for weighted automata and friends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a SHAP value.
    Shap(ShapArgs),
    /// Compile a tabular model or distribution into an automaton or HMM.
    Convert(ConvertArgs),
    /// Emit a hardness-reduction instance.
    Gadget(GadgetArgs),
    /// Check the engine against the enumeration oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    Local,
    Global,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Baseline,
    Interventional,
    Conditional,
}

#[derive(Args)]
struct ShapArgs {
    #[arg(long, value_enum)]
    scope: Scope,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Model JSON: an automaton, a tree, an ensemble, a linear model or a gadget model.
    #[arg(long)]
    model: PathBuf,
    /// HMM JSON (interventional, conditional and global queries).
    #[arg(long)]
    dist: Option<PathBuf>,
    /// Input sequence (local scope).
    #[arg(long)]
    input: Option<String>,
    /// Reference sequence (baseline variant).
    #[arg(long)]
    reference: Option<String>,
    /// 1-based feature; all features when omitted.
    #[arg(long)]
    feature: Option<usize>,
    /// Sequence length (global scope).
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceKind {
    Dt,
    EnsR,
    Lin,
    Emp,
    Ind,
    Markov,
    Nb,
    Hmmvec,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: SourceKind,
    #[arg(long)]
    input: PathBuf,
    /// Feature read at each position, 1-based and comma separated.
    #[arg(long)]
    order: Option<String>,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    WmgSigmoid,
    WmgRnn,
    Sat,
    Csp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gain {
    Sharpened,
    Printed,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// WMG/CSP as JSON, CNF as DIMACS or JSON.
    #[arg(long)]
    input: PathBuf,
    /// Player to test (WMG problems).
    #[arg(long, default_value_t = 1)]
    feature: usize,
    #[arg(long, value_enum, default_value_t = Gain::Sharpened)]
    gain: Gain,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 50)]
    instances: usize,
    /// Certify a WMG gadget instead of running the random suite.
    #[arg(long)]
    wmg: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    feature: usize,
    #[arg(long, value_enum, default_value_t = Gain::Sharpened)]
    gain: Gain,
    /// Use the RNN-ReLU gadget for the certificate.
    #[arg(long)]
    rnn: bool,
}

/// Error with the process exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
    fn incompatible(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Json(_) | Error::UnknownSymbol(_) => 2,
            Error::Guard { .. } => 4,
            _ => 3,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<(String, Value), Failure> {
    let text = read(path)?;
    let v = serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok((text, v))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

enum Model {
    Wa(Wa),
    Gadget(GadgetModel),
}

/// Dispatches on the JSON shape. Trees, regression ensembles and linear
/// models are compiled with the identity order.
fn load_model(v: &Value) -> Result<Model, Failure> {
    let v = v.get("model").filter(|m| m.is_object()).unwrap_or(v);
    if v.get("alphabets").is_some() {
        return Ok(Model::Wa(serde_json::from_value::<WaJson>(v.clone()).map_err(|e| Failure::parse(e.to_string()))?.to_wa()?));
    }
    if v.get("type").is_some() {
        return Ok(Model::Gadget(GadgetModel::from_json_value(v)?));
    }
    if v.get("trees").is_some() {
        let e = TreeEnsemble::from_json_value(v)?;
        if e.mode == EnsembleMode::Vote {
            return Ok(Model::Gadget(GadgetModel::Ensemble(e)));
        }
        return Ok(Model::Wa(frontends::ensemble_reg_to_wa(&e, &identity_order(e.n_features()))?));
    }
    if v.get("node").is_some() {
        let t = DecisionTree::from_json_value(v)?;
        return Ok(Model::Wa(frontends::dt_to_wa(&t, &identity_order(t.n_features))?));
    }
    if v.get("weights").is_some() {
        let m = LinearModel::from_json_value(v)?;
        return Ok(Model::Wa(frontends::linear_to_wa(&m, &identity_order(m.n_features()))?));
    }
    Err(Failure::parse("unrecognized model format"))
}

struct Record {
    feature: usize,
    exact: Option<Rat>,
    value: f64,
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Baseline => "baseline",
        VariantArg::Interventional => "interventional",
        VariantArg::Conditional => "conditional",
    }
}

fn oracle_variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Baseline => Variant::Baseline,
        VariantArg::Interventional => Variant::Interventional,
        VariantArg::Conditional => Variant::Conditional,
    }
}

fn cmd_shap(cli: &Cli, a: &ShapArgs) -> Out {
    let (_, mv) = read_json(&a.model)?;
    let model = load_model(&mv)?;
    if cli.mode == Mode::Exact && matches!(model, Model::Gadget(GadgetModel::Sigmoid(_))) {
        return Err(Failure::incompatible("sigmoid networks are evaluated in binary-64; use --mode float"));
    }
    let alphabet = match &model {
        Model::Wa(w) => w.alphabet().clone(),
        Model::Gadget(GadgetModel::Ensemble(e)) => Alphabet::numeric(e.domain()),
        Model::Gadget(_) => Alphabet::binary(),
    };
    let dist = match &a.dist {
        Some(p) => {
            let (_, v) = read_json(p)?;
            let h = Hmm::from_json_value(&v)?;
            if h.alphabet() != &alphabet {
                return Err(Failure::incompatible(format!(
                    "model alphabet {alphabet} differs from distribution alphabet {}",
                    h.alphabet()
                )));
            }
            Some(h)
        }
        None => None,
    };
    let word = |s: &Option<String>, what: &str| -> Result<Vec<usize>, Failure> {
        let s = s.as_ref().ok_or_else(|| Failure::incompatible(format!("--{what} is required here")))?;
        Ok(alphabet.parse_word(s)?)
    };
    let needs_dist = a.variant != VariantArg::Baseline || a.scope == Scope::Global;
    if needs_dist && dist.is_none() {
        return Err(Failure::incompatible("--dist is required for this query"));
    }
    let x = match a.scope {
        Scope::Local => Some(word(&a.input, "input")?),
        Scope::Global => None,
    };
    let n = match (&x, a.length) {
        (Some(x), _) => x.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(Failure::incompatible("--length is required for global queries")),
    };
    let reference = match a.variant {
        VariantArg::Baseline => {
            let r = word(&a.reference, "reference")?;
            if r.len() != n {
                return Err(Failure::incompatible(format!("reference has length {}, expected {n}", r.len())));
            }
            Some(r)
        }
        _ => None,
    };
    let features: Vec<usize> = match a.feature {
        Some(i) if i == 0 || i > n => {
            return Err(Failure::incompatible(format!("feature {i} out of range 1..={n}")));
        }
        Some(i) => vec![i],
        None => (1..=n).collect(),
    };
    let records = match (&model, a.variant) {
        (Model::Wa(f), VariantArg::Baseline | VariantArg::Interventional) => {
            let mut out = Vec::new();
            for &i in &features {
                let v = match (a.scope, a.variant, &x) {
                    (Scope::Local, VariantArg::Interventional, Some(x)) => engine::loc_i_shap(f, x, i, dist.as_ref().expect("checked"))?,
                    (Scope::Local, _, Some(x)) => engine::loc_b_shap(f, x, i, reference.as_ref().expect("baseline"))?,
                    (_, VariantArg::Interventional, _) => engine::glo_i_shap(f, i, n, dist.as_ref().expect("checked"))?,
                    _ => engine::glo_b_shap(f, i, n, reference.as_ref().expect("baseline"), dist.as_ref().expect("checked"))?,
                };
                out.push(Record { feature: i, value: to_f64(&v), exact: Some(v) });
            }
            out
        }
        (Model::Gadget(GadgetModel::Sigmoid(net)), _) => {
            let f = net.compiled();
            oracle_records::<f64>(&f, a, &alphabet, x.as_deref(), reference, dist.as_ref(), n, &features)?
        }
        (Model::Wa(f), _) => {
            let dense = DenseWa::new(f)?;
            let f = |z: &[usize]| dense.eval(z);
            oracle_records::<Rat>(&f, a, &alphabet, x.as_deref(), reference, dist.as_ref(), n, &features)?
        }
        (Model::Gadget(GadgetModel::Rnn(rnn)), _) => {
            let f = |z: &[usize]| rnn.eval(z);
            oracle_records::<Rat>(&f, a, &alphabet, x.as_deref(), reference, dist.as_ref(), n, &features)?
        }
        (Model::Gadget(GadgetModel::Ensemble(en)), _) => {
            let f = |z: &[usize]| oracle::eval_ensemble(en, z);
            oracle_records::<Rat>(&f, a, &alphabet, x.as_deref(), reference, dist.as_ref(), n, &features)?
        }
    };
    let scope = match a.scope {
        Scope::Local => "local",
        Scope::Global => "global",
    };
    let variant = variant_name(a.variant);
    let show = |r: &Record| match (&r.exact, cli.mode) {
        (Some(v), Mode::Exact) => fmt_rat(v),
        _ => format!("{}", r.value),
    };
    Ok(match cli.format {
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| json!({ "feature": r.feature, "variant": variant, "scope": scope, "value": show(r), "decimal": r.value }))
                .collect();
            pretty(&if rows.len() == 1 { rows[0].clone() } else { Value::Array(rows) })
        }
        Format::Tsv => {
            let mut s = String::from("feature\tvariant\tscope\tvalue\tdecimal\n");
            for r in &records {
                s.push_str(&format!("{}\t{variant}\t{scope}\t{}\t{}\n", r.feature, show(r), r.value));
            }
            s
        }
    })
}

/// Enumeration path: conditional queries and models without an automaton form.
#[allow(clippy::too_many_arguments)]
fn oracle_records<S: Exact>(
    f: &dyn Fn(&[usize]) -> S,
    a: &ShapArgs,
    alphabet: &Alphabet,
    x: Option<&[usize]>,
    reference: Option<Vec<usize>>,
    dist: Option<&Hmm>,
    n: usize,
    features: &[usize],
) -> Result<Vec<Record>, Failure> {
    let k = alphabet.len();
    let support = match dist {
        Some(h) => Some(Support::enumerate(k, n, |z| S::from_rat(&oracle::dists::hmm_prob(h, z)))?),
        None => None,
    };
    let ctx = match reference {
        Some(r) => Context::Reference(r),
        None => Context::Distribution(support.clone().expect("checked by caller")),
    };
    let variant = oracle_variant(a.variant);
    let mut out = Vec::new();
    match x {
        Some(x) => {
            let all = oracle::shap_local_all(variant, f, x, &ctx)?;
            for &i in features {
                out.push(record(i, all[i - 1].clone()));
            }
        }
        None => {
            let sup = support.expect("checked by caller");
            for &i in features {
                out.push(record(i, oracle::shap_global(variant, f, i, n, &ctx, &sup)?));
            }
        }
    }
    Ok(out)
}

/// Scalars that may carry an exact value.
trait Exact: Field {
    fn exact(&self) -> Option<Rat>;
}

impl Exact for Rat {
    fn exact(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

impl Exact for f64 {
    fn exact(&self) -> Option<Rat> {
        None
    }
}

fn record<S: Exact>(feature: usize, v: S) -> Record {
    Record { feature, exact: v.exact(), value: v.to_f64() }
}

fn parse_order(s: &Option<String>, n: usize) -> Result<Vec<usize>, Failure> {
    let Some(s) = s else { return Ok(identity_order(n)) };
    let order = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&v| v > 0).map(|v| v - 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::parse(format!("bad order `{s}`, expected 1-based comma-separated features")))?;
    check_order(&order, n)?;
    Ok(order)
}

fn cmd_convert(a: &ConvertArgs) -> Out {
    let (text, v) = read_json(&a.input)?;
    let digest = Sha256::digest(text.as_bytes());
    let hash: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let kind = SourceKind::to_possible_value(&a.from).expect("no skipped variants").get_name().to_string();
    let provenance = |order: &[usize]| {
        json!({
            "source": a.input.file_name().map(|f| f.to_string_lossy().to_string()),
            "source_kind": kind,
            "source_sha256": hash,
            "order": order.iter().map(|o| o + 1).collect::<Vec<_>>(),
        })
    };
    let wa_out = |wa: Wa, order: &[usize]| {
        let mut j = WaJson::from_wa(&wa);
        j.kind = Some("wa".into());
        j.provenance = Some(provenance(order));
        serde_json::to_value(&j).expect("serializable")
    };
    let hmm_out = |h: Hmm, order: &[usize]| {
        let mut v = h.to_json_value();
        v["provenance"] = provenance(order);
        v
    };
    let from_hmmvec = |hv: HmmVec, k: usize| -> Result<Value, Failure> {
        let order = hv.order.clone();
        Ok(hmm_out(frontends::hmmvec_to_hmm(&hv, &frontends::value_alphabet(k))?, &order))
    };
    let out = match a.from {
        SourceKind::Dt => {
            let t = DecisionTree::from_json_value(&v)?;
            let order = parse_order(&a.order, t.n_features)?;
            wa_out(frontends::dt_to_wa(&t, &order)?, &order)
        }
        SourceKind::EnsR => {
            let e = TreeEnsemble::from_json_value(&v)?;
            let order = parse_order(&a.order, e.n_features())?;
            wa_out(frontends::ensemble_reg_to_wa(&e, &order)?, &order)
        }
        SourceKind::Lin => {
            let m = LinearModel::from_json_value(&v)?;
            let order = parse_order(&a.order, m.n_features())?;
            wa_out(frontends::linear_to_wa(&m, &order)?, &order)
        }
        SourceKind::Emp => {
            let d = Dataset::from_json_value(&v)?;
            let order = parse_order(&a.order, d.n_features())?;
            from_hmmvec(frontends::emp_to_hmmvec(&d, &order)?, d.domain)?
        }
        SourceKind::Ind => {
            let p = IndDist::from_json_value(&v)?;
            let order = parse_order(&a.order, p.p.len())?;
            from_hmmvec(frontends::ind_to_hmmvec(&p, &order)?, p.p[0].len())?
        }
        SourceKind::Nb => {
            let m = NaiveBayes::from_json_value(&v)?;
            let order = parse_order(&a.order, m.cond.len())?;
            let k = m.cond[0][0].len();
            from_hmmvec(frontends::nb_to_hmmvec(&m, &order)?, k)?
        }
        SourceKind::Hmmvec => {
            let mut hv = HmmVec::from_json_value(&v)?;
            if a.order.is_some() {
                hv.order = parse_order(&a.order, hv.len())?;
            }
            let k = hv.domain();
            from_hmmvec(hv, k)?
        }
        SourceKind::Markov => {
            let m = MarkovDist::from_json_value(&v)?;
            if a.order.is_some() {
                return Err(Failure::incompatible("a Markov chain is already sequential; --order does not apply"));
            }
            let k = m.initial.len();
            hmm_out(frontends::markov_to_hmm(&m, &frontends::value_alphabet(k))?, &[])
        }
    };
    let text = pretty(&out);
    match &a.output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", p.display()) })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn load_wmg(path: &Path) -> Result<Wmg, Failure> {
    let (_, v) = read_json(path)?;
    let powers: Vec<u64> = v
        .get("powers")
        .cloned()
        .ok_or_else(|| Failure::parse("WMG needs `powers`"))
        .and_then(|p| serde_json::from_value(p).map_err(|e| Failure::parse(e.to_string())))?;
    let quota = v.get("quota").and_then(Value::as_u64).ok_or_else(|| Failure::parse("WMG needs an integer `quota`"))?;
    Ok(Wmg::new(powers, quota)?)
}

fn load_cnf(path: &Path) -> Result<CnfFormula, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::parse(e.to_string()))?;
        let vars = v.get("vars").and_then(Value::as_u64).ok_or_else(|| Failure::parse("CNF needs `vars`"))?;
        let clauses: Vec<Vec<i64>> = v
            .get("clauses")
            .cloned()
            .ok_or_else(|| Failure::parse("CNF needs `clauses`"))
            .and_then(|c| serde_json::from_value(c).map_err(|e| Failure::parse(e.to_string())))?;
        return Ok(CnfFormula::new(vars as usize, clauses)?);
    }
    Ok(CnfFormula::parse_dimacs(&text)?)
}

fn load_csp(path: &Path) -> Result<CspInstance, Failure> {
    let (_, v) = read_json(path)?;
    let strings: Vec<String> = v
        .get("strings")
        .cloned()
        .ok_or_else(|| Failure::parse("CSP needs `strings`"))
        .and_then(|s| serde_json::from_value(s).map_err(|e| Failure::parse(e.to_string())))?;
    let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| Failure::parse("CSP needs an integer `k`"))?;
    let size = v.get("alphabet").and_then(Value::as_u64).unwrap_or(2) as usize;
    let alphabet = Alphabet::numeric(size);
    let strings = strings.iter().map(|s| alphabet.parse_word(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(CspInstance::new(strings, k as usize, size)?)
}

fn gain(g: Gain) -> GainRule {
    match g {
        Gain::Sharpened => GainRule::Sharpened,
        Gain::Printed => GainRule::Printed,
    }
}

/// Certificates are attached only when the brute force fits the guards.
fn certificate(c: Result<verify::Certificate, Error>) -> Result<Value, Failure> {
    match c {
        Ok(c) => Ok(c.to_json_value()),
        Err(Error::Guard { needed, limit }) => Ok(json!({ "skipped": format!("needs {needed} bits, guard is {limit}") })),
        Err(e) => Err(e.into()),
    }
}

fn cmd_gadget(a: &GadgetArgs) -> Out {
    let out = match a.problem {
        Problem::WmgSigmoid | Problem::WmgRnn => {
            let g = load_wmg(&a.input)?;
            let inst = if a.problem == Problem::WmgSigmoid {
                gadgets::wmg_to_sigmoid(&g, a.feature, gain(a.gain))?
            } else {
                gadgets::wmg_rnn_instance(&g, a.feature)?
            };
            let mut v = inst.to_json_value();
            v["source"] = json!({ "powers": g.powers, "quota": g.quota });
            v["certificate"] = certificate(verify::certify_wmg(&g, a.feature, &inst))?;
            v
        }
        Problem::Sat => {
            let cnf = load_cnf(&a.input)?;
            let inst = gadgets::sat_to_ensemble(&cnf)?;
            let mut v = inst.to_json_value();
            v["source"] = json!({ "vars": cnf.vars, "clauses": cnf.clauses });
            v["certificate"] = certificate(verify::certify_sat(&cnf, &inst))?;
            v
        }
        Problem::Csp => {
            let csp = load_csp(&a.input)?;
            let rnn = gadgets::csp_to_rnn(&csp)?;
            json!({
                "model": gadgets::rnn_to_json(&rnn),
                "question": "is {x in alphabet^n : f(x) = 1} empty?",
                "length": csp.len(),
                "alphabet": csp.alphabet_size,
                "notes": ["h_init of every cell is e_{n+1}: the constant neuron must start at 1 for the -k shift to apply"],
                "certificate": certificate(verify::certify_csp(&csp, &rnn))?,
            })
        }
    };
    Ok(pretty(&out))
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Out {
    if let Some(path) = &a.wmg {
        let g = load_wmg(path)?;
        let inst = if a.rnn {
            gadgets::wmg_rnn_instance(&g, a.feature)?
        } else {
            gadgets::wmg_to_sigmoid(&g, a.feature, gain(a.gain))?
        };
        let c = verify::certify_wmg(&g, a.feature, &inst)?;
        let status = if c.consistent { "PASS" } else { "FAIL" };
        return Ok(match cli.format {
            Format::Json => pretty(&json!({ "status": status, "certificate": c.to_json_value() })),
            Format::Tsv => format!("{status}\t{}\tphi_b={}\teps={}\n", c.verdict, c.phi, c.threshold),
        });
    }
    let cfg = SuiteConfig { instances: a.instances, ..SuiteConfig::default() };
    let report = verify::run_suite(&Engine, cli.seed, &cfg)?;
    let text = match cli.format {
        Format::Json => pretty(&report.to_json_value()),
        Format::Tsv => report.to_text(),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure { code: 1, msg: text })
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Shap(a) => cmd_shap(cli, a),
        Command::Convert(a) => cmd_convert(a),
        Command::Gadget(a) => cmd_gadget(a),
        Command::Verify(a) => cmd_verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg.trim_end());
            ExitCode::from(f.code)
        }
    }
}
