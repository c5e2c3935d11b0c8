//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;
use shapwa::engine::*;
use shapwa::frontends::*;
use shapwa::gadgets::*;
use shapwa::oracle::{self, dists, Context, DenseWa, Support, Variant};
use shapwa::random::{self, random_01_wa, random_hmm, random_wa, random_word};
use shapwa::scalar::{int, ratio, to_f64, Rat};
use shapwa::verify::{run_suite, Engine, SuiteConfig};
use shapwa::wa::{all_words, Alphabet, Wa};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Engine = oracle on 200 seeded (f, D, w, i) instances, all four pipelines.
fn c1() -> Outcome {
    let cfg = SuiteConfig { instances: 200, ..SuiteConfig::default() };
    let report = e(run_suite(&Engine, 0, &cfg))?;
    if !report.passed() {
        return Err(report.to_text());
    }
    Ok(format!("{} instances x 4 pipelines, exact equality", cfg.instances))
}

enum Tabular {
    Tree(DecisionTree),
    Ensemble(TreeEnsemble),
}

/// Compiled trees/ensembles under EMP or HmmVec = oracle on the tabular originals.
fn c2() -> Outcome {
    let mut r = random::rng(2);
    let mut checks = 0;
    for case in 0..100 {
        let n = r.gen_range(2..=5);
        let k = 2;
        let model = if case % 2 == 0 {
            Tabular::Tree(random::random_tree(&mut r, n, k, 15, false))
        } else {
            let trees = r.gen_range(1..=3);
            Tabular::Ensemble(random::random_ensemble(&mut r, n, k, trees, 15))
        };
        let order = random::random_order(&mut r, n);
        let (hv, prob): (HmmVec, Box<dyn Fn(&[usize]) -> Rat>) = if case % 4 < 2 {
            let rows = r.gen_range(1..=8);
            let data = random::random_dataset(&mut r, n, k, rows);
            (e(emp_to_hmmvec(&data, &order))?, Box::new(move |x| dists::emp_prob(&data, x)))
        } else {
            let states = r.gen_range(1..=2);
            let mut h = random::random_hmmvec(&mut r, n, k, states);
            h.order = order.clone();
            let hc = h.clone();
            (h, Box::new(move |x| dists::hmmvec_prob(&hc, x)))
        };
        let (wa, f): (Wa, Box<dyn Fn(&[usize]) -> Rat>) = match model {
            Tabular::Tree(t) => (e(dt_to_wa(&t, &order))?, Box::new(move |x| oracle::eval_tree(&t, x))),
            Tabular::Ensemble(en) => {
                (e(ensemble_reg_to_wa(&en, &order))?, Box::new(move |x| oracle::eval_ensemble(&en, x)))
            }
        };
        let hmm = e(hmmvec_to_hmm(&hv, &value_alphabet(k)))?;
        let sup = e(Support::enumerate(k, n, |x| prob(x)))?;
        let ctx = Context::Distribution(sup.clone());
        let x = sup.points[r.gen_range(0..sup.points.len())].0.clone();
        let xr = random_word(&mut r, k, n);
        let feat = r.gen_range(1..=n);
        let pos = order.iter().position(|&o| o == feat - 1).expect("permutation") + 1;
        let (sx, sxr) = (sequentialize(&x, &order), sequentialize(&xr, &order));
        let base = Context::Reference(xr.clone());
        let pairs = [
            (
                "loc-i",
                e(loc_i_shap(&wa, &sx, pos, &hmm))?,
                e(oracle::shap_local(Variant::Interventional, &*f, &x, feat, &ctx))?,
            ),
            (
                "loc-b",
                e(loc_b_shap(&wa, &sx, pos, &sxr))?,
                e(oracle::shap_local(Variant::Baseline, &*f, &x, feat, &base))?,
            ),
            (
                "glo-i",
                e(glo_i_shap(&wa, pos, n, &hmm))?,
                e(oracle::shap_global(Variant::Interventional, &*f, feat, n, &ctx, &sup))?,
            ),
            (
                "glo-b",
                e(glo_b_shap(&wa, pos, n, &sxr, &hmm))?,
                e(oracle::shap_global(Variant::Baseline, &*f, feat, n, &base, &sup))?,
            ),
        ];
        for (name, got, want) in pairs {
            ensure(got == want, || format!("case {case} {name}: engine {got} vs oracle {want}"))?;
            checks += 1;
        }
    }
    Ok(format!("100 models (50 trees, 50 ensembles), {checks} compiled-vs-tabular values equal"))
}

/// Σᵢ φᵢ = f(x) − |f⁻¹(1)|/|Σ|ⁿ for 0/1 WAs under the uniform HMM.
fn c3() -> Outcome {
    let s = Alphabet::binary();
    let u = Hmm::uniform(s.clone());
    let mut r = random::rng(3);
    for case in 0..100 {
        let states = r.gen_range(1..=4);
        let f = random_01_wa(&mut r, &s, states);
        let n = r.gen_range(1..=5);
        let x = random_word(&mut r, 2, n);
        let mut total = int(0);
        for i in 1..=n {
            total += e(loc_i_shap(&f, &x, i, &u))?;
        }
        let ones = all_words(2, n).filter(|w| f.eval1(w).map(|v| v == int(1)).unwrap_or(false)).count();
        let expect = e(f.eval1(&x))? - ratio(ones as i64, 1 << n);
        ensure(total == expect, || format!("case {case}: sum {total} vs {expect}"))?;
    }
    Ok("100 random 0/1 WAs, n <= 5".into())
}

/// v_i = v_c under independent distributions, and the point-distribution identities.
fn c4() -> Outcome {
    let mut r = random::rng(4);
    let mut coalitions = 0;
    for case in 0..40 {
        let n = r.gen_range(1..=4);
        let k = r.gen_range(2..=3);
        let p = IndDist::new(
            (0..n)
                .map(|_| {
                    let w: Vec<i64> = (0..k).map(|_| r.gen_range(0..4)).collect();
                    let tot: i64 = w.iter().sum::<i64>().max(1);
                    if w.iter().all(|&v| v == 0) {
                        let mut row = vec![int(0); k];
                        row[0] = int(1);
                        row
                    } else {
                        w.iter().map(|&v| ratio(v, tot)).collect()
                    }
                })
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let alphabet = Alphabet::numeric(k);
        let f = random_wa(&mut r, &alphabet, 2);
        let dense = e(DenseWa::new(&f))?;
        let fx = |x: &[usize]| dense.eval(x);
        let sup = e(Support::enumerate(k, n, |x| dists::ind_prob(&p, x)))?;
        let ctx = Context::Distribution(sup.clone());
        for (x, _) in &sup.points {
            for b in 0..1usize << n {
                let keep: Vec<bool> = (0..n).map(|j| b >> j & 1 == 1).collect();
                let vi = e(oracle::value_fn(Variant::Interventional, &fx, x, &keep, &ctx))?;
                let vc = e(oracle::value_fn(Variant::Conditional, &fx, x, &keep, &ctx))?;
                ensure(vi == vc, || format!("case {case}: v_i {vi} != v_c {vc} at {x:?}/{keep:?}"))?;
                coalitions += 1;
            }
        }
        // the engine under the compiled IND distribution gives the conditional value
        let order = identity_order(n);
        let hmm = e(hmmvec_to_hmm(&e(ind_to_hmmvec(&p, &order))?, &alphabet))?;
        let x = sup.points[r.gen_range(0..sup.points.len())].0.clone();
        let i = r.gen_range(1..=n);
        let engine = e(loc_i_shap(&f, &x, i, &hmm))?;
        let cond = e(oracle::shap_local(Variant::Conditional, &fx, &x, i, &ctx))?;
        ensure(engine == cond, || format!("case {case}: engine {engine} vs conditional {cond}"))?;
    }
    let s = Alphabet::binary();
    for case in 0..40 {
        let n = r.gen_range(1..=4);
        let f = random_wa(&mut r, &s, 3);
        let dense = e(DenseWa::new(&f))?;
        let fx = |x: &[usize]| dense.eval(x);
        let x = random_word(&mut r, 2, n);
        let xr = random_word(&mut r, 2, n);
        let i = r.gen_range(1..=n);
        let b = e(loc_b_shap(&f, &x, i, &xr))?;
        let via_point = e(loc_i_shap(&f, &x, i, &e(build_point_hmm(&s, &xr))?))?;
        let global_at_x = e(glo_b_shap(&f, i, n, &xr, &e(build_point_hmm(&s, &x))?))?;
        let point = |z: &[usize]| e(Support::enumerate(2, n, |y| int((y == z) as i64)));
        let o_b = e(oracle::shap_local(Variant::Baseline, &fx, &x, i, &Context::Reference(xr.clone())))?;
        let o_i = e(oracle::shap_local(Variant::Interventional, &fx, &x, i, &Context::Distribution(point(&xr)?)))?;
        let o_g = e(oracle::shap_global(Variant::Baseline, &fx, i, n, &Context::Reference(xr.clone()), &point(&x)?))?;
        ensure(b == via_point && b == global_at_x, || format!("case {case}: engine {b} / {via_point} / {global_at_x}"))?;
        ensure(o_b == o_i && o_b == o_g && o_b == b, || format!("case {case}: oracle {o_b} / {o_i} / {o_g}"))?;
    }
    Ok(format!("{coalitions} coalitions with v_i = v_c; 40 instances of each point identity"))
}

/// Sorted weight vectors in {0..5}^N: every game up to relabelling the players.
fn sorted_weights(n: usize, max: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, lo: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(n, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max, &mut Vec::new(), &mut out);
    out
}

/// Every WMG with N ≤ 8, weights 0..5, every quota: dummy ⟺ φ_b ≤ ε.
fn sigmoid_sweep(rule: GainRule) -> Result<(usize, usize, f64, Option<String>), String> {
    let (mut checked, mut wrong, mut min_margin, mut first) = (0, 0, f64::INFINITY, None);
    for n in 1..=8 {
        for w in sorted_weights(n, 5) {
            let total: u64 = w.iter().sum();
            for q in 1..=total {
                let g = e(oracle::Wmg::new(w.clone(), q))?;
                let inst = e(wmg_to_sigmoid(&g, 1, rule))?;
                let GadgetModel::Sigmoid(net) = &inst.model else { unreachable!() };
                let eps = to_f64(inst.epsilon.as_ref().expect("sigmoid gadgets carry epsilon"));
                let f = net.compiled();
                let phi = e(oracle::shap_local_all::<f64>(
                    Variant::Baseline,
                    &f,
                    &inst.x,
                    &Context::Reference(inst.x_ref.clone()),
                ))?;
                for i in 1..=n {
                    let dummy = e(oracle::dummy_check(&g, i))?;
                    let margin = (phi[i - 1] - eps).abs();
                    min_margin = min_margin.min(margin);
                    checked += 1;
                    if dummy != (phi[i - 1] <= eps) || margin <= 1e-9 {
                        wrong += 1;
                        first.get_or_insert_with(|| {
                            format!("<{n},{w:?},{q}> i={i}: dummy={dummy}, phi_b={:.6}, eps={eps:.6}", phi[i - 1])
                        });
                    }
                }
            }
        }
    }
    Ok((checked, wrong, min_margin, first))
}

fn c5() -> Outcome {
    let (checked, wrong, margin, first) = sigmoid_sweep(GainRule::Sharpened)?;
    ensure(wrong == 0, || format!("{wrong} of {checked} misclassified, first: {}", first.clone().unwrap_or_default()))?;
    Ok(format!("{checked} (game, player) pairs up to relabelling, min |phi_b - eps| = {margin:.3e}"))
}

/// RNN gadget: exact simulation for N ≤ 10; dummy ⟺ φ_b = 0 for N ≤ 8.
fn c6() -> Outcome {
    let mut r = random::rng(6);
    let mut games = 0;
    for n in 1..=10 {
        for _ in 0..10 {
            let g = random::random_wmg(&mut r, n, 5);
            let rnn = wmg_to_rnnrelu(&g);
            ensure(rnn.dim() == n + 2, || "hidden size".into())?;
            for x in all_words(2, n) {
                let want = int(g.value(&x) as i64);
                ensure(rnn.eval(&x) == want, || format!("{g:?} at {x:?}"))?;
            }
            games += 1;
        }
    }
    let mut pairs = 0;
    let mut dummies = 0;
    for n in 1..=8 {
        let family: Vec<Vec<u64>> = if n <= 4 {
            sorted_weights(n, 3)
        } else {
            (0..20).map(|_| (0..n).map(|_| r.gen_range(0..=5)).collect()).collect()
        };
        for w in family {
            let total: u64 = w.iter().sum();
            let q = r.gen_range(1..=total.max(1));
            let g = e(oracle::Wmg::new(w, q))?;
            let rnn = wmg_to_rnnrelu(&g);
            let f = |x: &[usize]| rnn.eval(x);
            let phi = e(oracle::shap_local_all(Variant::Baseline, &f, &vec![1; n], &Context::Reference(vec![0; n])))?;
            for i in 1..=n {
                let dummy = e(oracle::dummy_check(&g, i))?;
                dummies += dummy as usize;
                ensure(dummy == (phi[i - 1] == int(0)), || format!("{g:?} i={i}: phi_b = {}", phi[i - 1]))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{games} games simulated exhaustively; {pairs} (game, player) pairs, {dummies} dummies"))
}

/// SAT(Ψ) ⟺ φ_b(n+1) > 0 on 200 random 3-CNFs.
fn c7() -> Outcome {
    let mut r = random::rng(7);
    let (mut sat, mut unsat) = (0, 0);
    for case in 0..200 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=8);
        let cnf = random::random_3cnf(&mut r, n, m);
        let inst = e(sat_to_ensemble(&cnf))?;
        let GadgetModel::Ensemble(en) = &inst.model else { unreachable!() };
        let f = |x: &[usize]| oracle::eval_ensemble(en, x);
        let phi = e(oracle::shap_local(Variant::Baseline, &f, &inst.x, n + 1, &Context::Reference(inst.x_ref.clone())))?;
        let is_sat = e(oracle::sat_brute(&cnf))?.is_some();
        if is_sat {
            sat += 1
        } else {
            unsat += 1
        }
        ensure(is_sat == (phi > int(0)), || format!("case {case}: {} sat={is_sat} phi_b={phi}", cnf.to_dimacs().replace('\n', " ")))?;
    }
    Ok(format!("200 formulas ({sat} satisfiable, {unsat} unsatisfiable)"))
}

/// Unordered string sets of size m over {0,1}ⁿ containing 0ⁿ.
fn string_sets(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    let words: Vec<Vec<usize>> = all_words(2, n).collect();
    let mut out = Vec::new();
    let zero = vec![0; n];
    match m {
        1 => out.push(vec![zero]),
        2 => {
            for a in &words {
                out.push(vec![zero.clone(), a.clone()]);
            }
        }
        _ => {
            for (ia, a) in words.iter().enumerate() {
                for b in &words[ia..] {
                    out.push(vec![zero.clone(), a.clone(), b.clone()]);
                }
            }
        }
    }
    out
}

/// CSP gadget: exhaustive cell property, and emptiness ⟺ no centre string.
fn c8() -> Outcome {
    let mut cells = 0;
    for n in 1..=6 {
        for w in all_words(2, n) {
            for k in 0..=n {
                let cell = e(csp_construct(&w, k, 2))?;
                for x in all_words(2, n) {
                    let d = oracle::hamming(&w, &x) as i64;
                    let h = cell.hidden(&x);
                    ensure(h[n - 1] == int((d - k as i64).max(0)), || format!("w={w:?} k={k} x={x:?}"))?;
                    cells += 1;
                }
            }
        }
    }
    let mut instances = 0;
    let mut yes = 0;
    for n in 1..=6 {
        for m in 1..=3 {
            for strings in string_sets(n, m) {
                for k in 0..=n {
                    let inst = e(oracle::CspInstance::new(strings.clone(), k, 2))?;
                    let rnn = e(csp_to_rnn(&inst))?;
                    let one = int(1);
                    let empty = e(oracle::empty_brute(&|x| rnn.eval(x) == one, 2, n))?;
                    let centre = e(oracle::csp_brute(&inst))?;
                    yes += centre.is_some() as usize;
                    ensure(empty == centre.is_none(), || format!("{strings:?} k={k}: empty={empty}"))?;
                    instances += 1;
                }
            }
        }
    }
    // the translation normalisation above is checked against raw random instances too
    let mut r = random::rng(8);
    for _ in 0..100 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=3);
        let inst = random::random_csp(&mut r, m, n, 2);
        let rnn = e(csp_to_rnn(&inst))?;
        let one = int(1);
        let empty = e(oracle::empty_brute(&|x| rnn.eval(x) == one, 2, n))?;
        ensure(empty == e(oracle::csp_brute(&inst))?.is_none(), || format!("{inst:?}"))?;
        instances += 1;
    }
    Ok(format!("{cells} cell evaluations; {instances} instances ({yes} with a centre) agree"))
}

fn time_loc_i(n: usize, r: &mut random::TestRng) -> Result<Duration, String> {
    let s = Alphabet::binary();
    let f = random_wa(r, &s, 5);
    let d = random_hmm(r, &s, 3);
    let w = random_word(r, 2, n);
    let mut best = Duration::MAX;
    for _ in 0..3 {
        let t = Instant::now();
        e(loc_i_shap(&f, &w, n.div_ceil(2), &d))?;
        best = best.min(t.elapsed());
    }
    Ok(best)
}

/// Least-squares slope of log t against log n.
fn power_fit(pts: &[(usize, Duration)]) -> f64 {
    let xs: Vec<f64> = pts.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|(_, t)| t.as_secs_f64().max(1e-6).ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

const MAX_DEGREE: f64 = 6.0;

/// loc_i at n = 4..8 (WA dim 5, HMM dim 3): n = 8 under 60 s, polynomial growth.
fn c9() -> Outcome {
    let mut r = random::rng(9);
    let mut pts = Vec::new();
    for n in 4..=8 {
        pts.push((n, time_loc_i(n, &mut r)?));
    }
    let t8 = pts.last().expect("five points").1;
    ensure(t8 < Duration::from_secs(60), || format!("n=8 took {t8:?}"))?;
    // extend the range so a polynomial and an exponential can be told apart
    let mut ext = pts.clone();
    for n in [12, 16] {
        ext.push((n, time_loc_i(n, &mut r)?));
    }
    let d = power_fit(&ext);
    let ratio = pts[4].1.as_secs_f64() / pts[0].1.as_secs_f64().max(1e-9);
    let bound = (8.0f64 / 4.0).powf(MAX_DEGREE);
    let times: Vec<String> = ext.iter().map(|(n, t)| format!("n={n}:{:.1}ms", t.as_secs_f64() * 1e3)).collect();
    ensure(d <= MAX_DEGREE && ratio <= bound, || format!("fitted degree {d:.2}, t8/t4 {ratio:.1}; {}", times.join(" ")))?;
    // an exponential 2^n over 4..16 would fit a degree near 8.6 on this range
    Ok(format!("{}; fitted degree {d:.2} <= {MAX_DEGREE}, t8/t4 = {ratio:.1}", times.join(" ")))
}

/// Builder dimensions within twice the size column of the construction table.
fn c10() -> Outcome {
    let s = Alphabet::binary();
    let mut rows = Vec::new();
    for n in 1..=12usize {
        let w = vec![0; n];
        let n3 = n * n * n;
        for i in 1..=n {
            let dims = [
                ("A_wi", e(build_a_wi(&s, &w, i))?.dim(), n3),
                ("A_wi(summed)", e(build_a_wi_summed(&s, &w, i))?.dim(), n3),
                ("T_wi", e(build_t_wi(&s, &w, i))?.dim(), n),
                ("T_w", e(build_t_w(&s, &w))?.dim(), n),
                ("T_i", e(build_t_i(&s, i, n))?.dim(), n),
                ("T", e(build_t(&s))?.dim(), 1),
                ("A_in", e(build_a_in(&s, i, n))?.dim(), n3 * n),
                ("f_wref", e(build_point_hmm(&s, &w))?.states(), n),
            ];
            for (name, dim, size) in dims {
                ensure(dim <= 2 * size, || format!("{name} at n={n}, i={i}: dim {dim} > 2 x {size}"))?;
            }
            if n == 12 && i == 12 {
                rows = dims.iter().map(|(name, d, _)| format!("{name}={d}")).collect();
            }
        }
    }
    Ok(format!("n <= 12, all i; at n=12: {}", rows.join(" ")))
}

fn run(id: usize, name: &str, f: fn() -> Outcome) -> bool {
    let t = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let secs = t.elapsed().as_secs_f64();
    match out {
        Ok(detail) => {
            println!("PASS [{id:>2}] {name} ({secs:.1}s): {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL [{id:>2}] {name} ({secs:.1}s): {detail}");
            false
        }
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("engine-oracle equivalence", c1),
        ("tabular model reproduction", c2),
        ("efficiency axiom", c3),
        ("variant coincidence and point identities", c4),
        ("WMG sigmoid gadget", c5),
        ("WMG RNN-ReLU gadget", c6),
        ("3-SAT ensemble gadget", c7),
        ("closest-string RNN-ReLU gadget", c8),
        ("polynomial scaling", c9),
        ("builder size bounds", c10),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut ok = true;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if only.is_none_or(|o| o == k + 1) {
            ok &= run(k + 1, name, *f);
        }
    }
    if only.is_none() || only == Some(5) {
        match sigmoid_sweep(GainRule::Printed) {
            Ok((checked, wrong, _, first)) => println!(
                "INFO printed sigmoid gain 2*log((1-eps)/eps): {wrong} of {checked} pairs misclassified{}",
                first.map(|f| format!(", e.g. {f}")).unwrap_or_default()
            ),
            Err(err) => println!("INFO printed sigmoid gain sweep failed: {err}"),
        }
    }
    if !ok {
        std::process::exit(1);
    }
}
