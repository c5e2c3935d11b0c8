use shapwa::engine::loc_i_shap;
use shapwa::frontends::*;
use shapwa::oracle::{self, dists, eval_ensemble, eval_linear, eval_tree, Context, Support, Variant};
use shapwa::random::{self, random_dataset, random_ensemble, random_hmmvec, random_linear, random_order, random_tree};
use shapwa::scalar::{int, ratio, Rat};
use shapwa::wa::all_words;
use shapwa::Error;

fn leaf(c: i64) -> TreeNode {
    TreeNode::Leaf(int(c))
}

#[test]
fn tree_examples() {
    // returns x₁
    let t = DecisionTree::new(2, 2, vec![leaf(0), leaf(1), TreeNode::Split { feature: 1, children: vec![0, 1] }], 2).unwrap();
    let wa = dt_to_wa(&t, &identity_order(2)).unwrap();
    assert_eq!(wa.eval1(&[1, 0]).unwrap(), int(1));
    assert_eq!(wa.eval1(&[0, 1]).unwrap(), int(0));
    let c = DecisionTree::constant(3, 2, ratio(2, 5));
    let wa = dt_to_wa(&c, &identity_order(3)).unwrap();
    assert!(all_words(2, 3).all(|x| wa.eval1(&x).unwrap() == ratio(2, 5)));
}

#[test]
fn malformed_trees_rejected() {
    let repeated = vec![
        leaf(0),
        leaf(1),
        TreeNode::Split { feature: 1, children: vec![0, 1] },
        TreeNode::Split { feature: 1, children: vec![2, 1] },
    ];
    assert!(DecisionTree::new(2, 2, repeated, 3).is_err());
    let wrong_arity = vec![leaf(0), TreeNode::Split { feature: 1, children: vec![0] }];
    assert!(DecisionTree::new(1, 2, wrong_arity, 1).is_err());
    let out_of_range = vec![leaf(0), TreeNode::Split { feature: 3, children: vec![0, 0] }];
    assert!(DecisionTree::new(2, 2, out_of_range, 1).is_err());
}

#[test]
fn random_trees_compile_exactly() {
    let mut r = random::rng(21);
    for _ in 0..30 {
        let n = 1 + rand::Rng::gen_range(&mut r, 0..5usize);
        let k = 2 + rand::Rng::gen_range(&mut r, 0..2usize);
        let t = random_tree(&mut r, n, k, 15, false);
        let order = random_order(&mut r, n);
        let wa = dt_to_wa(&t, &order).unwrap();
        for x in all_words(k, n) {
            assert_eq!(wa.eval1(&sequentialize(&x, &order)).unwrap(), eval_tree(&t, &x));
        }
        let back = DecisionTree::from_json_value(&t.to_json_value()).unwrap();
        assert!(all_words(k, n).all(|x| eval_tree(&back, &x) == eval_tree(&t, &x)));
    }
}

#[test]
fn ensembles_compile_exactly() {
    let mut r = random::rng(22);
    for _ in 0..10 {
        let e = random_ensemble(&mut r, 4, 2, 3, 15);
        let order = random_order(&mut r, 4);
        let wa = ensemble_reg_to_wa(&e, &order).unwrap();
        for x in all_words(2, 4) {
            assert_eq!(wa.eval1(&sequentialize(&x, &order)).unwrap(), eval_ensemble(&e, &x));
        }
    }
    let t = random_tree(&mut r, 3, 2, 7, false);
    let single = TreeEnsemble::new(vec![t.clone()], vec![int(1)], EnsembleMode::Regression).unwrap();
    let a = ensemble_reg_to_wa(&single, &identity_order(3)).unwrap();
    let b = dt_to_wa(&t, &identity_order(3)).unwrap();
    let zero = TreeEnsemble::new(vec![t.clone(), t.clone()], vec![int(0), int(0)], EnsembleMode::Regression).unwrap();
    let z = ensemble_reg_to_wa(&zero, &identity_order(3)).unwrap();
    for x in all_words(2, 3) {
        assert_eq!(a.eval1(&x).unwrap(), b.eval1(&x).unwrap());
        assert_eq!(z.eval1(&x).unwrap(), int(0));
    }
    let vote = TreeEnsemble::new(vec![t], vec![int(1)], EnsembleMode::Vote).unwrap();
    assert!(matches!(ensemble_reg_to_wa(&vote, &identity_order(3)), Err(Error::Unsupported(_))));
}

#[test]
fn linear_examples() {
    let m = LinearModel::new(vec![vec![int(1), ratio(1, 2)], vec![int(-1), int(0)]], int(0)).unwrap();
    let wa = linear_to_wa(&m, &identity_order(2)).unwrap();
    assert_eq!(wa.eval1(&[0, 0]).unwrap(), int(0));
    assert_eq!(wa.eval1(&[1, 0]).unwrap(), ratio(-1, 2));
    assert_eq!(wa.eval1(&[0, 1]).unwrap(), int(1));
    let c = LinearModel::new(vec![vec![int(0); 2]; 3], ratio(4, 3)).unwrap();
    let wa = linear_to_wa(&c, &identity_order(3)).unwrap();
    assert!(all_words(2, 3).all(|x| wa.eval1(&x).unwrap() == ratio(4, 3)));
    let mut r = random::rng(23);
    for _ in 0..5 {
        let m = random_linear(&mut r, 3, 3);
        let order = random_order(&mut r, 3);
        let wa = linear_to_wa(&m, &order).unwrap();
        for x in all_words(3, 3) {
            assert_eq!(wa.eval1(&sequentialize(&x, &order)).unwrap(), eval_linear(&m, &x));
        }
        let back = LinearModel::from_json_value(&m.to_json_value()).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn linear_pads_mixed_domains() {
    let m = LinearModel::new(vec![vec![int(1)], vec![int(2), int(3), int(4)]], int(0)).unwrap();
    assert_eq!(m.domain(), 3);
    assert_eq!(eval_linear(&m, &[2, 2]), int(4));
}

#[test]
fn empirical_examples() {
    let d = Dataset::new(vec![vec![0, 1], vec![0, 1], vec![1, 1]], 2).unwrap();
    let h = emp_to_hmmvec(&d, &identity_order(2)).unwrap();
    assert_eq!(dists::hmmvec_prob(&h, &[0, 1]), ratio(2, 3));
    assert_eq!(dists::hmmvec_prob(&h, &[1, 1]), ratio(1, 3));
    assert_eq!(dists::hmmvec_prob(&h, &[0, 0]), int(0));
    assert_eq!(dists::hmmvec_prob(&h, &[1, 0]), int(0));
    let d2 = Dataset::new(vec![vec![0, 1], vec![1, 1]], 2).unwrap();
    let hmm = hmmvec_to_hmm(&emp_to_hmmvec(&d2, &identity_order(2)).unwrap(), &value_alphabet(2)).unwrap();
    assert_eq!(hmm.prob(&[0, 1]).unwrap(), ratio(1, 2));
    assert_eq!(hmm.prob(&[1, 1]).unwrap(), ratio(1, 2));
    let single = Dataset::new(vec![vec![1, 0, 1]], 2).unwrap();
    let h = emp_to_hmmvec(&single, &identity_order(3)).unwrap();
    for x in all_words(2, 3) {
        assert_eq!(dists::hmmvec_prob(&h, &x), int((x == [1, 0, 1]) as i64));
    }
    assert!(Dataset::new(vec![], 2).is_err());
    assert!(Dataset::new(vec![vec![0], vec![0, 1]], 2).is_err());
}

#[test]
fn distribution_compilers_preserve_probabilities() {
    let mut r = random::rng(24);
    for _ in 0..8 {
        let n = 1 + rand::Rng::gen_range(&mut r, 0..4usize);
        let k = 2 + rand::Rng::gen_range(&mut r, 0..2usize);
        let order = random_order(&mut r, n);
        let data = random_dataset(&mut r, n, k, 6);
        let emp = emp_to_hmmvec(&data, &order).unwrap();
        let hv = random_hmmvec(&mut r, n, k, 2);
        let alphabet = value_alphabet(k);
        let emp_hmm = hmmvec_to_hmm(&emp, &alphabet).unwrap();
        let hv_hmm = hmmvec_to_hmm(&hv, &alphabet).unwrap();
        let mut total = Rat::from_integer(0.into());
        for x in all_words(k, n) {
            let seq = sequentialize(&x, &hv.order);
            assert_eq!(dists::emp_prob(&data, &x), dists::hmmvec_prob(&emp, &x));
            assert_eq!(emp_hmm.prob(&sequentialize(&x, &order)).unwrap(), dists::emp_prob(&data, &x));
            assert_eq!(hv_hmm.prob(&seq).unwrap(), dists::hmmvec_prob(&hv, &x));
            total += dists::hmmvec_prob(&hv, &x);
        }
        assert_eq!(total, int(1));
        let back = HmmVec::from_json_value(&hv.to_json_value()).unwrap();
        assert_eq!(back, hv);
    }
}

#[test]
fn ind_nb_markov_examples() {
    let u = IndDist::uniform(2, 2);
    let h = ind_to_hmmvec(&u, &identity_order(2)).unwrap();
    for x in all_words(2, 2) {
        assert_eq!(dists::hmmvec_prob(&h, &x), ratio(1, 4));
    }
    let ind = IndDist::new(vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(3, 4), ratio(1, 4)]]).unwrap();
    let nb = NaiveBayes::new(vec![int(1)], ind.p.iter().map(|row| vec![row.clone()]).collect()).unwrap();
    let order = vec![1, 0];
    let hi = ind_to_hmmvec(&ind, &order).unwrap();
    let hn = nb_to_hmmvec(&nb, &order).unwrap();
    for x in all_words(2, 2) {
        assert_eq!(dists::hmmvec_prob(&hn, &x), dists::ind_prob(&ind, &x));
        assert_eq!(dists::hmmvec_prob(&hi, &x), dists::ind_prob(&ind, &x));
        assert_eq!(dists::nb_prob(&nb, &x), dists::ind_prob(&ind, &x));
    }
    let nb2 = NaiveBayes::new(
        vec![ratio(1, 4), ratio(3, 4)],
        vec![vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 5), ratio(4, 5)]]; 3],
    )
    .unwrap();
    let h2 = nb_to_hmmvec(&nb2, &identity_order(3)).unwrap();
    for x in all_words(2, 3) {
        assert_eq!(dists::hmmvec_prob(&h2, &x), dists::nb_prob(&nb2, &x));
    }
    let mk = MarkovDist::new(vec![int(1), int(0)], vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
    let hm = markov_to_hmm(&mk, &value_alphabet(2)).unwrap();
    for x in all_words(2, 3) {
        assert_eq!(hm.prob(&x).unwrap(), int((x == [0, 1, 0]) as i64));
        assert_eq!(dists::markov_prob(&mk, &x), hm.prob(&x).unwrap());
    }
    assert!(MarkovDist::new(vec![int(1), int(0)], vec![vec![int(1), int(1)], vec![int(1), int(0)]]).is_err());
    assert!(IndDist::new(vec![vec![ratio(1, 2), ratio(1, 3)]]).is_err());
}

#[test]
fn compiled_shap_matches_tabular_oracle() {
    let mut r = random::rng(25);
    for _ in 0..4 {
        let n = 3;
        let t = random_tree(&mut r, n, 2, 9, false);
        let order = random_order(&mut r, n);
        let data = random_dataset(&mut r, n, 2, 5);
        let wa = dt_to_wa(&t, &order).unwrap();
        let hmm = hmmvec_to_hmm(&emp_to_hmmvec(&data, &order).unwrap(), &value_alphabet(2)).unwrap();
        let x = random::random_word(&mut r, 2, n);
        let sup = Support::enumerate(2, n, |z| dists::emp_prob(&data, z)).unwrap();
        let f = |z: &[usize]| eval_tree(&t, z);
        for feat in 1..=n {
            let pos = order.iter().position(|&o| o == feat - 1).unwrap() + 1;
            let e = loc_i_shap(&wa, &sequentialize(&x, &order), pos, &hmm).unwrap();
            let o: Rat = oracle::shap_local(Variant::Interventional, &f, &x, feat, &Context::Distribution(sup.clone())).unwrap();
            assert_eq!(e, o);
        }
    }
}

#[test]
fn order_helpers() {
    let order = vec![2, 0, 1];
    let x = vec![5, 6, 7];
    let s = sequentialize(&x, &order);
    assert_eq!(s, vec![7, 5, 6]);
    assert_eq!(desequentialize(&s, &order), x);
    assert!(check_order(&[0, 0, 1], 3).is_err());
    assert!(check_order(&[0, 1], 3).is_err());
}
