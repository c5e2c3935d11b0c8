use shapwa::engine::*;
use shapwa::patterns::{coalition_weight, do_op, swap, Pattern};
use shapwa::scalar::{binomial, int, ratio, Rat};
use shapwa::wa::{all_words, dfa_to_wa, pi0, Alphabet};

fn s() -> Alphabet {
    Alphabet::binary()
}

fn pat(toks: &[usize]) -> Pattern {
    Pattern::from_indices(toks, 2)
}

#[test]
fn a_wi_examples() {
    let ab = Alphabet::from_chars("ab").unwrap();
    let a = build_a_wi(&ab, &[0, 1], 1).unwrap();
    assert_eq!(a.eval_str(&["#b"]).unwrap(), ratio(1, 2));
    assert_eq!(a.eval_str(&["ab"]).unwrap(), int(0));
    assert_eq!(a.eval_str(&["a#"]).unwrap(), int(0));
    for w in all_words(2, 3) {
        let a = build_a_wi(&s(), &w, 2).unwrap();
        let total: Rat = all_words(3, 3).map(|p| a.eval1(&p).unwrap()).sum();
        assert_eq!(total, int(1));
    }
    assert!(build_a_wi(&s(), &[0, 1], 3).is_err());
}

#[test]
fn a_wi_matches_coalition_weight_and_summed_variant() {
    for n in 1..=4 {
        for w in all_words(2, n) {
            for i in 1..=n {
                let a = build_a_wi(&s(), &w, i).unwrap();
                let b = build_a_wi_summed(&s(), &w, i).unwrap();
                for p in all_words(3, n) {
                    let expect = coalition_weight(&pat(&p), &w, i).unwrap();
                    assert_eq!(a.eval1(&p).unwrap(), expect);
                    assert_eq!(b.eval1(&p).unwrap(), expect);
                }
            }
        }
    }
}

#[test]
fn count_lik_examples() {
    assert_eq!(count_lik(3, 2, 1).unwrap(), 1.into());
    assert_eq!(count_lik(3, 1, 2).unwrap(), 2.into());
    assert_eq!(count_lik(5, 3, 3).unwrap(), 6.into());
    assert!(count_lik(3, 1, 0).is_err());
    assert!(count_lik(3, 1, 4).is_err());
}

/// The closed form against path counting on the ℒ_{i,k} DFA.
#[test]
fn count_lik_matches_dfa_paths() {
    for n in 1..=6 {
        let w = vec![1; n];
        for i in 1..=n {
            for k in 1..=n {
                let d = lik_dfa(&s(), &w, i, k).unwrap();
                let paths = pi0(&dfa_to_wa(&d).unwrap(), n).unwrap();
                assert_eq!(paths, Rat::from_integer(count_lik(n, i, k).unwrap()));
                assert_eq!(count_lik(n, i, k).unwrap(), binomial(n - 1, k - 1));
            }
        }
    }
}

#[test]
fn a_in_examples() {
    let ab = Alphabet::from_chars("ab").unwrap();
    let a = build_a_in(&ab, 1, 2).unwrap();
    assert_eq!(a.eval_str(&["#b", "ab"]).unwrap(), ratio(1, 2));
    assert_eq!(a.eval_str(&["ab", "ab"]).unwrap(), int(0));
    for n in 1..=3 {
        for i in 1..=n {
            let a = build_a_in(&s(), i, n).unwrap();
            for w in all_words(2, n) {
                let mut total = Rat::from_integer(0.into());
                for p in all_words(3, n) {
                    let v = a.eval(&[&p, &w]).unwrap();
                    assert_eq!(v, coalition_weight(&pat(&p), &w, i).unwrap());
                    total += v;
                }
                assert_eq!(total, int(1));
            }
        }
    }
}

#[test]
fn t_w_examples() {
    let w = vec![1, 1, 1, 1];
    let t = build_t_w(&s(), &w).unwrap();
    assert_eq!(t.dim(), 5);
    let sh = s().with_hash();
    let p = sh.parse_word("0#0#").unwrap();
    assert_eq!(t.eval(&[&p, &[1, 1, 0, 0], &[1, 1, 1, 0]]).unwrap(), int(1));
    // u disagrees with w at a fixed position
    assert_eq!(t.eval(&[&p, &[1, 1, 0, 0], &[0, 1, 1, 0]]).unwrap(), int(0));
}

#[test]
fn t_w_and_t_wi_match_definitions() {
    for w in all_words(2, 2) {
        let tw = build_t_w(&s(), &w).unwrap();
        for p in all_words(3, 2) {
            for wp in all_words(2, 2) {
                for u in all_words(2, 2) {
                    let expect = do_op(&pat(&p), &wp, &w).unwrap() == u;
                    assert_eq!(tw.eval(&[&p, &wp, &u]).unwrap(), int(expect as i64));
                    for i in 1..=2 {
                        let twi = build_t_wi(&s(), &w, i).unwrap();
                        let q = swap(&pat(&p), w[i - 1], i).unwrap();
                        let expect = do_op(&q, &wp, &w).unwrap() == u;
                        assert_eq!(twi.eval(&[&p, &wp, &u]).unwrap(), int(expect as i64));
                    }
                }
            }
        }
    }
}

#[test]
fn t_and_t_i_match_chain_versions() {
    let t = build_t(&s()).unwrap();
    assert_eq!(t.dim(), 1);
    assert_eq!(t.eval(&[&[2, 2], &[0, 1], &[0, 1], &[1, 1]]).unwrap(), int(1));
    for n in 1..=3 {
        for i in 1..=n {
            let ti = build_t_i(&s(), i, n).unwrap();
            assert_eq!(ti.dim(), i + 1);
            for p in all_words(3, n) {
                for wp in all_words(2, n) {
                    for u in all_words(2, n) {
                        for w in all_words(2, n) {
                            let g = build_t_w(&s(), &w).unwrap().eval(&[&p, &wp, &u]).unwrap();
                            assert_eq!(t.eval(&[&p, &wp, &u, &w]).unwrap(), g);
                            if n <= 2 {
                                let gi = build_t_wi(&s(), &w, i).unwrap().eval(&[&p, &wp, &u]).unwrap();
                                assert_eq!(ti.eval(&[&p, &wp, &u, &w]).unwrap(), gi);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn t_i_pins_position_i_to_w() {
    let ti = build_t_i(&s(), 1, 2).unwrap();
    // p₁ = #, yet u₁ must equal w₁ rather than w′₁
    assert_eq!(ti.eval(&[&[2, 2], &[0, 1], &[1, 1], &[1, 0]]).unwrap(), int(1));
    assert_eq!(ti.eval(&[&[2, 2], &[0, 1], &[0, 1], &[1, 0]]).unwrap(), int(0));
}

#[test]
fn point_hmm_examples() {
    let w = vec![1, 0, 1];
    let h = build_point_hmm(&s(), &w).unwrap();
    assert_eq!(h.states(), 4);
    for x in all_words(2, 3) {
        assert_eq!(h.prob(&x).unwrap(), int((x == w) as i64));
    }
    assert_eq!(pi0(&h.to_wa(), 3).unwrap(), int(1));
    assert_eq!(h.prob(&[1, 0, 1, 0]).unwrap(), ratio(1, 2));
}

#[test]
fn size_bounds() {
    for n in 1..=12 {
        let w = vec![0; n];
        for i in [1, n] {
            assert!(build_a_wi(&s(), &w, i).unwrap().dim() <= (n + 1) * (n + 1));
            assert!(build_a_wi_summed(&s(), &w, i).unwrap().dim() <= 2 * n * n * n + 4 * n);
            assert_eq!(build_t_w(&s(), &w).unwrap().dim(), n + 1);
            assert_eq!(build_t_wi(&s(), &w, i).unwrap().dim(), n + 1);
            assert_eq!(build_t_i(&s(), i, n).unwrap().dim(), i + 1);
        }
    }
}
