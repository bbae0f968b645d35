use psmac_core::nonsym::{
    compute_e, compute_e_with, dl_apply, dl_inverse_apply, evaluation_check, hecke_ratio, t_word_apply,
    AscentChoice,
};
use psmac_core::shapes::compositions;
use psmac_core::{QTRational, XPolynomial};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn all_compositions(max_size: usize, max_n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for s in 0..=max_size {
            out.extend(compositions(s, n));
        }
    }
    out
}

#[test]
fn e_is_monic() {
    for nu in all_compositions(6, 4) {
        let e = compute_e(&nu);
        let lead: Vec<u32> = nu.iter().map(|&v| v as u32).collect();
        assert!(e.coefficient_of(&lead).is_one(), "{nu:?}");
    }
}

#[test]
fn t_on_e_instances() {
    for nu in all_compositions(6, 4) {
        for i in 1..nu.len() {
            if nu[i - 1] <= nu[i] {
                continue;
            }
            let mut s = nu.clone();
            s.swap(i - 1, i);
            let e = compute_e(&nu);
            let lhs = dl_apply(i, &e).unwrap();
            let rhs = compute_e(&s).sub(&e.scalar_mul(&hecke_ratio(&nu, i))).unwrap();
            assert_eq!(lhs, rhs, "nu={nu:?} i={i}");
        }
    }
}

#[test]
fn recursion_paths_agree() {
    for nu in all_compositions(5, 4) {
        let a = compute_e_with(&nu, AscentChoice::First);
        let b = compute_e_with(&nu, AscentChoice::Last);
        assert_eq!(a, b, "{nu:?}");
        assert_eq!(a, *compute_e(&nu));
    }
}

#[test]
fn evaluation_formula() {
    for nu in all_compositions(5, 4) {
        let c = evaluation_check(&nu).unwrap();
        assert!(c.equal, "{nu:?}: {} vs {}", c.lhs.pretty(), c.rhs.pretty());
    }
}

#[test]
fn evaluation_listed_cases() {
    for nu in [vec![0, 0, 0], vec![1, 0], vec![0, 2, 1]] {
        assert!(evaluation_check(&nu).unwrap().equal);
    }
    assert!(evaluation_check(&[0, 0, 0]).unwrap().lhs.is_one());
}

fn small_coeff() -> impl Strategy<Value = QTRational> {
    (-3i64..=3, 0i32..=2, 0i32..=2, 0i32..=1, 0i32..=1).prop_map(|(c, a, b, a2, b2)| {
        let num = QTRational::monomial(c, a, b) + QTRational::one();
        let den = QTRational::one_minus(a2 + 1, b2);
        &num / &den
    })
}

fn xpoly(n: usize) -> impl Strategy<Value = XPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), small_coeff()), 0..5)
        .prop_map(move |ts| XPolynomial::from_terms(n, ts))
}

fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

#[test]
fn quadratic_relation() {
    let mut r = runner(200);
    r.run(&(2usize..=5).prop_flat_map(|n| (Just(n), xpoly(n), 1..n)), |(n, f, i)| {
        let _ = n;
        let t = QTRational::t();
        let tf = dl_apply(i, &f).unwrap();
        let a = tf.add(&f).unwrap();
        let b = dl_apply(i, &a).unwrap().sub(&a.scalar_mul(&t)).unwrap();
        prop_assert!(b.is_zero());
        prop_assert_eq!(dl_apply(i, &dl_inverse_apply(i, &f).unwrap()).unwrap(), f);
        Ok(())
    })
    .unwrap();
}

#[test]
fn braid_relation() {
    let mut r = runner(60);
    r.run(&(3usize..=4).prop_flat_map(|n| (Just(n), xpoly(n), 1..n - 1)), |(_, f, i)| {
        let a = t_word_apply(&[i, i + 1, i], &f).unwrap();
        let b = t_word_apply(&[i + 1, i, i + 1], &f).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    })
    .unwrap();
}

#[test]
fn symmetric_kernel() {
    let t = QTRational::t();
    let x = |i| XPolynomial::variable(3, i);
    let sym = x(1).mul(&x(2)).unwrap().add(&x(3)).unwrap();
    assert_eq!(dl_apply(1, &sym).unwrap(), sym.scalar_mul(&t));
    let asym = x(1).add(&x(3)).unwrap();
    assert_ne!(dl_apply(1, &asym).unwrap(), asym.scalar_mul(&t));
    assert!(t_word_apply(&[1, 1], &sym).is_err());
}
