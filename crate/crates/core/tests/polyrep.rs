use psmac_core::polyrep::*;
use psmac_core::symfunc::VkElement;
use psmac_core::{QTRational, SplitIndex};

const D: usize = 4;

fn one() -> QTRational {
    QTRational::one()
}

fn y(k: usize, i: usize) -> VkElement {
    let mut b = vec![0; k];
    b[i - 1] = 1;
    VkElement::term(k, D, vec![], b, one()).unwrap()
}

fn e1(k: usize) -> VkElement {
    VkElement::elementary(1, k, D).unwrap()
}

fn idx(l: &[usize], g: &[usize]) -> SplitIndex {
    SplitIndex::natural(l, g).unwrap()
}

#[test]
fn t_fixes_y_symmetric_input() {
    let f = y(2, 1).add(&y(2, 2)).unwrap().mul(&e1(2)).unwrap();
    assert_eq!(sf_t_apply(1, &f).unwrap(), f);
    assert_eq!(sf_t_apply(1, &VkElement::one(2, D)).unwrap(), VkElement::one(2, D));
}

#[test]
fn t_on_y1() {
    // (t-1) y1^2 + (y2 - t y1) y2 = (y2 - y1)(y2 + (1-t) y1)
    let want = y(2, 2).add(&y(2, 1).scale(&QTRational::one_minus(0, 1))).unwrap();
    assert_eq!(sf_t_apply(1, &y(2, 1)).unwrap(), want);
    assert_eq!(sf_t_apply(1, &y(2, 2)).unwrap(), y(2, 1).scale(&QTRational::t()));
}

#[test]
fn t_quadratic_on_y1() {
    let f = y(2, 1);
    let tf = sf_t_apply(1, &f).unwrap();
    let ttf = sf_t_apply(1, &tf).unwrap();
    let tm1 = &QTRational::t() - &one();
    let z = ttf.add(&tf.scale(&tm1)).unwrap().sub(&f.scale(&QTRational::t())).unwrap();
    assert!(z.is_zero());
    assert_eq!(sf_t_inverse_apply(1, &tf).unwrap(), f);
}

#[test]
fn y_multiplication() {
    assert_eq!(sf_y_apply(1, &VkElement::one(1, D)).unwrap(), y(1, 1));
    assert_eq!(sf_y_apply(1, &e1(1)).unwrap(), e1(1).mul(&y(1, 1)).unwrap());
    let f = e1(2).add(&y(2, 2)).unwrap();
    let a = sf_y_apply(2, &sf_y_apply(1, &f).unwrap()).unwrap();
    let b = sf_y_apply(1, &sf_y_apply(2, &f).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dplus_examples() {
    assert_eq!(dplus_poly(&VkElement::one(0, D)).unwrap(), VkElement::one(1, D));
    let want = e1(1).add(&y(1, 1).scale(&(&QTRational::t() - &one()))).unwrap();
    assert_eq!(dplus_poly(&e1(0)).unwrap(), want);
    assert_eq!(dplus_poly(&VkElement::one(1, D)).unwrap(), VkElement::one(2, D));
}

#[test]
fn dminus_examples() {
    assert_eq!(dminus_poly(&VkElement::one(1, D)).unwrap(), e1(0));
    let a = dminus_poly(&dplus_poly(&e1(1)).unwrap()).unwrap();
    let b = dplus_poly(&dminus_poly(&e1(1)).unwrap()).unwrap();
    assert_ne!(a, b);
    for k in 1..3 {
        let h = build_htilde(&idx(&[], &vec![0; k]), D).unwrap();
        let down = build_htilde(&idx(&[1], &vec![0; k - 1]), D).unwrap();
        assert_eq!(dminus_poly(&h).unwrap(), *down);
    }
}

#[test]
fn chain_examples() {
    assert_eq!(e1_chain(&VkElement::one(0, D)).unwrap(), e1(0));
    assert_eq!(e1_chain(&VkElement::one(1, D)).unwrap(), e1(1));
    let f = y(2, 1).mul(&e1(2)).unwrap().add(&y(2, 2)).unwrap();
    assert_eq!(e1_chain(&f).unwrap(), e1_multiply(&f).unwrap());
}

#[test]
fn htilde_normalization() {
    for k in 0..3 {
        assert_eq!(*build_htilde(&idx(&[], &vec![0; k]), D).unwrap(), VkElement::one(k, D));
        assert_eq!(*build_htilde(&idx(&[1], &vec![0; k]), D).unwrap(), e1(k));
    }
}

#[test]
fn htilde_expansion_of_zero_one() {
    let d = 6;
    let h = build_htilde(&idx(&[], &[0, 1]), d).unwrap();
    let got = expand_htilde(&e1_multiply(&h).unwrap(), 2).unwrap();
    let t_minus_q = &QTRational::t() - &QTRational::q();
    let a = &(&QTRational::t() - &one()) / &t_minus_q;
    let b = &QTRational::one_minus(1, 0) / &t_minus_q;
    let mut want = vec![(idx(&[1], &[0, 1]), b), (idx(&[2], &[0, 0]), a)];
    want.sort_by(|x, y| x.0.cmp(&y.0));
    let mut got: Vec<_> = got.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    got.sort_by(|x, y| x.0.cmp(&y.0));
    assert_eq!(got, want);
}

#[test]
fn word_application() {
    let f = y(2, 1);
    assert_eq!(apply_word("T1", &f).unwrap(), sf_t_apply(1, &f).unwrap());
    assert_eq!(apply_word("Tinv1,T1", &f).unwrap(), f);
    assert_eq!(apply_word("d-,d+", &VkElement::one(0, D)).unwrap(), e1(0));
    assert!(apply_word("X3", &f).is_err());
}
