use psmac_core::fixedpoints::*;
use psmac_core::shapes::fixed_points;
use psmac_core::{FixedPointLabel, PlaneBox, QTRational};

fn label(xi: &str, w: &str) -> FixedPointLabel {
    FixedPointLabel::parse(xi, w).unwrap()
}

fn basis(xi: &str, w: &str) -> FixedPointVector {
    FixedPointVector::basis(label(xi, w)).unwrap()
}

fn h(xi: &str, w: &str) -> FixedPointVector {
    let l = label(xi, w);
    let s = h_scalar(&l.xi);
    FixedPointVector::basis(l).unwrap().scale(&s)
}

fn vector(k: usize, terms: Vec<(FixedPointLabel, QTRational)>) -> FixedPointVector {
    FixedPointVector::from_terms(k, terms).unwrap()
}

fn q() -> QTRational {
    QTRational::q()
}

fn t() -> QTRational {
    QTRational::t()
}

fn one() -> QTRational {
    QTRational::one()
}

#[test]
fn pieri_d_on_empty() {
    assert!(macdonald_pieri_d(&[], PlaneBox::new(0, 0)).unwrap().is_one());
    assert!(macdonald_pieri_d(&[1], PlaneBox::new(1, 1)).is_err());
}

#[test]
fn dplus_examples() {
    let got = dplus_geom(&basis("2,1", "t,q")).unwrap();
    let want = basis("3,1", "t^2,t,q").scale(&-&QTRational::qt(0, 2));
    assert_eq!(got, want);
    let got = dplus_geom(&FixedPointVector::basis(FixedPointLabel::new(&[], &[]).unwrap()).unwrap()).unwrap();
    assert_eq!(got, basis("1", "1").scale(&-&one()));
}

#[test]
fn dminus_examples() {
    assert_eq!(dminus_geom(&basis("3,1", "t^2,t,q")).unwrap(), basis("3,1", "t^2,t"));
    let v = basis("2,1", "t,q").add(&basis("2,1", "q,t").scale(&q())).unwrap();
    assert_eq!(dminus_geom(&v).unwrap().len(), 2);
    let empty = FixedPointVector::basis(FixedPointLabel::new(&[], &[]).unwrap()).unwrap();
    let got = dminus_geom(&dplus_geom(&empty).unwrap()).unwrap();
    assert_eq!(got, FixedPointVector::basis(FixedPointLabel::new(&[1], &[]).unwrap()).unwrap().scale(&-&one()));
}

#[test]
fn t_inverse_examples() {
    let v = basis("3,1", "t^2,t,q");
    assert_eq!(tgeom_apply(1, &v, true).unwrap(), v);
    let tq = &t() - &q();
    let want = vector(3, vec![
        (label("3,1", "t^2,t,q"), &(&t() - &one()) / &tq),
        (label("3,1", "t^2,q,t"), &QTRational::one_minus(1, 0) / &tq),
    ]);
    assert_eq!(tgeom_apply(2, &v, true).unwrap(), want);
    assert!(tgeom_apply(3, &v, true).is_err());
}

#[test]
fn h_scalars() {
    assert_eq!(h_scalar(&[2, 1]), -&QTRational::qt(1, 1));
    assert_eq!(h_scalar(&[3, 1]), QTRational::qt(1, 3));
    assert!(h_scalar(&[]).is_one());
    let v = basis("2,1", "t,q");
    assert_eq!(v.to_h_basis().from_h_basis(), v);
    assert_eq!(h("2,1", "t,q").to_h_basis(), v);
}

#[test]
fn chain_example() {
    let v = h("2,1", "t,q");
    let up = dplus_geom(&v).unwrap();
    assert_eq!(up, h("3,1", "t^2,t,q").scale(&(&h_scalar(&[2, 1]) / &h_scalar(&[3, 1]))).scale(&-&QTRational::qt(0, 2)));
    let got = e1_chain_geom(&v).unwrap().to_h_basis();
    let tq = &t() - &q();
    let want = vector(2, vec![
        (label("3,1", "t^2,t"), &(&t() - &one()) / &tq),
        (label("3,1", "t^2,q"), &QTRational::one_minus(1, 0) / &tq),
    ]);
    assert_eq!(got, want);
    assert_eq!(apply_geom_word("d-,T2inv,T1inv,d+", &v).unwrap(), e1_chain_geom(&v).unwrap());
}

#[test]
fn y2_example() {
    let got = y2_geom(&h("2,1", "q,t")).unwrap().to_h_basis();
    let t2 = QTRational::qt(0, 2);
    let want = vector(2, vec![
        (label("2,2", "q*t,q"), (&t() - &q()).inv().unwrap()),
        (label("3,1", "t^2,q"), &(&(&t() - &one()) * &t()) / &(&(&q() - &t()) * &(&t2 - &q()))),
        (label("3,1", "q,t^2"), (&q() - &t2).inv().unwrap()),
    ]);
    assert_eq!(got, want);
    let a = h("2,1", "q,t");
    let b = h("2,1", "t,q").scale(&q());
    let sum = y2_geom(&a.add(&b).unwrap()).unwrap();
    assert_eq!(sum, y2_geom(&a).unwrap().add(&y2_geom(&b).unwrap()).unwrap());
}

#[test]
fn hecke_relations_on_small_bases() {
    let tm1 = &t() - &one();
    for size in 0..=5 {
        for k in 2..=3 {
            for l in fixed_points(size, k) {
                let v = FixedPointVector::basis(l.clone()).unwrap();
                for i in 1..k {
                    let a = tgeom_apply(i, &v, false).unwrap();
                    let aa = tgeom_apply(i, &a, false).unwrap();
                    let z = aa.add(&a.scale(&tm1)).unwrap().sub(&v.scale(&t())).unwrap();
                    assert!(z.is_zero(), "quadratic {l} T{i}");
                    assert_eq!(tgeom_apply(i, &a, true).unwrap(), v, "inverse {l} T{i}");
                }
                if k == 3 {
                    let w = |s: &[usize]| {
                        s.iter().try_fold(v.clone(), |g, &i| tgeom_apply(i, &g, false)).unwrap()
                    };
                    assert_eq!(w(&[1, 2, 1]), w(&[2, 1, 2]), "braid {l}");
                }
            }
        }
    }
}
