use psmac_core::shapes::*;
use psmac_core::{FixedPointLabel, PlaneBox, QTRational, SplitIndex};

const NU: [usize; 7] = [1, 3, 2, 1, 3, 0, 1];

fn idx(l: &[usize], g: &[usize]) -> SplitIndex {
    SplitIndex::natural(l, g).unwrap()
}

fn label(xi: &str, w: &str) -> FixedPointLabel {
    FixedPointLabel::parse(xi, w).unwrap()
}

#[test]
fn legs_in_the_diagram_example() {
    assert_eq!(leg(&NU, DgBox::new(3, 1)).unwrap(), 1);
    assert_eq!(leg(&NU, DgBox::new(2, 1)).unwrap(), 2);
    for (i, &h) in NU.iter().enumerate() {
        if h > 0 {
            assert_eq!(leg(&NU, DgBox::new(i + 1, h)).unwrap(), 0);
        }
    }
    assert!(leg(&NU, DgBox::new(6, 1)).is_err());
}

#[test]
fn arms_in_the_diagram_example() {
    // the formula also counts column 7, one more than the picture
    assert_eq!(arm(&NU, DgBox::new(3, 1), ArmVariant::A).unwrap(), 4);
    assert_eq!(arm(&NU, DgBox::new(2, 1), ArmVariant::ATilde).unwrap(), 4);
    for j in 1..=5 {
        assert_eq!(arm(&[5], DgBox::new(1, j), ArmVariant::A).unwrap(), 0);
        assert_eq!(arm(&[5], DgBox::new(1, j), ArmVariant::ATilde).unwrap(), 0);
    }
}

#[test]
fn spectral_vectors() {
    assert_eq!(spectral_vector(&[0, 0, 0, 0]), vec![(0, -3), (0, -2), (0, -1), (0, 0)]);
    assert_eq!(spectral_vector(&[2, 1, 1, 1, 3]), vec![(2, -1), (1, -4), (1, -3), (1, -2), (3, 0)]);
    assert_eq!(spectral_vector(&[3]), vec![(3, 0)]);
}

#[test]
fn sorting_and_n() {
    assert_eq!(sort_and_n(&[0, 1]), (vec![1, 0], 0));
    assert_eq!(sort_and_n(&[1, 0, 1]), (vec![1, 1, 0], 1));
    assert_eq!(n_stat(&transpose(&[3, 1])), 3);
    assert_eq!(transpose(&[3, 1]), vec![2, 1, 1]);
}

#[test]
fn cyclic_shifts() {
    assert_eq!(c_i_shift(&[1, 1, 3], &[2]).unwrap(), vec![1, 2, 3]);
    assert_eq!(c_i_shift(&[1, 1, 3], &[1, 3]).unwrap(), vec![3, 1, 2]);
    assert_eq!(c_i_shift(&[4, 0, 2], &[3]).unwrap(), vec![4, 0, 3]);
    assert!(c_i_shift(&[1, 1, 3], &[3, 1]).is_err());
    assert!(c_i_shift(&[1, 1, 3], &[]).is_err());
}

#[test]
fn phi_examples() {
    assert_eq!(phi(&label("2,1", "t,q")).unwrap(), idx(&[], &[0, 1]));
    assert_eq!(phi(&label("2,1", "q,t")).unwrap(), idx(&[], &[1, 0]));
    for k in 1..=4 {
        let w: Vec<PlaneBox> = (0..k).rev().map(|c| PlaneBox::new(c, 0)).collect();
        let l = FixedPointLabel::new(&[k], &w).unwrap();
        assert_eq!(phi(&l).unwrap(), idx(&[], &vec![0; k]));
        assert_eq!(phi_inverse(&idx(&[], &vec![0; k])), l);
    }
}

#[test]
fn phi_inverse_examples() {
    assert_eq!(phi_inverse(&idx(&[], &[0, 1])), label("2,1", "t,q"));
    let target = phi_inverse(&idx(&[1], &[0, 1]));
    assert_eq!(target, label("3,1", "t^2,q"));
    assert!(target.validate().is_ok());
}

fn sorted(v: Vec<QTRational>) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|c| c.canonical_string()).collect();
    s.sort();
    s
}

fn weights(b: &[PlaneBox]) -> Vec<String> {
    sorted(b.iter().map(|b| b.weight()).collect())
}

#[test]
fn addable_corners() {
    assert_eq!(addable_boxes(&[]), vec![PlaneBox::new(0, 0)]);
    let w = weights(&addable_boxes(&[2, 1]));
    assert_eq!(w, sorted(vec![QTRational::qt(2, 0), QTRational::qt(1, 1), QTRational::qt(0, 2)]));
    for n in 1..5 {
        let w = weights(&addable_boxes(&[n]));
        assert_eq!(w, sorted(vec![QTRational::q(), QTRational::qt(0, n as i32)]));
    }
}

#[test]
fn labels_reject_non_strips() {
    // two boxes in the same column
    assert!(FixedPointLabel::parse("2,2", "q*t,t").is_err());
    // a box that is not a corner
    assert!(FixedPointLabel::parse("2,1", "1").is_err());
    assert!(FixedPointLabel::parse("2,1", "q,t").is_ok());
}

#[test]
fn index_counts_agree() {
    for k in 0..=3 {
        for size in k..=7 {
            assert_eq!(fixed_points(size, k).len(), split_indices(size - k, k).len(), "size {size} k {k}");
        }
    }
}

#[test]
fn split_index_text() {
    let s = SplitIndex::parse("2,1;0,3", None).unwrap();
    assert_eq!(s, idx(&[2, 1], &[0, 3]));
    assert_eq!(s.to_string(), "(2,1|0,3)");
    assert_eq!(s.size(), 6);
    assert!(SplitIndex::parse("1,2;0", None).is_err());
}
