//! The geometric representation on fixed-point classes `[I_(mu,w)]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{sum_all, QTRational};
use crate::error::{Error, Result};
use crate::shapes::{add_box, addable_boxes, n_stat, plane_arm, plane_leg, transpose, FixedPointLabel, PlaneBox};

/// A finite combination of fixed-point classes with a common `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct FixedPointVector {
    k: usize,
    terms: BTreeMap<FixedPointLabel, QTRational>,
}

impl FixedPointVector {
    pub fn zero(k: usize) -> Self {
        FixedPointVector { k, terms: BTreeMap::new() }
    }

    pub fn basis(label: FixedPointLabel) -> Result<Self> {
        label.validate()?;
        let k = label.k();
        Ok(FixedPointVector { k, terms: BTreeMap::from([(label, QTRational::one())]) })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FixedPointLabel, &QTRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, label: &FixedPointLabel) -> QTRational {
        self.terms.get(label).cloned().unwrap_or_else(QTRational::zero)
    }

    /// Builds a vector, merging repeated labels. Every label with a nonzero
    /// coefficient must be valid and have length `k`.
    pub fn from_terms<I: IntoIterator<Item = (FixedPointLabel, QTRational)>>(k: usize, it: I) -> Result<Self> {
        let mut acc: BTreeMap<FixedPointLabel, Vec<QTRational>> = BTreeMap::new();
        for (l, c) in it {
            acc.entry(l).or_default().push(c);
        }
        let mut terms = BTreeMap::new();
        for (l, v) in acc {
            let c = sum_all(v);
            if c.is_zero() {
                continue;
            }
            if l.k() != k {
                return Err(Error::VariableMismatch(k, l.k()));
            }
            l.validate()?;
            terms.insert(l, c);
        }
        Ok(FixedPointVector { k, terms })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::VariableMismatch(self.k, o.k));
        }
        Self::from_terms(self.k, self.terms.iter().chain(o.terms.iter()).map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&QTRational::from_int(-1)))
    }

    pub fn scale(&self, c: &QTRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        FixedPointVector { k: self.k, terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect() }
    }

    /// Coefficients with respect to the `H` basis, given coefficients in the
    /// `[I]` basis.
    pub fn to_h_basis(&self) -> Self {
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c / &h_scalar(&l.xi))).collect();
        FixedPointVector { k: self.k, terms }
    }

    /// Inverse of [`to_h_basis`](Self::to_h_basis).
    pub fn from_h_basis(&self) -> Self {
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c * &h_scalar(&l.xi))).collect();
        FixedPointVector { k: self.k, terms }
    }

    pub fn to_json_rows(&self) -> Vec<FixedPointJsonRow> {
        self.terms
            .iter()
            .map(|(l, c)| FixedPointJsonRow {
                xi: l.xi.clone(),
                w: l.weights().iter().map(|w| w.pretty()).collect(),
                coeff: c.canonical_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointJsonRow {
    pub xi: Vec<usize>,
    pub w: Vec<String>,
    pub coeff: String,
}

impl fmt::Debug for FixedPointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FixedPointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({})[{}]", c.pretty(), l)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H_(mu,w) = (-1)^|mu| q^{n(mu)} t^{n(mu')} [I_(mu,w)]`.
pub fn h_scalar(xi: &[usize]) -> QTRational {
    let sign = if xi.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
    &QTRational::from_int(sign) * &QTRational::qt(n_stat(xi) as i32, n_stat(&transpose(xi)) as i32)
}

/// `t^a - q^b` for integer exponents.
fn t_minus_q(a: i64, b: i64) -> QTRational {
    &QTRational::qt(0, a as i32) - &QTRational::qt(b as i32, 0)
}

/// The Macdonald-Pieri coefficient `d_{xi+x, xi}`.
pub fn macdonald_pieri_d(xi: &[usize], x: PlaneBox) -> Result<QTRational> {
    if !addable_boxes(xi).contains(&x) {
        return Err(Error::BoxOutside((x.c, x.r)));
    }
    let mut out = QTRational::one();
    for c in 0..x.c {
        let b = PlaneBox::new(c, x.r);
        let (a, l) = (plane_arm(xi, b), plane_leg(xi, b));
        out = &out * &(&t_minus_q(a, l + 1) / &t_minus_q(a + 1, l + 1));
    }
    for r in 0..x.r {
        let b = PlaneBox::new(x.c, r);
        let (a, l) = (plane_arm(xi, b), plane_leg(xi, b));
        out = &out * &(&t_minus_q(a + 1, l) / &t_minus_q(a + 1, l + 1));
    }
    Ok(out)
}

/// `d+ [I_(mu,w)] = -t^k sum_x x d_{mu+x,mu} prod_i (x - q w_i)/(x - q t w_i) [I_(mu+x, xw)]`.
pub fn dplus_geom(v: &FixedPointVector) -> Result<FixedPointVector> {
    let k = v.k;
    let mut out = Vec::new();
    for (label, c) in &v.terms {
        let ws = label.weights();
        for x in addable_boxes(&label.xi) {
            let xw = x.weight();
            let mut coef = &(&(-&QTRational::qt(0, k as i32)) * &xw) * &macdonald_pieri_d(&label.xi, x)?;
            for w in &ws {
                let num = &xw - &(&QTRational::q() * w);
                let den = &xw - &(&QTRational::qt(1, 1) * w);
                coef = &coef * &num.checked_div(&den)?;
            }
            if coef.is_zero() {
                continue;
            }
            let mut w = vec![x];
            w.extend_from_slice(&label.w);
            let target = FixedPointLabel { xi: add_box(&label.xi, x), w };
            if let Err(e) = target.validate() {
                return Err(Error::InvalidLabel(format!("d+ reached {target} with nonzero coefficient: {e}")));
            }
            out.push((target, &coef * c));
        }
    }
    FixedPointVector::from_terms(k + 1, out)
}

/// `d- [I_(mu, wx)] = [I_(mu, w)]`.
pub fn dminus_geom(v: &FixedPointVector) -> Result<FixedPointVector> {
    if v.k == 0 {
        return Err(Error::IndexOutOfRange(1, 0));
    }
    let out = v.terms.iter().map(|(l, c)| {
        let mut w = l.w.clone();
        w.pop();
        (FixedPointLabel { xi: l.xi.clone(), w }, c.clone())
    });
    FixedPointVector::from_terms(v.k - 1, out)
}

/// `T_i` (or its inverse) on fixed-point classes, 1-based `i`.
pub fn tgeom_apply(i: usize, v: &FixedPointVector, inverse: bool) -> Result<FixedPointVector> {
    if i == 0 || i >= v.k {
        return Err(Error::IndexOutOfRange(i, v.k.saturating_sub(1)));
    }
    let t = QTRational::t();
    let one = QTRational::one();
    let mut out = Vec::new();
    for (label, c) in &v.terms {
        let wi = label.w[i - 1].weight();
        let wj = label.w[i].weight();
        let den = &wi - &wj;
        let (same, swap) = if inverse {
            let tinv = QTRational::qt(0, -1);
            (&(&(&one - &tinv) * &wi) / &den, &(&(&tinv * &wi) - &wj) / &den)
        } else {
            (&(&(&t - &one) * &wj) / &den, &(&wi - &(&t * &wj)) / &den)
        };
        out.push((label.clone(), &same * c));
        if !swap.is_zero() {
            let s = label.swapped(i - 1);
            if let Err(e) = s.validate() {
                return Err(Error::InvalidLabel(format!("T{i} reached {s} with nonzero coefficient: {e}")));
            }
            out.push((s, &swap * c));
        }
    }
    FixedPointVector::from_terms(v.k, out)
}

/// `d- T_k^{-1} .. T_1^{-1} d+`.
pub fn e1_chain_geom(v: &FixedPointVector) -> Result<FixedPointVector> {
    let mut g = dplus_geom(v)?;
    for i in 1..=v.k {
        g = tgeom_apply(i, &g, true)?;
    }
    dminus_geom(&g)
}

/// `y_2 = T_1^{-1} phi` with `(t-1) phi = d+ d- - d- d+`, on `k = 2`.
pub fn y2_geom(v: &FixedPointVector) -> Result<FixedPointVector> {
    if v.k != 2 {
        return Err(Error::VariableMismatch(2, v.k));
    }
    let a = dplus_geom(&dminus_geom(v)?)?;
    let b = dminus_geom(&dplus_geom(v)?)?;
    let phi = a.sub(&b)?.scale(&(&QTRational::t() - &QTRational::one()).inv()?);
    tgeom_apply(1, &phi, true)
}

/// Applies a comma separated word (`d+`, `d-`, `T1`, `T1inv`, `y2`),
/// rightmost first.
pub fn apply_geom_word(word: &str, v: &FixedPointVector) -> Result<FixedPointVector> {
    let mut g = v.clone();
    for op in word.split(',').map(str::trim).filter(|s| !s.is_empty()).rev() {
        let op = op.trim_start_matches('-');
        g = match op {
            "d+" | "dplus" => dplus_geom(&g)?,
            "d-" | "dminus" => dminus_geom(&g)?,
            "y2" => y2_geom(&g)?,
            _ if op.starts_with('T') => {
                let inverse = op.ends_with("inv");
                let digits = op[1..].trim_end_matches("inv");
                let i = digits.parse().map_err(|_| Error::Parse(format!("bad operator {op:?}")))?;
                tgeom_apply(i, &g, inverse)?
            }
            _ => return Err(Error::Parse(format!("bad operator {op:?}"))),
        };
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(xi: &str, w: &str) -> FixedPointLabel {
        FixedPointLabel::parse(xi, w).unwrap()
    }

    fn basis(xi: &str, w: &str) -> FixedPointVector {
        FixedPointVector::basis(label(xi, w)).unwrap()
    }

    #[test]
    fn dplus_example() {
        let v = basis("2,1", "t,q");
        let got = dplus_geom(&v).unwrap();
        let want = basis("3,1", "t^2,t,q").scale(&-&QTRational::qt(0, 2));
        assert_eq!(got, want);
        assert_eq!(dplus_geom(&basis("", "")).unwrap(), basis("1", "1").scale(&QTRational::from_int(-1)));
    }

    #[test]
    fn chain_example() {
        let v = basis("3,1", "t^2,t,q");
        assert_eq!(tgeom_apply(1, &v, true).unwrap(), v);
        let t = QTRational::t();
        let q = QTRational::q();
        let got = tgeom_apply(2, &v, true).unwrap();
        let want = v
            .scale(&(&(&t - &QTRational::one()) / &(&t - &q)))
            .add(&basis("3,1", "t^2,q,t").scale(&(&(&QTRational::one() - &q) / &(&t - &q))))
            .unwrap();
        assert_eq!(got, want);
        let src = basis("2,1", "t,q").scale(&h_scalar(&[2, 1]));
        let got = e1_chain_geom(&src).unwrap().to_h_basis();
        let want = FixedPointVector::from_terms(
            2,
            [
                (label("3,1", "t^2,t"), &(&t - &QTRational::one()) / &(&t - &q)),
                (label("3,1", "t^2,q"), &(&QTRational::one() - &q) / &(&t - &q)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn h_scalars() {
        assert_eq!(h_scalar(&[2, 1]), -&QTRational::qt(1, 1));
        assert_eq!(h_scalar(&[3, 1]), QTRational::qt(1, 3));
        assert!(h_scalar(&[]).is_one());
    }

    #[test]
    fn y2_example() {
        let src = basis("2,1", "q,t").scale(&h_scalar(&[2, 1]));
        let got = y2_geom(&src).unwrap().to_h_basis();
        let t = QTRational::t();
        let q = QTRational::q();
        let one = QTRational::one();
        let t2 = QTRational::qt(0, 2);
        let want = FixedPointVector::from_terms(
            2,
            [
                (label("2,2", "q*t,q"), &one / &(&t - &q)),
                (label("3,1", "t^2,q"), &(&(&t - &one) * &t) / &(&(&q - &t) * &(&t2 - &q))),
                (label("3,1", "q,t^2"), &one / &(&q - &t2)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
    }
}
