//! Partial Hecke symmetrization, the partially symmetric polynomials
//! `P_(lambda|gamma)`, their integral forms `J` and the `w0` twist.
//!
//! The symmetric block is `x_1..x_m`, the remaining `k` variables are the
//! `y` block.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::algebra::{QTRational, XPolynomial};
use crate::error::{Error, Result};
use crate::nonsym::{compute_e, dl_apply, dl_inverse_apply, longest_word};
use crate::shapes::{arm_a, arm_tilde, leg_of, DgBox, SplitIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    P,
    J,
    Jw0,
}

#[derive(Clone, Debug)]
pub struct PartiallySymmetricPoly {
    pub index: SplitIndex,
    pub n: usize,
    pub body: XPolynomial,
    pub form: Form,
}

/// `sum_{w in S_m} T_w f`, as the product over `r = 2..m` (left to right)
/// of the coset sums `(1 + T_{r-1} + T_{r-1}T_{r-2} + .. + T_{r-1}..T_1)`.
pub fn hecke_symmetrize(f: &XPolynomial, m: usize) -> Result<XPolynomial> {
    if m > f.nvars() {
        return Err(Error::IndexOutOfRange(m, f.nvars()));
    }
    let mut g = f.clone();
    for r in (2..=m).rev() {
        let mut acc = g.clone();
        for j in 1..r {
            acc = g.add(&dl_apply(j, &acc)?)?;
        }
        g = acc;
    }
    Ok(g)
}

/// `[1]_t [2]_t .. [c]_t`.
fn t_factorial(c: usize) -> QTRational {
    let mut out = QTRational::one();
    let mut qint = QTRational::zero();
    for i in 0..c {
        qint = &qint + &QTRational::qt(0, i as i32);
        out = &out * &qint;
    }
    out
}

/// Poincare polynomial of the stabilizer of a composition.
pub fn stabilizer_poincare(lambda: &[usize]) -> QTRational {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in lambda {
        *mult.entry(v).or_insert(0) += 1;
    }
    mult.values().fold(QTRational::one(), |acc, &c| &acc * &t_factorial(c))
}

static P_CACHE: Lazy<DashMap<(Vec<usize>, usize), Arc<XPolynomial>>> = Lazy::new(DashMap::new);

/// `P_(lambda|gamma)` in `n = m + k` variables, `m` taken from `idx`.
pub fn build_p(idx: &SplitIndex) -> Result<PartiallySymmetricPoly> {
    let full = idx.full();
    let key = (full.clone(), idx.m());
    let body = if let Some(b) = P_CACHE.get(&key) {
        b.clone()
    } else {
        let e = compute_e(&full);
        let s = hecke_symmetrize(&e, idx.m())?;
        let inv = stabilizer_poincare(&idx.lambda_padded()).inv()?;
        let b = Arc::new(s.scalar_mul(&inv));
        P_CACHE.entry(key).or_insert(b).clone()
    };
    Ok(PartiallySymmetricPoly { index: idx.clone(), n: idx.n(), body: (*body).clone(), form: Form::P })
}

/// `j_(lambda|gamma)`, statistics in `dg(lambda^- | gamma)`.
pub fn j_scalar(idx: &SplitIndex) -> QTRational {
    let nu = idx.minus();
    let m = idx.m();
    let mut out = QTRational::one();
    for (i, &h) in nu.iter().enumerate() {
        for j in 1..=h {
            let b = DgBox::new(i + 1, j);
            let l = leg_of(&nu, b) as i32;
            let f = if i < m {
                QTRational::one_minus(l, arm_tilde(&nu, b) as i32 + 1)
            } else {
                QTRational::one_minus(l + 1, arm_a(&nu, b) as i32 + 1)
            };
            out = &out * &f;
        }
    }
    out
}

/// `J = j P`, with the integrality check.
pub fn build_j(idx: &SplitIndex) -> Result<PartiallySymmetricPoly> {
    let p = build_p(idx)?;
    let body = p.body.scalar_mul(&j_scalar(idx));
    for (_, c) in body.terms() {
        if !is_integral_poly(c) {
            return Err(Error::NotIntegral(idx.to_string(), c.canonical_string()));
        }
    }
    Ok(PartiallySymmetricPoly { index: idx.clone(), n: p.n, body, form: Form::J })
}

/// A polynomial in `q, t` with integer coefficients.
pub fn is_integral_poly(c: &QTRational) -> bool {
    if !c.is_integral() {
        return false;
    }
    let (num, den) = c.parts();
    den.is_one() && num.terms().iter().all(|(m, _)| m.0 >= 0 && m.1 >= 0 && m.1 % 2 == 0)
}

/// The two coefficients of `T_{m+i} J_(lambda|gamma)` for `gamma_i > gamma_{i+1}`
/// (1-based `i`): `J_(lambda|s_i gamma)` first, then `J_(lambda|gamma)`.
pub fn tj_action(i: usize, idx: &SplitIndex) -> Result<((SplitIndex, QTRational), (SplitIndex, QTRational))> {
    let g = idx.gamma();
    if i == 0 || i >= g.len() {
        return Err(Error::IndexOutOfRange(i, g.len()));
    }
    if g[i - 1] <= g[i] {
        return Err(Error::InvalidIndexSet(format!("gamma_{i} <= gamma_{} in {idx}", i + 1)));
    }
    let (l, a) = tj_arm_leg(i, idx);
    let den = QTRational::one_minus(l + 1, a);
    let c1 = &QTRational::one_minus(l + 1, a + 1) / &den;
    let c2 = -(&QTRational::one_minus(0, 1) / &den);
    let mut sg = g.to_vec();
    sg.swap(i - 1, i);
    let swapped = SplitIndex::new(idx.lambda(), &sg, idx.m())?;
    Ok(((swapped, c1), (idx.clone(), c2)))
}

/// `(l(u), a(u))` for `u = (m+i, gamma_{i+1}+1)` in `dg(lambda^- | gamma)`.
pub fn tj_arm_leg(i: usize, idx: &SplitIndex) -> (i32, i32) {
    let nu = idx.minus();
    let u = DgBox::new(idx.m() + i, idx.gamma()[i] + 1);
    (leg_of(&nu, u) as i32, arm_a(&nu, u) as i32)
}

/// `P_(lambda,0|gamma)` with the extra symmetric variables set to zero
/// against `P_(lambda|gamma)` in `m` symmetric variables.
pub fn stability_probe(idx: &SplitIndex, m: usize, m_plus: usize) -> Result<bool> {
    if m_plus <= m || m < idx.lambda().len() {
        return Err(Error::InvalidIndexSet(format!("need m_plus > m >= len(lambda), got {m}, {m_plus}")));
    }
    let small = build_p(&idx.with_m(m)?)?.body;
    let big = build_p(&idx.with_m(m_plus)?)?.body;
    let zero: Vec<usize> = (m + 1..=m_plus).collect();
    Ok(big.drop_zero_variables(&zero) == small)
}

/// `t^{-l(w0)} w0 T_{w0}` on the last `k` variables.
pub fn w0_twist(f: &XPolynomial, k: usize) -> Result<XPolynomial> {
    if k <= 1 {
        return Ok(f.clone());
    }
    let n = f.nvars();
    let m = n - k;
    let word = longest_word(k);
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = dl_apply(m + i, &g)?;
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    for j in 0..k {
        sigma[m + j] = n - 1 - j;
    }
    let g = g.permute_variables(&sigma)?;
    Ok(g.scalar_mul(&QTRational::qt(0, -(word.len() as i32))))
}

/// Inverse of [`w0_twist`].
pub fn w0_untwist(f: &XPolynomial, k: usize) -> Result<XPolynomial> {
    if k <= 1 {
        return Ok(f.clone());
    }
    let n = f.nvars();
    let m = n - k;
    let word = longest_word(k);
    let mut sigma: Vec<usize> = (0..n).collect();
    for j in 0..k {
        sigma[m + j] = n - 1 - j;
    }
    let mut g = f.permute_variables(&sigma)?;
    for &i in &word {
        g = dl_inverse_apply(m + i, &g)?;
    }
    Ok(g.scalar_mul(&QTRational::qt(0, word.len() as i32)))
}

/// `J^{w0}` in finite variables.
pub fn build_jw0(idx: &SplitIndex) -> Result<PartiallySymmetricPoly> {
    let j = build_j(idx)?;
    let body = w0_twist(&j.body, idx.k())?;
    Ok(PartiallySymmetricPoly { index: idx.clone(), n: j.n, body, form: Form::Jw0 })
}
