//! The polynomial representation `V = sum_k V_k` and the modified functions
//! `H~_(lambda|gamma)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::algebra::QTRational;
use crate::error::{Error, Result};
use crate::linalg::solve_sparse;
use crate::nonsym::longest_word;
use crate::partial::{build_j, build_jw0};
use crate::shapes::{split_indices, SplitIndex};
use crate::symfunc::{VkElement, VkKey};

/// A generator acting on `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyRepOperator {
    T(usize),
    TInv(usize),
    Y(usize),
    DMinus,
    DPlus,
}

impl PolyRepOperator {
    pub fn apply(&self, f: &VkElement) -> Result<VkElement> {
        match *self {
            PolyRepOperator::T(i) => sf_t_apply(i, f),
            PolyRepOperator::TInv(i) => sf_t_inverse_apply(i, f),
            PolyRepOperator::Y(i) => sf_y_apply(i, f),
            PolyRepOperator::DMinus => dminus_poly(f),
            PolyRepOperator::DPlus => dplus_poly(f),
        }
    }

    /// Parses `T1`, `Tinv2`, `y1`, `d-`, `d+`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |r: &str| r.parse::<usize>().map_err(|_| Error::Parse(format!("bad operator {s:?}")));
        match s {
            "d-" | "dminus" => Ok(PolyRepOperator::DMinus),
            "d+" | "dplus" => Ok(PolyRepOperator::DPlus),
            _ if s.starts_with("Tinv") => Ok(PolyRepOperator::TInv(num(&s[4..])?)),
            _ if s.starts_with('T') => Ok(PolyRepOperator::T(num(&s[1..])?)),
            _ if s.starts_with('y') => Ok(PolyRepOperator::Y(num(&s[1..])?)),
            _ => Err(Error::Parse(format!("bad operator {s:?}"))),
        }
    }
}

/// Applies a comma separated word, rightmost operator first.
pub fn apply_word(word: &str, f: &VkElement) -> Result<VkElement> {
    let ops: Vec<PolyRepOperator> = word.split(',').filter(|s| !s.trim().is_empty()).map(PolyRepOperator::parse).collect::<Result<_>>()?;
    let mut g = f.clone();
    for op in ops.iter().rev() {
        g = op.apply(&g)?;
    }
    Ok(g)
}

/// `(y^b - s_i y^b) / (y_{i+1} - y_i)` as a list of exponent vectors with signs.
fn divided_difference(b: &[u32], i: usize) -> Vec<(Vec<u32>, i64)> {
    let (a, c) = (b[i - 1], b[i]);
    if a == c {
        return Vec::new();
    }
    let (lo, len, sign) = if a > c { (c, a - c, -1) } else { (a, c - a, 1) };
    (0..len)
        .map(|j| {
            let mut e = b.to_vec();
            e[i - 1] = lo + j;
            e[i] = lo + len - 1 - j;
            (e, sign)
        })
        .collect()
}

/// `f -> s_i f + coef * y_sel (f - s_i f) / (y_{i+1} - y_i)` on the `y` block.
fn y_hecke(i: usize, f: &VkElement, coef: &QTRational, sel: usize) -> Result<VkElement> {
    let k = f.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange(i, k.saturating_sub(1)));
    }
    let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
    for ((mu, b), c) in f.terms() {
        let mut s = b.clone();
        s.swap(i - 1, i);
        acc.entry((mu.clone(), s)).or_default().push(c.clone());
        let cc = c * coef;
        for (mut e, sign) in divided_difference(b, i) {
            e[sel - 1] += 1;
            let v = if sign > 0 { cc.clone() } else { -&cc };
            acc.entry((mu.clone(), e)).or_default().push(v);
        }
    }
    VkElement::from_acc(k, f.degree_bound(), acc)
}

/// `T_i f = ((t-1) y_i f + (y_{i+1} - t y_i) s_i f) / (y_{i+1} - y_i)`.
pub fn sf_t_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    y_hecke(i, f, &(&QTRational::t() - &QTRational::one()), i)
}

/// `T_i^{-1} = t^{-1} (T_i + t - 1)`.
pub fn sf_t_inverse_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    let tf = sf_t_apply(i, f)?;
    let g = tf.add(&f.scale(&(&QTRational::t() - &QTRational::one())))?;
    Ok(g.scale(&QTRational::qt(0, -1)))
}

/// The starred Demazure-Lusztig operator on the `y` block,
/// `T*_i = s_i + (1-t) y_{i+1} (1 - s_i) / (y_{i+1} - y_i)`.
pub fn dl_star_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    y_hecke(i, f, &(&QTRational::one() - &QTRational::t()), i + 1)
}

/// `(T*_i)^{-1} = t^{-1} (T*_i + t - 1)`.
pub fn dl_star_inverse_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    let tf = dl_star_apply(i, f)?;
    let g = tf.add(&f.scale(&(&QTRational::t() - &QTRational::one())))?;
    Ok(g.scale(&QTRational::qt(0, -1)))
}

/// `w0 T*_{w0} T*_i (w0 T*_{w0})^{-1}`.
pub fn converted_t_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    let word = longest_word(f.k());
    // (w0 T*_{w0})^{-1} = T*_{w0}^{-1} w0
    let mut g = f.reverse_y();
    for &j in &word {
        g = dl_star_inverse_apply(j, &g)?;
    }
    g = dl_star_apply(i, &g)?;
    for &j in word.iter().rev() {
        g = dl_star_apply(j, &g)?;
    }
    Ok(g.reverse_y())
}

pub fn sf_y_apply(i: usize, f: &VkElement) -> Result<VkElement> {
    f.mul_y(i)
}

/// `d+ F = T_1 .. T_k F(X + (t-1) y_{k+1})`.
pub fn dplus_poly(f: &VkElement) -> Result<VkElement> {
    let k = f.k();
    let mut g = f.alphabet_shift(1, k + 1)?;
    for i in (1..=k).rev() {
        g = sf_t_apply(i, &g)?;
    }
    Ok(g)
}

/// `d- F = -[y_{k+1}^{-1}] F(X - (t-1) y_{k+1}) Omega(-y_{k+1}^{-1} X)`.
pub fn dminus_poly(f: &VkElement) -> Result<VkElement> {
    f.omega_extract()
}

/// `d- T_k^{-1} .. T_1^{-1} d+ F`. Intermediate terms may exceed the degree
/// bound of `F`; only the result is checked against it.
pub fn e1_chain(f: &VkElement) -> Result<VkElement> {
    let ydeg = f.terms().map(|((_, b), _)| b.iter().sum::<u32>() as usize).max().unwrap_or(0);
    let d = f.degree_bound();
    let wide = f.with_degree_bound(d.max(f.x_degree() + ydeg + 1))?;
    let mut g = dplus_poly(&wide)?;
    for i in 1..=f.k() {
        g = sf_t_inverse_apply(i, &g)?;
    }
    dminus_poly(&g)?.with_degree_bound(d)
}

/// `e_1(X) F` by direct multiplication.
pub fn e1_multiply(f: &VkElement) -> Result<VkElement> {
    VkElement::elementary(1, f.k(), f.degree_bound())?.mul(f)
}

static HTILDE: Lazy<DashMap<(Vec<usize>, Vec<usize>, usize, bool), Arc<VkElement>>> = Lazy::new(DashMap::new);

/// The number of `x` variables used when lifting `J_(lambda|gamma)`.
pub fn lift_variables(idx: &SplitIndex) -> usize {
    idx.size().max(idx.lambda().len())
}

/// `H~ = t^{n(sort(lambda,gamma)) + |(lambda|gamma)|} J^{w0}(X/(t^{-1}-1) | y)^*`.
pub fn build_htilde(idx: &SplitIndex, d: usize) -> Result<Arc<VkElement>> {
    htilde_impl(idx, d, true)
}

/// The same pipeline without the `w0` twist.
pub fn build_htilde_untwisted(idx: &SplitIndex, d: usize) -> Result<Arc<VkElement>> {
    htilde_impl(idx, d, false)
}

fn htilde_impl(idx: &SplitIndex, d: usize, twist: bool) -> Result<Arc<VkElement>> {
    let key = (idx.lambda().to_vec(), idx.gamma().to_vec(), d, twist);
    if let Some(h) = HTILDE.get(&key) {
        return Ok(h.clone());
    }
    if idx.size() > d {
        return Err(Error::DegreeOverflow(d));
    }
    let m = lift_variables(idx);
    let local = idx.with_m(m)?;
    let body = if twist { build_jw0(&local)?.body } else { build_j(&local)?.body };
    let lifted = VkElement::from_finite_variables(&body, m, d)?;
    let scaled = lifted.alphabet_scale(|i| {
        let den = &QTRational::qt(0, -(i as i32)) - &QTRational::one();
        den.inv().expect("nonzero")
    });
    let norm = QTRational::qt(0, (idx.n_sorted() + idx.size()) as i32);
    let h = Arc::new(scaled.star().scale(&norm));
    Ok(HTILDE.entry(key).or_insert(h).clone())
}

/// Expands `f` in `H~_c` over the given candidates. Zero coefficients are
/// dropped.
pub fn expand_in(f: &VkElement, candidates: &[SplitIndex], twist: bool) -> Result<Vec<(SplitIndex, QTRational)>> {
    let d = f.degree_bound();
    let cols: Vec<BTreeMap<VkKey, QTRational>> = candidates
        .iter()
        .map(|c| {
            let h = htilde_impl(c, d, twist)?;
            Ok(h.terms().map(|(k, v)| (k.clone(), v.clone())).collect())
        })
        .collect::<Result<_>>()?;
    let rhs: BTreeMap<VkKey, QTRational> = f.terms().map(|(k, v)| (k.clone(), v.clone())).collect();
    let x = solve_sparse(&cols, &rhs)?;
    Ok(candidates.iter().cloned().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// Expands a homogeneous `f` of total degree `size` in the `H~` basis of `V_k`.
pub fn expand_htilde(f: &VkElement, size: usize) -> Result<Vec<(SplitIndex, QTRational)>> {
    expand_in(f, &split_indices(size, f.k()), true)
}
