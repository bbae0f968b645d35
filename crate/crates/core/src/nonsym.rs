//! Demazure-Lusztig operators and nonsymmetric Macdonald polynomials.
//!
//! `E_nu` is built from `E_0 = 1` by two moves. A composition with an
//! ascent `nu_i < nu_{i+1}` comes from `s_i nu` through
//! `E_nu = (T_i + (1-t)/(1-q^{l+1} t^a)) E_{s_i nu}`. A partition `tau`
//! with `tau_1 > 0` comes from `nu = (tau_2, .., tau_n, tau_1 - 1)` through
//! `E_tau(x) = q^{nu_n} x_1 E_nu(x_2, .., x_n, q^{-1} x_1)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::algebra::{Exponents, QTRational, XPolynomial};
use crate::error::{Error, Result};
use crate::shapes::{arm_a, DgBox};

/// Which contiguous block of variables the operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DLOperatorContext {
    pub n: usize,
    /// 0-based position of the first variable of the block.
    pub offset: usize,
    pub len: usize,
}

impl DLOperatorContext {
    pub fn full(n: usize) -> Self {
        DLOperatorContext { n, offset: 0, len: n }
    }

    pub fn block(n: usize, offset: usize, len: usize) -> Self {
        DLOperatorContext { n, offset, len }
    }

    fn global(&self, i: usize) -> Result<usize> {
        if i == 0 || i >= self.len {
            return Err(Error::IndexOutOfRange(i, self.len));
        }
        Ok(self.offset + i)
    }

    pub fn apply(&self, i: usize, f: &XPolynomial) -> Result<XPolynomial> {
        dl_apply(self.global(i)?, f)
    }

    pub fn apply_inverse(&self, i: usize, f: &XPolynomial) -> Result<XPolynomial> {
        dl_inverse_apply(self.global(i)?, f)
    }

    pub fn apply_word(&self, word: &[usize], f: &XPolynomial) -> Result<XPolynomial> {
        check_reduced(word, self.len)?;
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.apply(i, &g)?;
        }
        Ok(g)
    }
}

/// `T_i f = t s_i f + (t-1) x_{i+1} (f - s_i f)/(x_{i+1} - x_i)`, 1-based `i`.
pub fn dl_apply(i: usize, f: &XPolynomial) -> Result<XPolynomial> {
    let n = f.nvars();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(i, n));
    }
    let t = QTRational::t();
    let tm1 = &t - &QTRational::one();
    let (a_ix, b_ix) = (i - 1, i);
    let mut acc: BTreeMap<Exponents, Vec<QTRational>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let (a, b) = (e[a_ix], e[b_ix]);
        let mut s = e.clone();
        s.swap(a_ix, b_ix);
        acc.entry(s).or_default().push(c * &t);
        if a == b {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let ctm = if a > b { -(c * &tm1) } else { c * &tm1 };
        // x_{i+1} * x_i^lo x_{i+1}^lo * sum_j x_i^j x_{i+1}^{hi-lo-1-j}
        for j in 0..hi - lo {
            let mut g = e.clone();
            g[a_ix] = lo + j;
            g[b_ix] = lo + (hi - lo - 1 - j) + 1;
            acc.entry(g).or_default().push(ctm.clone());
        }
    }
    Ok(XPolynomial::collect(n, acc))
}

/// `T_i^{-1} = t^{-1}(T_i + 1 - t)`.
pub fn dl_inverse_apply(i: usize, f: &XPolynomial) -> Result<XPolynomial> {
    let tf = dl_apply(i, f)?;
    let one_minus_t = QTRational::one_minus(0, 1);
    let g = tf.add(&f.scalar_mul(&one_minus_t))?;
    Ok(g.scalar_mul(&QTRational::qt(0, -1)))
}

/// Permutation (one-line, 0-based) of a word `s_{i_1} .. s_{i_l}`.
pub fn word_permutation(word: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    for &i in word {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(i, n));
        }
        p.swap(i - 1, i);
    }
    Ok(p)
}

pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn check_reduced(word: &[usize], n: usize) -> Result<()> {
    let p = word_permutation(word, n)?;
    if inversions(&p) != word.len() {
        return Err(Error::NotReduced(word.to_vec()));
    }
    Ok(())
}

/// `T_{i_1} .. T_{i_l} f` for a reduced word.
pub fn t_word_apply(word: &[usize], f: &XPolynomial) -> Result<XPolynomial> {
    DLOperatorContext::full(f.nvars()).apply_word(word, f)
}

/// A reduced word for the longest element of `S_n`.
pub fn longest_word(n: usize) -> Vec<usize> {
    let mut w = Vec::new();
    for top in (1..n).rev() {
        for i in 1..=top {
            w.push(i);
        }
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AscentChoice {
    First,
    Last,
}

static E_CACHE: Lazy<DashMap<Vec<usize>, Arc<XPolynomial>>> = Lazy::new(DashMap::new);

/// `E_nu` in `len(nu)` variables, memoized.
pub fn compute_e(nu: &[usize]) -> Arc<XPolynomial> {
    if let Some(e) = E_CACHE.get(nu) {
        return e.clone();
    }
    let e = Arc::new(build_e(nu, AscentChoice::First, &mut |m| compute_e(m)));
    E_CACHE.entry(nu.to_vec()).or_insert(e).clone()
}

/// `E_nu` through a private memo, resolving ascents in the given order.
pub fn compute_e_with(nu: &[usize], choice: AscentChoice) -> XPolynomial {
    fn go(nu: &[usize], choice: AscentChoice, memo: &mut HashMap<Vec<usize>, Arc<XPolynomial>>) -> Arc<XPolynomial> {
        if let Some(e) = memo.get(nu) {
            return e.clone();
        }
        let mut local: HashMap<Vec<usize>, Arc<XPolynomial>> = std::mem::take(memo);
        let e = Arc::new(build_e(nu, choice, &mut |m| go(m, choice, &mut local)));
        *memo = local;
        memo.insert(nu.to_vec(), e.clone());
        e
    }
    let mut memo = HashMap::new();
    (*go(nu, choice, &mut memo)).clone()
}

/// `(1-t)/(1-q^{l+1} t^a)` for the box `(i, mu_{i+1}+1)` of `dg(mu)`,
/// where `mu_i > mu_{i+1}` (1-based `i`).
pub fn hecke_ratio(mu: &[usize], i: usize) -> QTRational {
    let b = DgBox::new(i, mu[i] + 1);
    let l = mu[i - 1] - mu[i] - 1;
    let a = arm_a(mu, b);
    &QTRational::one_minus(0, 1) / &QTRational::one_minus(l as i32 + 1, a as i32)
}

fn build_e(nu: &[usize], choice: AscentChoice, rec: &mut dyn FnMut(&[usize]) -> Arc<XPolynomial>) -> XPolynomial {
    let n = nu.len();
    if nu.iter().all(|&v| v == 0) {
        return XPolynomial::one(n);
    }
    let ascents: Vec<usize> = (1..n).filter(|&i| nu[i - 1] < nu[i]).collect();
    let pick = match choice {
        AscentChoice::First => ascents.first(),
        AscentChoice::Last => ascents.last(),
    };
    if let Some(&i) = pick {
        let mut mu = nu.to_vec();
        mu.swap(i - 1, i);
        let em = rec(&mu);
        let c = hecke_ratio(&mu, i);
        let te = dl_apply(i, &em).expect("index in range");
        return te.add(&em.scalar_mul(&c)).expect("same variable count");
    }
    // nu is a partition with nu_1 > 0.
    let mut prev: Vec<usize> = nu[1..].to_vec();
    prev.push(nu[0] - 1);
    let ep = rec(&prev);
    let last = nu[0] - 1;
    XPolynomial::from_terms(
        n,
        ep.terms().map(|(e, c)| {
            let mut f = Vec::with_capacity(n);
            f.push(e[n - 1] + 1);
            f.extend_from_slice(&e[..n - 1]);
            (f, c * &QTRational::qt(last as i32 - e[n - 1] as i32, 0))
        }),
    )
}

/// The two sides of the evaluation formula at `x = t^{-rho}`.
#[derive(Clone, Debug)]
pub struct EvaluationCheck {
    pub lhs: QTRational,
    pub rhs: QTRational,
    pub equal: bool,
}

/// Doubled entries of `rho = (n-1, n-3, .., -(n-1))/2`.
fn rho2(n: usize) -> Vec<i32> {
    (0..n).map(|i| n as i32 - 1 - 2 * i as i32).collect()
}

/// Stable sorting permutation: `u[i]` is the position of `lam_i` in `lam_-`.
pub fn antidominant_sort(lam: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lam.len()).collect();
    order.sort_by_key(|&i| lam[i]);
    let mut u = vec![0; lam.len()];
    for (pos, &i) in order.iter().enumerate() {
        u[i] = pos;
    }
    u
}

/// Elements `(j, i, k)` of `Inv(m_lam)`: `alpha = e_j - e_i` with `i < j`
/// (0-based) and the shift `k`.
pub fn inversion_set(lam: &[usize]) -> Vec<(usize, usize, usize)> {
    let n = lam.len();
    let mut minus = lam.to_vec();
    minus.sort_unstable();
    let u = antidominant_sort(lam);
    let mut uinv = vec![0; n];
    for (i, &p) in u.iter().enumerate() {
        uinv[p] = i;
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pairing = minus[j] - minus[i];
            // u^{-1}(e_j - e_i) = e_{u^{-1} j} - e_{u^{-1} i} is positive iff u^{-1} j < u^{-1} i.
            let top = if uinv[j] < uinv[i] { pairing.saturating_sub(1) } else { pairing };
            for k in 1..=top {
                out.push((j, i, k));
            }
        }
    }
    out
}

pub fn evaluation_check(lam: &[usize]) -> Result<EvaluationCheck> {
    let n = lam.len();
    let r2 = rho2(n);
    let point: Vec<QTRational> = r2.iter().map(|&x| QTRational::monomial_half(0, -x)).collect();
    let e = compute_e(lam);
    let lhs = e.evaluate(&point)?;
    let mut minus = lam.to_vec();
    minus.sort_unstable();
    let pair2: i32 = r2.iter().zip(&minus).map(|(&r, &m)| r * m as i32).sum();
    let mut rhs = QTRational::monomial_half(0, pair2);
    for (j, i, k) in inversion_set(lam) {
        // <alpha, rho> = rho_j - rho_i = -(j - i)
        let d = (j - i) as i32;
        let num = QTRational::one_minus(k as i32, 1 + d);
        let den = QTRational::one_minus(k as i32, d);
        rhs = &rhs * &num.checked_div(&den)?;
    }
    let equal = lhs == rhs;
    Ok(EvaluationCheck { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> XPolynomial {
        XPolynomial::variable(n, i)
    }

    #[test]
    fn dl_examples() {
        assert_eq!(dl_apply(1, &x(2, 1)).unwrap(), x(2, 2));
        let t = QTRational::t();
        let expect = x(2, 1).scalar_mul(&t).add(&x(2, 2).scalar_mul(&(&t - &QTRational::one()))).unwrap();
        assert_eq!(dl_apply(1, &x(2, 2)).unwrap(), expect);
        let sym = x(2, 1).mul(&x(2, 2)).unwrap();
        assert_eq!(dl_apply(1, &sym).unwrap(), sym.scalar_mul(&t));
        assert_eq!(dl_inverse_apply(1, &x(2, 2)).unwrap(), x(2, 1));
    }

    #[test]
    fn reduced_words() {
        assert!(check_reduced(&[1, 2, 1], 3).is_ok());
        assert!(check_reduced(&[1, 1], 3).is_err());
        assert_eq!(longest_word(3).len(), 3);
    }

    #[test]
    fn small_e() {
        assert_eq!(*compute_e(&[1, 0]), x(2, 1));
        let e01 = compute_e(&[0, 1]);
        let c = &QTRational::one_minus(0, 1) / &QTRational::one_minus(1, 1);
        assert_eq!(*e01, x(2, 2).add(&x(2, 1).scalar_mul(&c)).unwrap());
    }

    #[test]
    fn inversion_sets() {
        assert!(inversion_set(&[1, 0]).is_empty());
        assert_eq!(inversion_set(&[0, 1]), vec![(1, 0, 1)]);
    }
}
