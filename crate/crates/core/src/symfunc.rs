//! Truncated symmetric functions and the spaces `V_k = Lambda (x) K[y_1..y_k]`.
//!
//! Elements of `V_k` are kept in the power-sum basis, where products are
//! concatenations and plethystic substitutions act letter by letter. The
//! monomial basis is used for lifting from finitely many variables and for
//! output.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::algebra::{sum_all, QTRational, XPolynomial};
use crate::error::{Error, Result};
use crate::shapes::{partitions, sort_decreasing, trim_zeros};

pub type Partition = Vec<usize>;

pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// The x-degree bound `D`: `MACD_DEGREE_BOUND` if set, else 8.
pub fn degree_bound() -> usize {
    std::env::var("MACD_DEGREE_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_BOUND)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Monomial,
    PowerSum,
    Elementary,
}

type RatRow = BTreeMap<Partition, BigRational>;

fn rat_to_qt(r: &BigRational) -> QTRational {
    let n = QTRational::from_bigint(r.numer().clone());
    if r.denom().is_one() {
        n
    } else {
        &n / &QTRational::from_bigint(r.denom().clone())
    }
}

/// Coefficient of `x^nu` in `p_mu`: ways to distribute the parts of `mu`
/// into the parts of `nu`.
fn p_to_m_entry(mu: &[usize], nu: &[usize]) -> u64 {
    fn go(mu: &[usize], rem: &mut Vec<usize>) -> u64 {
        let Some((&first, rest)) = mu.split_first() else {
            return rem.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for j in 0..rem.len() {
            if rem[j] >= first {
                rem[j] -= first;
                total += go(rest, rem);
                rem[j] += first;
            }
        }
        total
    }
    go(mu, &mut nu.to_vec())
}

static TO_P: Lazy<DashMap<(Basis, Partition), Arc<RatRow>>> = Lazy::new(DashMap::new);
static FROM_P: Lazy<DashMap<(Basis, Partition), Arc<RatRow>>> = Lazy::new(DashMap::new);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn z_lambda(lam: &[usize]) -> BigInt {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in lam {
        *mult.entry(v).or_insert(0) += 1;
    }
    let mut z = BigInt::one();
    for (v, c) in mult {
        for i in 1..=c {
            z *= BigInt::from(v) * BigInt::from(i);
        }
    }
    z
}

/// `e_n` in power sums.
fn e_single(n: usize) -> RatRow {
    let mut out = RatRow::new();
    for lam in partitions(n) {
        let sign = if (n - lam.len()) % 2 == 0 { 1 } else { -1 };
        out.insert(lam.clone(), BigRational::new(BigInt::from(sign), z_lambda(&lam)));
    }
    out
}

fn rat_row_mul(a: &RatRow, b: &RatRow) -> RatRow {
    let mut out = RatRow::new();
    for (x, cx) in a {
        for (y, cy) in b {
            let mut z = x.clone();
            z.extend_from_slice(y);
            let z = sort_decreasing(&z);
            let e = out.entry(z).or_insert_with(BigRational::zero);
            *e += cx * cy;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `b_mu` expanded in power sums.
fn to_p_row(basis: Basis, mu: &[usize]) -> Arc<RatRow> {
    let key = (basis, mu.to_vec());
    if let Some(r) = TO_P.get(&key) {
        return r.clone();
    }
    let row = match basis {
        Basis::PowerSum => RatRow::from([(mu.to_vec(), rat(1))]),
        Basis::Elementary => mu
            .iter()
            .fold(RatRow::from([(Vec::new(), rat(1))]), |acc, &n| rat_row_mul(&acc, &e_single(n))),
        Basis::Monomial => {
            let d: usize = mu.iter().sum();
            let mut inv = invert_p_to_m(d);
            let mine = inv.remove(mu).unwrap_or_default();
            for (nu, row) in inv {
                TO_P.entry((basis, nu)).or_insert_with(|| Arc::new(row));
            }
            mine
        }
    };
    let row = Arc::new(row);
    TO_P.entry(key).or_insert(row).clone()
}

/// `p_nu` expanded in the given basis.
fn from_p_row(basis: Basis, nu: &[usize]) -> Arc<RatRow> {
    let key = (basis, nu.to_vec());
    if let Some(r) = FROM_P.get(&key) {
        return r.clone();
    }
    let d: usize = nu.iter().sum();
    let row = match basis {
        Basis::PowerSum => RatRow::from([(nu.to_vec(), rat(1))]),
        Basis::Monomial => partitions(d)
            .into_iter()
            .filter_map(|lam| {
                let c = p_to_m_entry(nu, &lam);
                (c != 0).then(|| (lam, rat(c as i64)))
            })
            .collect(),
        Basis::Elementary => {
            let parts = partitions(d);
            let rows: Vec<RatRow> = parts.iter().map(|mu| (*to_p_row(Basis::Elementary, mu)).clone()).collect();
            let mut inv = invert(&parts, &rows);
            let mine = inv.remove(nu).unwrap_or_default();
            for (lam, row) in inv {
                FROM_P.entry((basis, lam)).or_insert_with(|| Arc::new(row));
            }
            mine
        }
    };
    let row = Arc::new(row);
    FROM_P.entry(key).or_insert(row).clone()
}

/// Rows `m_mu -> p` for all partitions of `d`.
fn invert_p_to_m(d: usize) -> BTreeMap<Partition, RatRow> {
    let parts = partitions(d);
    let rows: Vec<RatRow> = parts.iter().map(|nu| (*from_p_row(Basis::Monomial, nu)).clone()).collect();
    invert(&parts, &rows)
}

/// Given `b_i = sum_j rows[i][j] c_j` over the index set `parts`, returns
/// `c_j` in terms of `b_i`.
fn invert(parts: &[Partition], rows: &[RatRow]) -> BTreeMap<Partition, RatRow> {
    let n = parts.len();
    let pos: BTreeMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut a = vec![vec![BigRational::zero(); 2 * n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (p, c) in row {
            a[i][pos[p]] = c.clone();
        }
        a[i][n + i] = rat(1);
    }
    // b = R c, so c = R^{-1} b.
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("basis change is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        let mut row = RatRow::new();
        for j in 0..n {
            if !a[i][n + j].is_zero() {
                row.insert(parts[j].clone(), a[i][n + j].clone());
            }
        }
        out.insert(parts[i].clone(), row);
    }
    out
}

/// A symmetric function of degree at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    pub d: usize,
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, QTRational>,
}

impl SymFunc {
    pub fn zero(d: usize, basis: Basis) -> Self {
        SymFunc { d, basis, coeffs: BTreeMap::new() }
    }

    pub fn single(d: usize, basis: Basis, mu: &[usize], c: QTRational) -> Result<Self> {
        let mu = trim_zeros(&sort_decreasing(mu));
        if mu.iter().sum::<usize>() > d {
            return Err(Error::DegreeOverflow(d));
        }
        let mut s = Self::zero(d, basis);
        if !c.is_zero() {
            s.coeffs.insert(mu, c);
        }
        Ok(s)
    }

    pub fn convert(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let p = to_powersum(&self.coeffs, self.basis);
        SymFunc { d: self.d, basis: target, coeffs: from_powersum(&p, target) }
    }

    /// Multiplies the `p_i` letters by `c(i)`.
    pub fn alphabet_scale<F: Fn(usize) -> QTRational>(&self, c: F) -> SymFunc {
        let p = self.convert(Basis::PowerSum);
        let coeffs = p
            .coeffs
            .iter()
            .map(|(mu, v)| (mu.clone(), mu.iter().fold(v.clone(), |acc, &i| &acc * &c(i))))
            .collect();
        SymFunc { d: self.d, basis: Basis::PowerSum, coeffs }.convert(self.basis)
    }

    /// The values on `x_1..x_m`.
    pub fn specialize(&self, m: usize) -> XPolynomial {
        let mon = self.convert(Basis::Monomial);
        let mut out = XPolynomial::zero(m);
        for (mu, c) in &mon.coeffs {
            if mu.len() > m {
                continue;
            }
            for e in distinct_permutations(mu, m) {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Lifts a symmetric polynomial in `x_1..x_m`.
    pub fn from_finite_variables(f: &XPolynomial, d: usize) -> Result<SymFunc> {
        let v = VkElement::from_finite_variables(f, f.nvars(), d)?;
        let coeffs = v.to_monomial().into_iter().map(|((mu, _), c)| (mu, c)).collect();
        Ok(SymFunc { d, basis: Basis::Monomial, coeffs })
    }
}

fn to_powersum(c: &BTreeMap<Partition, QTRational>, basis: Basis) -> BTreeMap<Partition, QTRational> {
    let mut acc: BTreeMap<Partition, Vec<QTRational>> = BTreeMap::new();
    for (mu, v) in c {
        for (nu, r) in to_p_row(basis, mu).iter() {
            acc.entry(nu.clone()).or_default().push(v * &rat_to_qt(r));
        }
    }
    collect(acc)
}

fn from_powersum(c: &BTreeMap<Partition, QTRational>, basis: Basis) -> BTreeMap<Partition, QTRational> {
    let mut acc: BTreeMap<Partition, Vec<QTRational>> = BTreeMap::new();
    for (nu, v) in c {
        for (mu, r) in from_p_row(basis, nu).iter() {
            acc.entry(mu.clone()).or_default().push(v * &rat_to_qt(r));
        }
    }
    collect(acc)
}

fn collect<K: Ord>(acc: BTreeMap<K, Vec<QTRational>>) -> BTreeMap<K, QTRational> {
    acc.into_iter()
        .filter_map(|(k, v)| {
            let s = sum_all(v);
            (!s.is_zero()).then_some((k, s))
        })
        .collect()
}

/// All distinct rearrangements of `mu` padded to length `m`.
fn distinct_permutations(mu: &[usize], m: usize) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = mu.iter().map(|&x| x as u32).collect();
    v.resize(m, 0);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next_permutation
    loop {
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else { break };
        let j = (i + 1..m).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// Key of a term in `V_k`: a power-sum partition and a `y` exponent vector.
pub type VkKey = (Partition, Vec<u32>);

/// An element of `Lambda (x) K[y_1..y_k]`, power-sum basis in `X`, with
/// x-degree at most `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct VkElement {
    k: usize,
    d: usize,
    terms: BTreeMap<VkKey, QTRational>,
}

impl VkElement {
    pub fn zero(k: usize, d: usize) -> Self {
        VkElement { k, d, terms: BTreeMap::new() }
    }

    pub fn one(k: usize, d: usize) -> Self {
        Self::term(k, d, Vec::new(), vec![0; k], QTRational::one()).expect("degree 0")
    }

    /// `c p_mu y^beta`.
    pub fn term(k: usize, d: usize, mu: Partition, beta: Vec<u32>, c: QTRational) -> Result<Self> {
        assert_eq!(beta.len(), k, "y exponent length");
        let mu = trim_zeros(&sort_decreasing(&mu));
        if mu.iter().sum::<usize>() > d {
            return Err(Error::DegreeOverflow(d));
        }
        let mut out = Self::zero(k, d);
        if !c.is_zero() {
            out.terms.insert((mu, beta), c);
        }
        Ok(out)
    }

    /// A symmetric function times `1` in the `y` variables.
    pub fn from_symfunc(f: &SymFunc, k: usize) -> Result<Self> {
        let p = f.convert(Basis::PowerSum);
        let mut out = Self::zero(k, f.d);
        for (mu, c) in p.coeffs {
            out.terms.insert((mu, vec![0; k]), c);
        }
        Ok(out)
    }

    /// `e_j(X)`.
    pub fn elementary(j: usize, k: usize, d: usize) -> Result<Self> {
        if j > d {
            return Err(Error::DegreeOverflow(d));
        }
        Self::from_symfunc(&SymFunc::single(d, Basis::Elementary, &[j], QTRational::one())?, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree_bound(&self) -> usize {
        self.d
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

    pub fn terms(&self) -> impl Iterator<Item = (&VkKey, &QTRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &VkKey) -> QTRational {
        self.terms.get(key).cloned().unwrap_or_else(QTRational::zero)
    }

    pub fn x_degree(&self) -> usize {
        self.terms.keys().map(|(mu, _)| mu.iter().sum::<usize>()).max().unwrap_or(0)
    }

    pub fn with_degree_bound(&self, d: usize) -> Result<Self> {
        if self.x_degree() > d {
            return Err(Error::DegreeOverflow(d));
        }
        Ok(VkElement { k: self.k, d, terms: self.terms.clone() })
    }

    pub(crate) fn from_acc(k: usize, d: usize, acc: BTreeMap<VkKey, Vec<QTRational>>) -> Result<Self> {
        let terms = collect(acc);
        if terms.keys().any(|(mu, _)| mu.iter().sum::<usize>() > d) {
            return Err(Error::DegreeOverflow(d));
        }
        Ok(VkElement { k, d, terms })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.k != o.k {
            return Err(Error::VariableMismatch(self.k, o.k));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
        for (key, c) in self.terms.iter().chain(o.terms.iter()) {
            acc.entry(key.clone()).or_default().push(c.clone());
        }
        Self::from_acc(self.k, self.d.max(o.d), acc)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&QTRational::from_int(-1))
    }

    pub fn scale(&self, c: &QTRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.k, self.d);
        }
        VkElement { k: self.k, d: self.d, terms: self.terms.iter().map(|(key, v)| (key.clone(), v * c)).collect() }
    }

    pub fn map_coefficients<F: Fn(&QTRational) -> QTRational>(&self, f: F) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(key, v)| {
                let c = f(v);
                (!c.is_zero()).then(|| (key.clone(), c))
            })
            .collect();
        VkElement { k: self.k, d: self.d, terms }
    }

    /// `t -> t^{-1}` on every coefficient.
    pub fn star(&self) -> Self {
        self.map_coefficients(|c| c.star())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = self.d.max(o.d);
        let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
        for ((mu, a), c) in &self.terms {
            for ((nu, b), e) in &o.terms {
                let mut lam = mu.clone();
                lam.extend_from_slice(nu);
                if lam.iter().sum::<usize>() > d {
                    return Err(Error::DegreeOverflow(d));
                }
                let lam = sort_decreasing(&lam);
                let y: Vec<u32> = a.iter().zip(b).map(|(x, z)| x + z).collect();
                acc.entry((lam, y)).or_default().push(c * e);
            }
        }
        Self::from_acc(self.k, d, acc)
    }

    /// Multiplication by `y_i` (1-based).
    pub fn mul_y(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.k {
            return Err(Error::IndexOutOfRange(i, self.k));
        }
        let terms = self
            .terms
            .iter()
            .map(|((mu, b), c)| {
                let mut b = b.clone();
                b[i - 1] += 1;
                ((mu.clone(), b), c.clone())
            })
            .collect();
        Ok(VkElement { k: self.k, d: self.d, terms })
    }

    /// Swaps `y_i` and `y_{i+1}` (1-based).
    pub fn swap_y(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((mu, b), c)| {
                let mut b = b.clone();
                b.swap(i - 1, i);
                ((mu.clone(), b), c.clone())
            })
            .collect();
        VkElement { k: self.k, d: self.d, terms }
    }

    /// Reverses the order of the `y` variables.
    pub fn reverse_y(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((mu, b), c)| {
                let mut b = b.clone();
                b.reverse();
                ((mu.clone(), b), c.clone())
            })
            .collect();
        VkElement { k: self.k, d: self.d, terms }
    }

    /// Appends `extra` new `y` variables that do not occur.
    pub fn extend_y(&self, extra: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((mu, b), c)| {
                let mut b = b.clone();
                b.resize(self.k + extra, 0);
                ((mu.clone(), b), c.clone())
            })
            .collect();
        VkElement { k: self.k + extra, d: self.d, terms }
    }

    /// Lifts a polynomial in `x_1..x_m, y_1..y_k` (with `n = m + k`
    /// variables) that is symmetric in the `x` block.
    pub fn from_finite_variables(f: &XPolynomial, m: usize, d: usize) -> Result<Self> {
        let n = f.nvars();
        if m > n {
            return Err(Error::VariableMismatch(m, n));
        }
        let k = n - m;
        let mut deg = 0usize;
        let mut shapes: BTreeMap<(Vec<u32>, Vec<u32>), usize> = BTreeMap::new();
        for (e, c) in f.terms() {
            let x = &e[..m];
            deg = deg.max(x.iter().sum::<u32>() as usize);
            let mut s = x.to_vec();
            s.sort_unstable_by(|a, b| b.cmp(a));
            if f.coefficient_of(&[&s[..], &e[m..]].concat()) != *c {
                return Err(Error::NotSymmetric);
            }
            *shapes.entry((s, e[m..].to_vec())).or_insert(0) += 1;
        }
        for ((s, _), count) in &shapes {
            let mu: Vec<usize> = s.iter().map(|&v| v as usize).collect();
            if distinct_permutations(&trim_zeros(&mu), m).len() != *count {
                return Err(Error::NotSymmetric);
            }
        }
        if deg > d {
            return Err(Error::DegreeOverflow(d));
        }
        if m < deg {
            return Err(Error::TooFewVariables(m, deg));
        }
        let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
        for ((s, y), _) in shapes {
            let mu: Partition = trim_zeros(&s.iter().map(|&v| v as usize).collect::<Vec<_>>());
            let c = f.coefficient_of(&[&s[..], &y[..]].concat());
            for (nu, r) in to_p_row(Basis::Monomial, &mu).iter() {
                acc.entry((nu.clone(), y.clone())).or_default().push(&c * &rat_to_qt(r));
            }
        }
        Self::from_acc(k, d, acc)
    }

    /// The coefficients in the monomial basis `m_mu y^beta`.
    pub fn to_monomial(&self) -> BTreeMap<VkKey, QTRational> {
        let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
        for ((nu, y), c) in &self.terms {
            for (mu, r) in from_p_row(Basis::Monomial, nu).iter() {
                acc.entry((mu.clone(), y.clone())).or_default().push(c * &rat_to_qt(r));
            }
        }
        collect(acc)
    }

    /// Specializes `X` to `x_1..x_m`, giving a polynomial in `m + k` variables.
    pub fn specialize(&self, m: usize) -> XPolynomial {
        let mut out = XPolynomial::zero(m + self.k);
        for ((mu, y), c) in self.to_monomial() {
            if mu.len() > m {
                continue;
            }
            for mut e in distinct_permutations(&mu, m) {
                e.extend_from_slice(&y);
                out.add_term(e, &c);
            }
        }
        out
    }

    /// `p_i -> c(i) p_i`.
    pub fn alphabet_scale<F: Fn(usize) -> QTRational>(&self, c: F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((mu, y), v)| ((mu.clone(), y.clone()), mu.iter().fold(v.clone(), |acc, &i| &acc * &c(i))))
            .collect();
        VkElement { k: self.k, d: self.d, terms }
    }

    /// `p_i -> p_i + sign (t^i - 1) y_slot^i`. A slot of `k + 1` adds a variable.
    pub fn alphabet_shift(&self, sign: i64, slot: usize) -> Result<Self> {
        let base = if slot == self.k + 1 { self.extend_y(1) } else { self.clone() };
        if slot == 0 || slot > base.k {
            return Err(Error::IndexOutOfRange(slot, base.k));
        }
        let mut acc: BTreeMap<VkKey, Vec<QTRational>> = BTreeMap::new();
        for ((mu, y), c) in &base.terms {
            // expand prod_i (p_{mu_i} + a_i y^{mu_i})
            let mut partial: Vec<(Partition, u32, QTRational)> = vec![(Vec::new(), 0, c.clone())];
            for &part in mu {
                let a = &QTRational::from_int(sign) * &(&QTRational::qt(0, part as i32) - &QTRational::one());
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (p, e, v) in partial {
                    let mut p2 = p.clone();
                    p2.push(part);
                    next.push((p2, e, v.clone()));
                    next.push((p, e + part as u32, &v * &a));
                }
                partial = next;
            }
            for (p, e, v) in partial {
                let mut y2 = y.clone();
                y2[slot - 1] += e;
                acc.entry((p, y2)).or_default().push(v);
            }
        }
        Self::from_acc(base.k, base.d, acc)
    }

    /// `-[y_{k+1}^{-1}] (F(X - (t-1) y_{k+1}) Omega(-y_{k+1}^{-1} X))`, dropping
    /// the last `y` variable.
    pub fn omega_extract(&self) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::IndexOutOfRange(1, 0));
        }
        let k = self.k;
        let shifted = self.alphabet_shift(-1, k)?;
        let mut by_power: BTreeMap<u32, VkElement> = BTreeMap::new();
        for ((mu, y), c) in &shifted.terms {
            let j = y[k - 1];
            let entry = by_power.entry(j).or_insert_with(|| VkElement::zero(k - 1, self.d));
            entry.terms.insert((mu.clone(), y[..k - 1].to_vec()), c.clone());
        }
        let mut out = VkElement::zero(k - 1, self.d);
        for (j, g) in by_power {
            // -(-1)^{j+1} e_{j+1} g
            let e = VkElement::elementary(j as usize + 1, k - 1, self.d)?;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out = out.add(&e.mul(&g)?.scale(&QTRational::from_int(sign)))?;
        }
        Ok(out)
    }

    /// JSON rows `{"partition","y_exponents","coeff"}` in the monomial basis.
    pub fn to_json_rows(&self) -> Vec<VkJsonRow> {
        self.to_monomial()
            .into_iter()
            .map(|((mu, y), c)| VkJsonRow { partition: mu, y_exponents: y, coeff: c.canonical_string() })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct VkJsonRow {
    pub partition: Vec<usize>,
    pub y_exponents: Vec<u32>,
    pub coeff: String,
}

impl Serialize for VkElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_rows().serialize(s)
    }
}

impl fmt::Debug for VkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((mu, y), c) in self.to_monomial() {
            let mut s = format!("({})", c.pretty());
            if !mu.is_empty() {
                let l: Vec<String> = mu.iter().map(|v| v.to_string()).collect();
                s.push_str(&format!("*m[{}]", l.join(",")));
            }
            for (i, e) in y.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*y{}", i + 1)),
                    _ => s.push_str(&format!("*y{}^{}", i + 1, e)),
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}
