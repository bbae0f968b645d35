//! Sparse polynomials in x_1..x_n with coefficients in Q(q,t).

use std::collections::BTreeMap;
use std::fmt;

use super::QTRational;
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPolynomial {
    n: usize,
    terms: BTreeMap<Exponents, QTRational>,
}

impl XPolynomial {
    pub fn zero(n: usize) -> Self {
        XPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: QTRational) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, QTRational::one())
    }

    /// The variable `x_i`, 1-based.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(n, e, QTRational::one())
    }

    pub fn monomial(n: usize, e: Exponents, c: QTRational) -> Self {
        assert_eq!(e.len(), n, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        XPolynomial { n, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, QTRational)>>(n: usize, it: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &QTRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, QTRational> {
        self.terms
    }

    pub fn add_term(&mut self, e: Exponents, c: &QTRational) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn coefficient_of(&self, e: &[u32]) -> QTRational {
        self.terms.get(e).cloned().unwrap_or_else(QTRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::VariableMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        XPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut acc: BTreeMap<Exponents, Vec<QTRational>> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                acc.entry(e).or_default().push(ca * cb);
            }
        }
        Ok(Self::collect(self.n, acc))
    }

    /// Sums grouped contributions, one coefficient sum per exponent.
    pub fn collect(n: usize, acc: BTreeMap<Exponents, Vec<QTRational>>) -> Self {
        let terms = acc
            .into_iter()
            .filter_map(|(e, cs)| {
                let s = sum_all(cs);
                (!s.is_zero()).then_some((e, s))
            })
            .collect();
        XPolynomial { n, terms }
    }

    pub fn scalar_mul(&self, c: &QTRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        if c.is_one() {
            return self.clone();
        }
        XPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients<F: Fn(&QTRational) -> QTRational>(&self, f: F) -> Self {
        XPolynomial::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Variable `x_i` goes to `x_{sigma[i]}` (0-based permutation), so the
    /// coefficient of `sigma(e)` in the result is the coefficient of `e`.
    pub fn permute_variables(&self, sigma: &[usize]) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::VariableMismatch(sigma.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &s in sigma {
            if s >= self.n || seen[s] {
                return Err(Error::InvalidIndexSet(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; self.n];
                for (i, &x) in e.iter().enumerate() {
                    f[sigma[i]] = x;
                }
                (f, c.clone())
            })
            .collect();
        Ok(XPolynomial { n: self.n, terms })
    }

    /// Swaps `x_i` and `x_{i+1}` (1-based `i`).
    pub fn swap_adjacent(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = e.clone();
                f.swap(i - 1, i);
                (f, c.clone())
            })
            .collect();
        XPolynomial { n: self.n, terms }
    }

    /// Substitutes `x_index -> factor * x_target` (both 1-based).
    pub fn substitute_variable(&self, index: usize, factor: &QTRational, target: usize) -> Result<Self> {
        if index == 0 || index > self.n || target == 0 || target > self.n {
            return Err(Error::IndexOutOfRange(index.max(target), self.n));
        }
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[index - 1];
            let mut f = e.clone();
            f[index - 1] = 0;
            f[target - 1] += k;
            let c2 = if k == 0 { c.clone() } else { c * &factor.pow(k as i32)? };
            out.add_term(f, &c2);
        }
        Ok(out)
    }

    /// Evaluates at the given point.
    pub fn evaluate(&self, point: &[QTRational]) -> Result<QTRational> {
        if point.len() != self.n {
            return Err(Error::VariableMismatch(point.len(), self.n));
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    v = &v * &point[i].pow(k as i32)?;
                }
            }
            parts.push(v);
        }
        Ok(sum_all(parts))
    }

    /// Restricts to `x_i = 0` for the listed 1-based indices and drops
    /// those variables.
    pub fn drop_zero_variables(&self, vars: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|i| !vars.contains(&(i + 1))).collect();
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            if vars.iter().any(|&v| e[v - 1] != 0) {
                continue;
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c);
        }
        out
    }

    /// Inserts zero-exponent variables so that the result has `n` variables,
    /// the existing ones landing at the given 0-based positions.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; n];
                for (i, &p) in positions.iter().enumerate() {
                    f[p] = e[i];
                }
                (f, c.clone())
            })
            .collect();
        XPolynomial { n, terms }
    }

    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let m = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            parts.push(format!("({})*{}", c.pretty(), m));
        }
        parts.join(" + ")
    }
}

/// Balanced summation, which keeps intermediate denominators small.
pub fn sum_all(mut v: Vec<QTRational>) -> QTRational {
    v.retain(|c| !c.is_zero());
    if v.is_empty() {
        return QTRational::zero();
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        v = next;
    }
    v.pop().unwrap()
}

impl fmt::Debug for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}
