//! Rational functions in `q` and `t^(1/2)`.
//!
//! The denominator is kept factored: a positive integer, a sorted list of
//! cyclotomic atoms with multiplicities, and a leftover polynomial free of
//! atoms. The numerator is an expanded Laurent polynomial coprime to all of
//! it, so the representation is unique and equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::cyclo::{factor, Atom};
use super::poly::{poly_divexact, poly_gcd, Mono, QtPoly};
use crate::error::{Error, Result};

/// An element of Q(q, t^(1/2)) in reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QTRational {
    num: QtPoly,
    dc: BigInt,
    atoms: Vec<(Atom, u32)>,
    rest: QtPoly,
}

impl Default for QTRational {
    fn default() -> Self {
        Self::zero()
    }
}

fn expand_atoms(atoms: &[(Atom, u32)]) -> QtPoly {
    let mut acc = QtPoly::one();
    for (a, e) in atoms {
        for _ in 0..*e {
            acc = acc.mul(a.poly());
        }
    }
    acc
}

/// Divides `num` by atoms as long as possible, lowering multiplicities.
fn cancel_atoms(num: &mut QtPoly, atoms: &mut Vec<(Atom, u32)>) {
    if num.is_zero() {
        return;
    }
    for (a, e) in atoms.iter_mut() {
        while *e > 0 {
            match a.divide(num) {
                Some(q) => {
                    *num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
    atoms.retain(|(_, e)| *e > 0);
}

/// Removes common factors of `num` and `rest` (rest has zero minimum
/// exponents).
fn cancel_rest(num: &mut QtPoly, rest: &mut QtPoly) {
    if num.is_zero() {
        return;
    }
    while !rest.is_one() {
        let m = num.min_exponents();
        let g = poly_gcd(&num.shift((-m.0, -m.1)), rest);
        if g.len() <= 1 {
            break;
        }
        *num = poly_divexact(num, &g).expect("gcd divides numerator");
        *rest = poly_divexact(rest, &g).expect("gcd divides denominator");
    }
}

fn cancel_int(num: &mut QtPoly, dc: &mut BigInt) {
    if dc.is_one() || num.is_zero() {
        return;
    }
    let g = num.content().gcd(dc);
    if !g.is_one() {
        *num = num.div_scalar_exact(&g);
        *dc /= &g;
    }
}

fn merge_atoms(a: &[(Atom, u32)], b: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Cancels common atoms of two lists in place.
fn cancel_common(a: &mut Vec<(Atom, u32)>, b: &mut Vec<(Atom, u32)>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let m = a[i].1.min(b[j].1);
                a[i].1 -= m;
                b[j].1 -= m;
                i += 1;
                j += 1;
            }
        }
    }
    a.retain(|(_, e)| *e > 0);
    b.retain(|(_, e)| *e > 0);
}

impl QTRational {
    pub fn zero() -> Self {
        QTRational { num: QtPoly::zero(), dc: BigInt::one(), atoms: Vec::new(), rest: QtPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(QtPoly::one())
    }

    fn from_laurent(num: QtPoly) -> Self {
        QTRational { num, dc: BigInt::one(), atoms: Vec::new(), rest: QtPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(QtPoly::constant(BigInt::from(c)))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_laurent(QtPoly::constant(c))
    }

    /// `c * q^a * t^b`.
    pub fn monomial(c: i64, a: i32, b: i32) -> Self {
        Self::from_laurent(QtPoly::monomial(BigInt::from(c), (a, 2 * b)))
    }

    /// `q^a * t^(b2/2)`.
    pub fn monomial_half(a: i32, b2: i32) -> Self {
        Self::from_laurent(QtPoly::monomial(BigInt::one(), (a, b2)))
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `q^a t^b`, integer exponents.
    pub fn qt(a: i32, b: i32) -> Self {
        Self::monomial(1, a, b)
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(a: i32, b: i32) -> Self {
        Self::from_laurent(QtPoly::one().sub(&QtPoly::monomial(BigInt::one(), (a, 2 * b))))
    }

    /// A Laurent polynomial.
    pub fn from_poly(p: QtPoly) -> Self {
        Self::from_laurent(p)
    }

    /// `1 / p` for a nonzero Laurent polynomial.
    fn inv_poly(p: &QtPoly) -> Self {
        let f = factor(p);
        let mut num = QtPoly::monomial(BigInt::one(), (-f.mono.0, -f.mono.1));
        if f.unit.is_negative() {
            num = num.neg();
        }
        QTRational { num, dc: f.unit.abs(), atoms: f.atoms, rest: f.rest }
    }

    /// `num / den`, reduced.
    pub fn from_parts(num: QtPoly, den: QtPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        Ok(&Self::from_laurent(num) * &Self::inv_poly(&den))
    }

    /// Canonical numerator and denominator: nonnegative exponents, the
    /// monomial content in the numerator, positive leading denominator term.
    pub fn parts(&self) -> (QtPoly, QtPoly) {
        if self.num.is_zero() {
            return (QtPoly::zero(), QtPoly::one());
        }
        let den = expand_atoms(&self.atoms).mul(&self.rest).scale(&self.dc);
        let m = self.num.min_exponents();
        let s = ((-m.0).max(0), (-m.1).max(0));
        (self.num.shift(s), den.shift(s))
    }

    pub fn numer(&self) -> QtPoly {
        self.parts().0
    }

    pub fn denom(&self) -> QtPoly {
        self.parts().1
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.has_unit_denominator()
    }

    fn has_unit_denominator(&self) -> bool {
        self.dc.is_one() && self.atoms.is_empty() && self.rest.is_one()
    }

    /// True when the value is a Laurent polynomial with rational coefficients.
    pub fn is_polynomial(&self) -> bool {
        self.atoms.is_empty() && self.rest.is_one()
    }

    /// True when the value lies in Z[q^(+-1), t^(+-1/2)].
    pub fn is_integral(&self) -> bool {
        self.has_unit_denominator()
    }

    /// Number of terms in numerator and expanded denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.rest.len() + self.atoms.iter().map(|(a, e)| a.poly().len() * *e as usize).sum::<usize>()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let f = factor(&other.num);
        // numerator pieces: self.num, other's denominator; denominator
        // pieces: self's denominator, the factors of other.num
        let mut na = self.num.clone();
        let mut num_atoms = other.atoms.clone();
        let mut den_atoms = self.atoms.clone();
        cancel_common(&mut num_atoms, &mut den_atoms);
        let mut new_atoms = f.atoms;
        cancel_atoms(&mut na, &mut new_atoms);
        let mut rest_a = self.rest.clone();
        let mut rest_b = other.rest.clone();
        if !rest_a.is_one() && !rest_b.is_one() {
            let g = poly_gcd(&rest_a, &rest_b);
            if !g.is_one() {
                rest_a = poly_divexact(&rest_a, &g).unwrap();
                rest_b = poly_divexact(&rest_b, &g).unwrap();
            }
        }
        let mut new_rest = f.rest;
        cancel_rest(&mut na, &mut new_rest);
        let mut num = na
            .mul(&expand_atoms(&num_atoms))
            .mul(&rest_b)
            .scale(&other.dc)
            .shift((-f.mono.0, -f.mono.1));
        if f.unit.is_negative() {
            num = num.neg();
        }
        let mut dc = &self.dc * f.unit.abs();
        cancel_int(&mut num, &mut dc);
        let rest = if new_rest.is_one() {
            rest_a
        } else if rest_a.is_one() {
            new_rest
        } else {
            rest_a.mul(&new_rest)
        };
        Ok(QTRational { num, dc, atoms: merge_atoms(&den_atoms, &new_atoms), rest })
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `t -> t^{-1}`.
    pub fn star(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.star();
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (a, e) in &self.atoms {
            let (b, unit) = a.star();
            // 1/star(a)^e = 1/(unit^e b^e)
            let (m, c) = unit.leading().unwrap().clone();
            for _ in 0..*e {
                num = num.shift((-m.0, -m.1));
                if c.is_negative() {
                    num = num.neg();
                }
            }
            atoms.push((b, *e));
        }
        atoms.sort();
        let mut out = QTRational { num, dc: self.dc.clone(), atoms, rest: QtPoly::one() };
        if !self.rest.is_one() {
            out = &out * &Self::inv_poly(&self.rest.star());
        }
        out
    }

    /// `q -> q^a`, `t -> t^b`.
    pub fn substitute_powers(&self, a: i32, b: i32) -> Self {
        let mut out = Self::from_laurent(self.num.substitute_powers(a, b));
        out.dc = self.dc.clone();
        let mut den = Self::one();
        for (at, e) in &self.atoms {
            let d = Self::from_laurent(at.poly().substitute_powers(a, b)).pow(*e as i32).unwrap();
            den = &den * &d;
        }
        if !self.rest.is_one() {
            den = &den * &Self::from_laurent(self.rest.substitute_powers(a, b));
        }
        out.checked_div(&den).expect("monomial substitution keeps the denominator nonzero")
    }

    /// Substitutes `q -> q_val` (if given) and `t^(1/2) -> sqrt_t`.
    pub fn evaluate(&self, q_val: Option<&QTRational>, sqrt_t: &QTRational) -> Result<Self> {
        let mut den = Self::from_bigint(self.dc.clone());
        for (a, e) in &self.atoms {
            let v = eval_poly(a.poly(), q_val, sqrt_t)?;
            if v.is_zero() {
                return Err(Error::VanishingDenominator(a.poly().pretty()));
            }
            den = &den * &v.pow(*e as i32)?;
        }
        if !self.rest.is_one() {
            let v = eval_poly(&self.rest, q_val, sqrt_t)?;
            if v.is_zero() {
                return Err(Error::VanishingDenominator(self.rest.pretty()));
            }
            den = &den * &v;
        }
        eval_poly(&self.num, q_val, sqrt_t)?.checked_div(&den)
    }

    pub fn canonical_string(&self) -> String {
        let (n, d) = self.parts();
        format!("{} / {}", n.canonical_string(), d.canonical_string())
    }

    pub fn pretty(&self) -> String {
        let (num, den) = self.parts();
        if den.is_one() {
            return num.pretty();
        }
        let n = if num.len() > 1 { format!("({})", num.pretty()) } else { num.pretty() };
        let d = if den.len() > 1 { format!("({})", den.pretty()) } else { den.pretty() };
        format!("{n}/{d}")
    }

    /// Parses the canonical `NUM / DEN` form.
    pub fn parse(s: &str) -> Result<Self> {
        let (n, d) = match s.split_once(" / ") {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        Self::from_parts(parse_poly(n)?, parse_poly(d)?)
    }
}

fn eval_poly(p: &QtPoly, q_val: Option<&QTRational>, sqrt_t: &QTRational) -> Result<QTRational> {
    let mut parts = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut term = QTRational::from_bigint(c.clone());
        match q_val {
            Some(qv) => term = &term * &qv.pow(m.0)?,
            None => term = &term * &QTRational::monomial_half(m.0, 0),
        }
        term = &term * &sqrt_t.pow(m.1)?;
        parts.push(term);
    }
    Ok(super::xpoly::sum_all(parts))
}

fn parse_poly(s: &str) -> Result<QtPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(QtPoly::zero());
    }
    let mut terms = Vec::new();
    for raw in s.split('+') {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Parse(format!("empty term in '{s}'")));
        }
        let mut coeff = BigInt::one();
        let mut mono: Mono = (0, 0);
        for (idx, f) in raw.split('*').enumerate() {
            let f = f.trim();
            if let Some(e) = f.strip_prefix("q^") {
                mono.0 += e.parse::<i32>().map_err(|_| Error::Parse(f.into()))?;
            } else if f == "q" {
                mono.0 += 1;
            } else if let Some(e) = f.strip_prefix("t^") {
                let e = e.trim_start_matches('(').trim_end_matches(')');
                if let Some((p, two)) = e.split_once('/') {
                    if two.trim() != "2" {
                        return Err(Error::Parse(f.into()));
                    }
                    mono.1 += p.trim().parse::<i32>().map_err(|_| Error::Parse(f.into()))?;
                } else {
                    mono.1 += 2 * e.parse::<i32>().map_err(|_| Error::Parse(f.into()))?;
                }
            } else if f == "t" {
                mono.1 += 2;
            } else if idx == 0 {
                coeff = f.parse::<BigInt>().map_err(|_| Error::Parse(f.into()))?;
            } else {
                return Err(Error::Parse(format!("bad factor '{f}'")));
            }
        }
        terms.push((mono, coeff));
    }
    Ok(QtPoly::from_terms(terms))
}

impl fmt::Display for QTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Debug for QTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl<'a> Add<&'a QTRational> for &'a QTRational {
    type Output = QTRational;
    fn add(self, o: &QTRational) -> QTRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.dc == o.dc && self.atoms == o.atoms && self.rest == o.rest {
            let mut num = self.num.add(&o.num);
            if num.is_zero() {
                return QTRational::zero();
            }
            let mut atoms = self.atoms.clone();
            let mut rest = self.rest.clone();
            let mut dc = self.dc.clone();
            cancel_atoms(&mut num, &mut atoms);
            cancel_rest(&mut num, &mut rest);
            cancel_int(&mut num, &mut dc);
            return QTRational { num, dc, atoms, rest };
        }
        // common denominator
        let mut fa = Vec::new();
        let mut fb = Vec::new();
        let mut atoms = Vec::new();
        let (a, b) = (&self.atoms, &o.atoms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    fb.push(a[i].clone());
                    atoms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    fa.push(b[j].clone());
                    atoms.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (a[i].1, b[j].1);
                    if ea < eb {
                        fa.push((a[i].0.clone(), eb - ea));
                    } else if eb < ea {
                        fb.push((a[i].0.clone(), ea - eb));
                    }
                    atoms.push((a[i].0.clone(), ea.max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let (rest, ra, rb) = if self.rest == o.rest {
            (self.rest.clone(), QtPoly::one(), QtPoly::one())
        } else if self.rest.is_one() {
            (o.rest.clone(), o.rest.clone(), QtPoly::one())
        } else if o.rest.is_one() {
            (self.rest.clone(), QtPoly::one(), self.rest.clone())
        } else {
            let g = poly_gcd(&self.rest, &o.rest);
            let ra = poly_divexact(&o.rest, &g).unwrap();
            let rb = poly_divexact(&self.rest, &g).unwrap();
            (self.rest.mul(&ra), ra, rb)
        };
        let mut dc = self.dc.lcm(&o.dc);
        let ma = &dc / &self.dc;
        let mb = &dc / &o.dc;
        let left = self.num.mul(&expand_atoms(&fa)).mul(&ra).scale(&ma);
        let right = o.num.mul(&expand_atoms(&fb)).mul(&rb).scale(&mb);
        let mut num = left.add(&right);
        if num.is_zero() {
            return QTRational::zero();
        }
        let mut rest = rest;
        cancel_atoms(&mut num, &mut atoms);
        cancel_rest(&mut num, &mut rest);
        cancel_int(&mut num, &mut dc);
        QTRational { num, dc, atoms, rest }
    }
}

impl<'a> Sub<&'a QTRational> for &'a QTRational {
    type Output = QTRational;
    fn sub(self, o: &QTRational) -> QTRational {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QTRational> for &'a QTRational {
    type Output = QTRational;
    fn mul(self, o: &QTRational) -> QTRational {
        if self.is_zero() || o.is_zero() {
            return QTRational::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut na = self.num.clone();
        let mut nb = o.num.clone();
        let mut atoms_a = self.atoms.clone();
        let mut atoms_b = o.atoms.clone();
        cancel_atoms(&mut na, &mut atoms_b);
        cancel_atoms(&mut nb, &mut atoms_a);
        let mut rest_a = self.rest.clone();
        let mut rest_b = o.rest.clone();
        cancel_rest(&mut na, &mut rest_b);
        cancel_rest(&mut nb, &mut rest_a);
        let mut dca = self.dc.clone();
        let mut dcb = o.dc.clone();
        cancel_int(&mut na, &mut dcb);
        cancel_int(&mut nb, &mut dca);
        let rest = if rest_a.is_one() {
            rest_b
        } else if rest_b.is_one() {
            rest_a
        } else {
            rest_a.mul(&rest_b)
        };
        QTRational { num: na.mul(&nb), dc: dca * dcb, atoms: merge_atoms(&atoms_a, &atoms_b), rest }
    }
}

impl<'a> Div<&'a QTRational> for &'a QTRational {
    type Output = QTRational;
    /// Panics on division by zero; use [`QTRational::checked_div`] for a
    /// fallible version.
    fn div(self, o: &QTRational) -> QTRational {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &QTRational {
    type Output = QTRational;
    fn neg(self) -> QTRational {
        let mut out = self.clone();
        out.num = out.num.neg();
        out
    }
}

impl Neg for QTRational {
    type Output = QTRational;
    fn neg(mut self) -> QTRational {
        self.num = self.num.neg();
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QTRational> for QTRational {
            type Output = QTRational;
            fn $m(self, o: QTRational) -> QTRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QTRational> for QTRational {
            type Output = QTRational;
            fn $m(self, o: &QTRational) -> QTRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QTRational> for &'a QTRational {
            type Output = QTRational;
            fn $m(self, o: QTRational) -> QTRational {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for QTRational {
    fn sum<I: Iterator<Item = QTRational>>(iter: I) -> Self {
        iter.fold(QTRational::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QTRational {
    fn product<I: Iterator<Item = QTRational>>(iter: I) -> Self {
        iter.fold(QTRational::one(), |a, b| a * b)
    }
}

impl serde::Serialize for QTRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sign_and_monomials() {
        let t = QTRational::t();
        let x = QTRational::one() / (QTRational::one() - &t * &QTRational::q());
        assert_eq!(x.canonical_string(), "-1 / 1*q^1*t^1+-1");
        // t^{-1}/(1-q) keeps the t in the denominator
        let y = QTRational::one() / (&t * &QTRational::one_minus(1, 0));
        assert_eq!(y.canonical_string(), "-1 / 1*q^1*t^1+-1*t^1");
    }

    #[test]
    fn parse_roundtrip() {
        let x = QTRational::one_minus(1, 1) / QTRational::one_minus(2, 3);
        assert_eq!(QTRational::parse(&x.canonical_string()).unwrap(), x);
        let h = QTRational::monomial_half(1, -3);
        assert_eq!(QTRational::parse(&h.canonical_string()).unwrap(), h);
    }
}
