//! Cyclotomic factors in a monomial, `Phi_d(q^a T^b)` with `T = t^(1/2)`.
//!
//! For a primitive direction `(a, b)` these are irreducible, and they are
//! the only factors that ever reach a denominator in the Macdonald setting
//! apart from rare leftovers. Divisibility by one of them reduces to
//! univariate division along the lines parallel to `(a, b)`.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use super::poly::{u_divexact, u_gcd, u_trim, Mono, QtPoly, UPoly};

static CYCLOTOMIC: Lazy<DashMap<u32, Arc<UPoly>>> = Lazy::new(DashMap::new);

/// `Phi_d` as dense integer coefficients, low to high.
pub(crate) fn cyclotomic(d: u32) -> Arc<UPoly> {
    if let Some(p) = CYCLOTOMIC.get(&d) {
        return p.clone();
    }
    let mut p: UPoly = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            p = u_divexact(&p, &cyclotomic(e)).expect("cyclotomic divides x^d - 1");
        }
    }
    let p = Arc::new(p);
    CYCLOTOMIC.insert(d, p.clone());
    p
}

fn totient(d: u32) -> u32 {
    cyclotomic(d).len() as u32 - 1
}

/// A factor `Phi_d(q^a T^b)`, normalized to nonnegative exponents with a
/// zero minimum in each variable and a positive leading coefficient.
#[derive(Clone, Debug)]
pub struct Atom {
    key: (i32, i32, u32),
    poly: Arc<QtPoly>,
}

impl PartialEq for Atom {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}

impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key.hash(h);
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Atom {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.key.cmp(&o.key)
    }
}

static ATOMS: Lazy<DashMap<(i32, i32, u32), Arc<QtPoly>>> = Lazy::new(DashMap::new);

impl Atom {
    pub fn new(a: i32, b: i32, d: u32) -> Atom {
        let key = (a, b, d);
        if let Some(p) = ATOMS.get(&key) {
            return Atom { key, poly: p.clone() };
        }
        let phi = cyclotomic(d);
        let terms: Vec<(Mono, BigInt)> = phi
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((k as i32 * a, k as i32 * b), c.clone()))
            .collect();
        let p = QtPoly::from_terms(terms);
        let m = p.min_exponents();
        let poly = Arc::new(p.shift((-m.0, -m.1)));
        ATOMS.insert(key, poly.clone());
        Atom { key, poly }
    }

    pub fn poly(&self) -> &QtPoly {
        &self.poly
    }

    pub fn key(&self) -> (i32, i32, u32) {
        self.key
    }

    /// Exact quotient `p / self`, or `None`.
    pub fn divide(&self, p: &QtPoly) -> Option<QtPoly> {
        let (a, b, d) = self.key;
        // self = Phi_d(v) * T^{-off}
        let off = if b < 0 { (totient(d) as i32) * b } else { 0 };
        let phi = cyclotomic(d);
        let lines = Lines::new(a, b);
        let groups = lines.group(p)?;
        let mut out = Vec::with_capacity(p.len());
        for (y, (x0, dense)) in groups {
            if d == 1 {
                let s: BigInt = dense.iter().sum();
                if !s.is_zero() {
                    return None;
                }
            }
            let quot = u_divexact(&dense, &phi)?;
            for (k, c) in quot.into_iter().enumerate() {
                if !c.is_zero() {
                    let m = lines.back(x0 + k as i64, y);
                    out.push(((m.0, m.1 + off), c));
                }
            }
        }
        Some(QtPoly::from_terms(out))
    }

    /// `t -> t^{-1}` applied to the atom: returns the new atom and the
    /// monomial unit `u` with `star(self) = u * new`.
    pub fn star(&self) -> (Atom, QtPoly) {
        let (a, b, d) = self.key;
        let other = if a > 0 { Atom::new(a, -b, d) } else { Atom::new(0, 1, d) };
        let s = self.poly.star();
        let unit = super::poly::poly_divexact(&s, &other.poly).expect("star of an atom is an atom");
        debug_assert!(unit.is_monomial());
        (other, unit)
    }
}

/// Coordinates along a primitive direction `(a, b)`: a term `(i, j)` sits
/// at position `x` on line `y`, with `(i, j) = x (a, b) + y (c, d)`.
struct Lines {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Lines {
    fn new(a: i32, b: i32) -> Self {
        let (a, b) = (a as i64, b as i64);
        // a*s + b*r = 1, then d = s, c = -r gives a*d - b*c = 1
        let e = a.extended_gcd(&b);
        let (s, r) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
        debug_assert_eq!(a * s + b * r, 1);
        Lines { a, b, c: -r, d: s }
    }

    fn coords(&self, m: Mono) -> (i64, i64) {
        let (i, j) = (m.0 as i64, m.1 as i64);
        (self.d * i - self.c * j, -self.b * i + self.a * j)
    }

    fn back(&self, x: i64, y: i64) -> Mono {
        ((self.a * x + self.c * y) as i32, (self.b * x + self.d * y) as i32)
    }

    /// Groups terms by line; `None` if some line holds a single term.
    fn group(&self, p: &QtPoly) -> Option<BTreeMap<i64, (i64, UPoly)>> {
        let mut raw: BTreeMap<i64, Vec<(i64, &BigInt)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (x, y) = self.coords(*m);
            raw.entry(y).or_default().push((x, c));
        }
        let mut out = BTreeMap::new();
        for (y, v) in raw {
            if v.len() < 2 {
                return None;
            }
            let x0 = v.iter().map(|t| t.0).min().unwrap();
            let x1 = v.iter().map(|t| t.0).max().unwrap();
            let mut dense = vec![BigInt::zero(); (x1 - x0 + 1) as usize];
            for (x, c) in v {
                dense[(x - x0) as usize] = c.clone();
            }
            out.insert(y, (x0, dense));
        }
        Some(out)
    }
}

fn primitive_direction(di: i32, dj: i32) -> (i32, i32) {
    let g = (di as i64).gcd(&(dj as i64)) as i32;
    let (mut a, mut b) = (di / g, dj / g);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Splits a nonzero polynomial as `unit * T-monomial * prod atoms * rest`,
/// where `unit` is an integer, `rest` is primitive with positive leading
/// coefficient, zero minimum exponents and no atom factor.
pub struct Factored {
    pub unit: BigInt,
    pub mono: Mono,
    pub atoms: Vec<(Atom, u32)>,
    pub rest: QtPoly,
}

pub fn factor(p: &QtPoly) -> Factored {
    assert!(!p.is_zero(), "factor of zero");
    let mono = p.min_exponents();
    let mut cur = p.shift((-mono.0, -mono.1));
    let mut unit = cur.content();
    if cur.leading().unwrap().1.is_negative() {
        unit = -unit;
    }
    cur = cur.div_scalar_exact(&unit);
    let mut found: BTreeMap<Atom, u32> = BTreeMap::new();
    if cur.len() > 1 {
        let lead = cur.leading().unwrap().0;
        let mut dirs: Vec<(i32, i32)> = cur.terms()[1..]
            .iter()
            .map(|(m, _)| primitive_direction(m.0 - lead.0, m.1 - lead.1))
            .collect();
        dirs.sort_unstable();
        dirs.dedup();
        for (a, b) in dirs {
            if cur.len() < 2 {
                break;
            }
            let lines = Lines::new(a, b);
            let Some(groups) = lines.group(&cur) else { continue };
            let mut g: UPoly = Vec::new();
            for (_, (_, dense)) in groups {
                g = if g.is_empty() { u_trim(dense) } else { u_gcd(&g, &dense) };
                if g.len() < 2 {
                    break;
                }
            }
            if g.len() < 2 {
                continue;
            }
            let mut dd = 1u32;
            while g.len() >= 2 {
                let deg = g.len() as u32 - 1;
                if totient(dd) <= deg {
                    while let Some(q) = u_divexact(&g, &cyclotomic(dd)) {
                        g = q;
                        let atom = Atom::new(a, b, dd);
                        cur = atom.divide(&cur).expect("line gcd factor divides");
                        *found.entry(atom).or_insert(0) += 1;
                    }
                }
                dd += 1;
                if dd as u64 > 2 * (deg as u64) * (deg as u64) + 2 {
                    break;
                }
            }
        }
    }
    if cur.leading().unwrap().1.is_negative() {
        unit = -unit;
        cur = cur.neg();
    }
    Factored { unit, mono, atoms: found.into_iter().collect(), rest: cur }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((i32, i32), i64)]) -> QtPoly {
        QtPoly::from_terms(terms.iter().map(|(m, c)| (*m, BigInt::from(*c))))
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(*cyclotomic(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic(6).len(), 3);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn factor_binomials() {
        // 1 - q^2 t^2 = (1 - qt)(1 + qt), doubled t exponents
        let f = factor(&p(&[((0, 0), 1), ((2, 4), -1)]));
        assert_eq!(f.unit, BigInt::from(-1));
        assert_eq!(f.atoms.len(), 2);
        assert!(f.rest.is_one());
        // 1 - t = (1 - T)(1 + T)
        let f = factor(&p(&[((0, 0), 1), ((0, 2), -1)]));
        assert_eq!(f.atoms.len(), 2);
        // (t - q)(1 + q + t) keeps the second factor
        let a = p(&[((0, 2), 1), ((1, 0), -1)]);
        let b = p(&[((0, 0), 1), ((1, 0), 1), ((0, 2), 1)]);
        let f = factor(&a.mul(&b).mul(&a));
        assert_eq!(f.atoms.len(), 1);
        assert_eq!(f.atoms[0].1, 2);
        assert_eq!(f.rest, b);
    }

    #[test]
    fn atom_star() {
        let x = Atom::new(1, 2, 1);
        let (y, unit) = x.star();
        assert_eq!(y.key(), (1, -2, 1));
        assert!(unit.is_monomial());
    }
}
