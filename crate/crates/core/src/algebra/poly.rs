//! Sparse Laurent polynomials in `q` and `t` with integer coefficients.
//!
//! The `t` exponent is stored doubled so that `t^(1/2)` is representable.
//! Terms are kept sorted by the canonical order: `q` exponent descending,
//! then `t` exponent descending.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(q, 2*t)`.
pub type Mono = (i32, i32);

fn term_order(a: &Mono, b: &Mono) -> Ordering {
    b.0.cmp(&a.0).then(b.1.cmp(&a.1))
}

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QtPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn monomial(c: BigInt, m: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QtPoly { terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut map: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for (m, c) in it {
            // key sorts ascending, so store negated exponents
            *map.entry((-m.0, -m.1)).or_insert_with(BigInt::zero) += c;
        }
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b), c)| ((-a, -b), c))
            .collect();
        QtPoly { terms }
    }

    fn from_sorted(terms: Vec<(Mono, BigInt)>) -> Self {
        QtPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Self {
        QtPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match term_order(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        QtPoly::from_sorted(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, *m);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, *m);
        }
        let mut map: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let key = (-(ma.0 + mb.0), -(ma.1 + mb.1));
                let prod = ca * cb;
                match map.get_mut(&key) {
                    Some(v) => *v += prod,
                    None => {
                        map.insert(key, prod);
                    }
                }
            }
        }
        QtPoly::from_sorted(
            map.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b), c)| ((-a, -b), c))
                .collect(),
        )
    }

    pub fn mul_term(&self, c: &BigInt, m: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QtPoly::from_sorted(
            self.terms
                .iter()
                .map(|(mm, cc)| ((mm.0 + m.0, mm.1 + m.1), cc * c))
                .collect(),
        )
    }

    pub fn shift(&self, m: Mono) -> Self {
        QtPoly::from_sorted(
            self.terms
                .iter()
                .map(|(mm, cc)| ((mm.0 + m.0, mm.1 + m.1), cc.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(c, (0, 0))
    }

    /// Divides every coefficient by `c`; caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        QtPoly::from_sorted(self.terms.iter().map(|(m, cc)| (*m, cc / c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent. Zero polynomial returns `(0,0)`.
    pub fn min_exponents(&self) -> Mono {
        if self.terms.is_empty() {
            return (0, 0);
        }
        let mut mq = i32::MAX;
        let mut mt = i32::MAX;
        for (m, _) in &self.terms {
            mq = mq.min(m.0);
            mt = mt.min(m.1);
        }
        (mq, mt)
    }

    /// `t -> t^{-1}`.
    pub fn star(&self) -> Self {
        QtPoly::from_terms(self.terms.iter().map(|(m, c)| ((m.0, -m.1), c.clone())))
    }

    /// `q -> q^a`, `t -> t^b` for integer `a`, `b`.
    pub fn substitute_powers(&self, a: i32, b: i32) -> Self {
        QtPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| ((m.0 * a, m.1 * b), c.clone())),
        )
    }

    pub fn max_q(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.0).max().unwrap_or(0)
    }

    pub fn max_t2(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.1).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: Mono) -> BigInt {
        self.terms
            .iter()
            .find(|(mm, _)| *mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    fn fmt_term(out: &mut String, m: &Mono, c: &BigInt) {
        out.push_str(&c.to_string());
        if m.0 != 0 {
            out.push_str(&format!("*q^{}", m.0));
        }
        if m.1 != 0 {
            if m.1 % 2 == 0 {
                out.push_str(&format!("*t^{}", m.1 / 2));
            } else {
                out.push_str(&format!("*t^({}/2)", m.1));
            }
        }
    }

    /// Canonical serialization: "+"-joined `c*q^a*t^b` terms.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push('+');
            }
            Self::fmt_term(&mut s, m, c);
        }
        s
    }

    /// Human oriented rendering, e.g. `1 - q*t`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if m.0 != 0 {
                factors.push(if m.0 == 1 {
                    "q".to_string()
                } else {
                    format!("q^{}", m.0)
                });
            }
            if m.1 != 0 {
                factors.push(if m.1 == 2 {
                    "t".to_string()
                } else if m.1 % 2 == 0 {
                    format!("t^{}", m.1 / 2)
                } else {
                    format!("t^({}/2)", m.1)
                });
            }
            if factors.is_empty() || !a.is_one() {
                factors.insert(0, a.to_string());
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Debug for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

// ---------------------------------------------------------------------------
// Dense recursive representation used for gcd and exact division.
// A `UPoly` is dense in T = t^(1/2) (low to high); a `BPoly` is dense in q
// with `UPoly` coefficients.

pub(crate) type UPoly = Vec<BigInt>;
type BPoly = Vec<UPoly>;

pub(crate) fn u_trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn u_is_zero(a: &UPoly) -> bool {
    a.is_empty()
}

pub(crate) fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i);
        let y = b.get(i);
        out.push(match (x, y) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            _ => BigInt::zero(),
        });
    }
    u_trim(out)
}

pub(crate) fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_scale(a: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn u_content(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_scalar(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

fn u_primitive(a: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = u_content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    u_div_scalar(a, &c)
}

/// Exact division in Z[T]; `None` if `b` does not divide `a`.
pub(crate) fn u_divexact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut qt = vec![BigInt::zero(); a.len() - db];
    for k in (0..qt.len()).rev() {
        let lead = &r[k + db];
        if lead.is_zero() {
            continue;
        }
        let (qq, rem) = lead.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &qq * bj;
        }
        qt[k] = qq;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(u_trim(qt))
}

fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        r = u_scale(&r, &lb);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = u_trim(r);
    }
    r
}

pub(crate) fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) {
        return u_primitive_signed(b);
    }
    if u_is_zero(b) {
        return u_primitive_signed(a);
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = if a.len() >= b.len() {
        (u_primitive(a), u_primitive(b))
    } else {
        (u_primitive(b), u_primitive(a))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    u_scale(&u_primitive(&x), &c)
}

fn u_primitive_signed(a: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        a.iter().map(|c| -c).collect()
    } else {
        a.clone()
    }
}

fn b_trim(mut a: BPoly) -> BPoly {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

fn b_content(a: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        if c.is_empty() {
            continue;
        }
        g = if g.is_empty() { u_primitive_signed(c) } else { u_gcd(&g, c) };
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn b_div_u(a: &BPoly, c: &UPoly) -> BPoly {
    a.iter()
        .map(|x| {
            if x.is_empty() {
                Vec::new()
            } else {
                u_divexact(x, c).expect("content divides every coefficient")
            }
        })
        .collect()
}

fn b_primitive(a: &BPoly) -> BPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = b_content(a);
    let mut p = b_div_u(a, &c);
    let lead = p.last().unwrap().last().unwrap();
    if lead.is_negative() {
        for row in p.iter_mut() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    p
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: BPoly = r.iter().map(|x| u_mul(x, &lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = u_sub(&next[shift + j], &u_mul(&lr, bj));
        }
        r = b_trim(next);
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    let ca = b_content(a);
    let cb = b_content(b);
    let c = u_gcd(&ca, &cb);
    let (mut x, mut y) = if a.len() >= b.len() {
        (b_div_u(a, &ca), b_div_u(b, &cb))
    } else {
        (b_div_u(b, &cb), b_div_u(a, &ca))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = b_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { b_primitive(&r) };
    }
    let p = b_primitive(&x);
    p.iter().map(|row| u_mul(row, &c)).collect()
}

// Heuristic gcd: evaluate at a large integer, take the gcd one level down,
// rebuild by symmetric xi-adic expansion and confirm by exact division.

fn max_norm_u(a: &UPoly) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn max_norm_b(a: &BPoly) -> BigInt {
    a.iter().map(max_norm_u).max().unwrap_or_else(BigInt::zero)
}

fn u_eval(a: &UPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn b_eval(a: &BPoly, x: &BigInt) -> UPoly {
    let mut acc: UPoly = Vec::new();
    for c in a.iter().rev() {
        acc = u_scale(&acc, x);
        acc = u_add_into(acc, c);
    }
    u_trim(acc)
}

fn u_add_into(mut a: UPoly, b: &UPoly) -> UPoly {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i] += c;
    }
    a
}

fn sym_rem(c: &BigInt, xi: &BigInt) -> BigInt {
    let mut r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r -= xi;
    }
    r
}

fn u_from_integer(mut g: BigInt, xi: &BigInt) -> UPoly {
    let mut out = Vec::new();
    while !g.is_zero() {
        let r = sym_rem(&g, xi);
        g = (&g - &r) / xi;
        out.push(r);
    }
    u_trim(out)
}

fn b_from_upoly(mut g: UPoly, xi: &BigInt) -> BPoly {
    let mut out = Vec::new();
    while !g.is_empty() {
        let r: UPoly = g.iter().map(|c| sym_rem(c, xi)).collect();
        g = u_trim(g.iter().zip(&r).map(|(c, rr)| (c - rr) / xi).collect());
        out.push(u_trim(r));
    }
    b_trim(out)
}

fn next_xi(xi: &BigInt) -> BigInt {
    xi * 73794 / 27011 + 1
}

/// Primitive inputs; primitive gcd with positive leading coefficient.
fn u_gcd_heu(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let mut xi = max_norm_u(a).min(max_norm_u(b)) * 2 + 29;
    for _ in 0..6 {
        let g = u_eval(a, &xi).gcd(&u_eval(b, &xi));
        if !g.is_zero() {
            let cand = u_primitive(&u_from_integer(g, &xi));
            if !cand.is_empty() && u_divexact(a, &cand).is_some() && u_divexact(b, &cand).is_some() {
                return Some(cand);
            }
        }
        xi = next_xi(&xi);
    }
    None
}

fn u_gcd_fast(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return u_gcd(a, b);
    }
    let c = u_content(a).gcd(&u_content(b));
    let (pa, pb) = (u_primitive(a), u_primitive(b));
    match u_gcd_heu(&pa, &pb) {
        Some(g) => u_scale(&g, &c),
        None => u_gcd(a, b),
    }
}

fn b_int_content(a: &BPoly) -> BigInt {
    let mut g = BigInt::zero();
    for row in a {
        g = g.gcd(&u_content(row));
        if g.is_one() {
            break;
        }
    }
    g
}

fn b_int_primitive(a: &BPoly) -> BPoly {
    let mut c = b_int_content(a);
    if a.last().and_then(|r| r.last()).is_some_and(|x| x.is_negative()) {
        c = -c;
    }
    a.iter().map(|r| u_div_scalar(r, &c)).collect()
}

fn b_gcd_heu(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let (pa, pb) = (b_int_primitive(a), b_int_primitive(b));
    let c = b_int_content(a).gcd(&b_int_content(b));
    let mut xi = max_norm_b(&pa).min(max_norm_b(&pb)) * 2 + 29;
    for _ in 0..6 {
        let g = u_gcd_fast(&b_eval(&pa, &xi), &b_eval(&pb, &xi));
        if !g.is_empty() {
            let cand = b_int_primitive(&b_from_upoly(g, &xi));
            if !cand.is_empty() && b_divexact(&pa, &cand).is_some() && b_divexact(&pb, &cand).is_some() {
                return Some(cand.iter().map(|r| u_scale(r, &c)).collect());
            }
        }
        xi = next_xi(&xi);
    }
    None
}

fn b_gcd_fast(a: &BPoly, b: &BPoly) -> BPoly {
    match b_gcd_heu(a, b) {
        Some(g) => g,
        None => b_gcd(a, b),
    }
}

fn b_divexact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut qt: BPoly = vec![Vec::new(); a.len() - db];
    for k in (0..qt.len()).rev() {
        let lead = &r[k + db];
        if lead.is_empty() {
            continue;
        }
        let qq = u_divexact(lead, lb)?;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = u_sub(&r[k + j], &u_mul(&qq, bj));
        }
        qt[k] = qq;
    }
    if r.iter().any(|x| !x.is_empty()) {
        return None;
    }
    Some(b_trim(qt))
}

fn to_dense(p: &QtPoly) -> BPoly {
    debug_assert!(p.min_exponents().0 >= 0 && p.min_exponents().1 >= 0);
    let dq = p.max_q() as usize;
    let dt = p.max_t2() as usize;
    let mut out: BPoly = vec![Vec::new(); dq + 1];
    for (m, c) in &p.terms {
        let row = &mut out[m.0 as usize];
        if row.is_empty() {
            *row = vec![BigInt::zero(); dt + 1];
        }
        row[m.1 as usize] = c.clone();
    }
    b_trim(out.into_iter().map(u_trim).collect())
}

fn from_dense(b: &BPoly) -> QtPoly {
    let mut terms = Vec::new();
    for (i, row) in b.iter().enumerate().rev() {
        for (j, c) in row.iter().enumerate().rev() {
            if !c.is_zero() {
                terms.push(((i as i32, j as i32), c.clone()));
            }
        }
    }
    QtPoly::from_sorted(terms)
}

/// Gcd of two polynomials with nonnegative exponents. The result has a
/// positive leading coefficient in the canonical order.
pub fn poly_gcd(a: &QtPoly, b: &QtPoly) -> QtPoly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mono = (ma.0.min(mb.0), ma.1.min(mb.1));
    let a0 = a.shift((-ma.0, -ma.1));
    let b0 = b.shift((-mb.0, -mb.1));
    let g = if a0.is_monomial() || b0.is_monomial() {
        QtPoly::constant(a0.content().gcd(&b0.content()))
    } else if a0 == b0 {
        normalize_sign(a0)
    } else {
        let q_first = a0.max_q().max(b0.max_q()) <= a0.max_t2().max(b0.max_t2());
        if q_first {
            from_dense(&b_gcd_fast(&to_dense(&a0), &to_dense(&b0)))
        } else {
            let sa = swap_vars(&a0);
            let sb = swap_vars(&b0);
            swap_vars(&from_dense(&b_gcd_fast(&to_dense(&sa), &to_dense(&sb))))
        }
    };
    normalize_sign(g.shift(mono))
}

fn swap_vars(p: &QtPoly) -> QtPoly {
    QtPoly::from_terms(p.terms.iter().map(|(m, c)| ((m.1, m.0), c.clone())))
}

fn normalize_sign(p: QtPoly) -> QtPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Exact division `a / b` for polynomials with nonnegative exponents,
/// `None` if not exact.
pub fn poly_divexact(a: &QtPoly, b: &QtPoly) -> Option<QtPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(QtPoly::zero());
    }
    if b.is_monomial() {
        let (m, c) = &b.terms[0];
        let mut terms = Vec::with_capacity(a.terms.len());
        for (mm, cc) in &a.terms {
            let (qq, r) = cc.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push(((mm.0 - m.0, mm.1 - m.1), qq));
        }
        return Some(QtPoly::from_sorted(terms));
    }
    if a == b {
        return Some(QtPoly::one());
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let a0 = a.shift((-ma.0, -ma.1));
    let b0 = b.shift((-mb.0, -mb.1));
    let d = b_divexact(&to_dense(&a0), &to_dense(&b0))?;
    Some(from_dense(&d).shift((ma.0 - mb.0, ma.1 - mb.1)))
}
