//! Compositions, partitions, split indices, diagram statistics and the
//! bijection between fixed-point labels and split indices.
//!
//! Composition diagrams use 1-based `(column, row)` boxes. Plane boxes of
//! partitions (fixed-point side) use 0-based `(c, r)` with weight `q^r t^c`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::algebra::QTRational;
use crate::error::{Error, Result};

pub type Composition = Vec<usize>;

/// Box `(i, j)` of `dg(nu)`: column `i`, height `j`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DgBox {
    pub col: usize,
    pub row: usize,
}

impl DgBox {
    pub fn new(col: usize, row: usize) -> Self {
        DgBox { col, row }
    }
}

/// Plane box `(c, r)`, 0-based, weight `q^r t^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlaneBox {
    pub c: usize,
    pub r: usize,
}

impl PlaneBox {
    pub fn new(c: usize, r: usize) -> Self {
        PlaneBox { c, r }
    }

    pub fn weight(&self) -> QTRational {
        QTRational::qt(self.r as i32, self.c as i32)
    }
}

fn check_box(nu: &[usize], b: DgBox) -> Result<()> {
    if b.col == 0 || b.col > nu.len() || b.row == 0 || b.row > nu[b.col - 1] {
        return Err(Error::BoxOutside((b.col, b.row)));
    }
    Ok(())
}

/// `l(box) = nu_i - j`.
pub fn leg(nu: &[usize], b: DgBox) -> Result<usize> {
    check_box(nu, b)?;
    Ok(nu[b.col - 1] - b.row)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArmVariant {
    A,
    ATilde,
}

pub fn arm(nu: &[usize], b: DgBox, variant: ArmVariant) -> Result<usize> {
    check_box(nu, b)?;
    let i = b.col - 1;
    let j = b.row;
    let h = nu[i];
    let left = nu[..i].iter().filter(|&&v| j <= v && v <= h).count();
    let lo = match variant {
        ArmVariant::A => j - 1,
        ArmVariant::ATilde => j,
    };
    let right = nu[i + 1..].iter().filter(|&&v| lo <= v && v < h).count();
    Ok(left + right)
}

pub fn arm_a(nu: &[usize], b: DgBox) -> usize {
    arm(nu, b, ArmVariant::A).expect("box in diagram")
}

pub fn arm_tilde(nu: &[usize], b: DgBox) -> usize {
    arm(nu, b, ArmVariant::ATilde).expect("box in diagram")
}

pub fn leg_of(nu: &[usize], b: DgBox) -> usize {
    leg(nu, b).expect("box in diagram")
}

/// `l'_nu(i)` for 0-based `i`.
pub fn l_prime(nu: &[usize], i: usize) -> usize {
    let v = nu[i];
    nu[..i].iter().filter(|&&x| x > v).count() + nu[i + 1..].iter().filter(|&&x| x >= v).count()
}

/// Entry `i` is `(nu_i, -l'_nu(i))`: the exponents of `q` and `t`.
pub fn spectral_vector(nu: &[usize]) -> Vec<(i64, i64)> {
    (0..nu.len())
        .map(|i| (nu[i] as i64, -(l_prime(nu, i) as i64)))
        .collect()
}

/// The eigenvalue monomials `q^{nu_i} t^{-l'(i)}`.
pub fn spectral_values(nu: &[usize]) -> Vec<QTRational> {
    spectral_vector(nu)
        .into_iter()
        .map(|(a, b)| QTRational::qt(a as i32, b as i32))
        .collect()
}

/// `n(nu) = sum (i-1) nu_i`.
pub fn n_stat(nu: &[usize]) -> usize {
    nu.iter().enumerate().map(|(i, v)| i * v).sum()
}

pub fn sort_decreasing(nu: &[usize]) -> Vec<usize> {
    let mut v = nu.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn sort_and_n(nu: &[usize]) -> (Vec<usize>, usize) {
    let s = sort_decreasing(nu);
    let n = n_stat(&s);
    (s, n)
}

/// Conjugate partition (input weakly decreasing, zeros allowed).
pub fn transpose(p: &[usize]) -> Vec<usize> {
    let max = p.iter().copied().max().unwrap_or(0);
    (1..=max).map(|j| p.iter().filter(|&&v| v >= j).count()).collect()
}

pub fn trim_zeros(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn is_partition(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

/// Cyclic shift `c_I` with 1-based strictly increasing positions.
pub fn c_i_shift(lambda: &[usize], positions: &[usize]) -> Result<Composition> {
    if positions.is_empty() {
        return Err(Error::InvalidIndexSet("empty".into()));
    }
    if positions.windows(2).any(|w| w[0] >= w[1])
        || positions[0] == 0
        || *positions.last().unwrap() > lambda.len()
    {
        return Err(Error::InvalidIndexSet(format!("{positions:?}")));
    }
    let mut out = lambda.to_vec();
    let r = positions.len();
    for k in 0..r - 1 {
        out[positions[k] - 1] = lambda[positions[k + 1] - 1];
    }
    out[positions[r - 1] - 1] = lambda[positions[0] - 1] + 1;
    Ok(out)
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with at most `parts` parts.
pub fn partitions_max_len(n: usize, parts: usize) -> Vec<Vec<usize>> {
    partitions(n).into_iter().filter(|p| p.len() <= parts).collect()
}

/// Weak compositions of `n` into exactly `k` parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=n {
            cur.push(v);
            rec(n - v, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// A split index `(lambda | gamma)` with `lambda` padded to `m` slots.
///
/// The padding `m` does not take part in equality, ordering or hashing.
#[derive(Clone, Debug)]
pub struct SplitIndex {
    lambda: Vec<usize>,
    gamma: Vec<usize>,
    m: usize,
}

impl SplitIndex {
    pub fn new(lambda: &[usize], gamma: &[usize], m: usize) -> Result<Self> {
        let lam = trim_zeros(lambda);
        if !is_partition(&lam) {
            return Err(Error::Parse(format!("lambda {lambda:?} is not a partition")));
        }
        if lam.len() > m {
            return Err(Error::Parse(format!("lambda {lambda:?} has more than {m} parts")));
        }
        Ok(SplitIndex { lambda: lam, gamma: gamma.to_vec(), m })
    }

    /// Uses the smallest padding `m = |lambda| + |gamma|` (at least the
    /// number of parts of lambda).
    pub fn natural(lambda: &[usize], gamma: &[usize]) -> Result<Self> {
        let lam = trim_zeros(lambda);
        let m = (lam.iter().sum::<usize>() + gamma.iter().sum::<usize>()).max(lam.len());
        Self::new(&lam, gamma, m)
    }

    pub fn with_m(&self, m: usize) -> Result<Self> {
        Self::new(&self.lambda, &self.gamma, m)
    }

    /// Nonzero parts of lambda.
    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.gamma.len()
    }

    pub fn n(&self) -> usize {
        self.m + self.gamma.len()
    }

    pub fn size(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.gamma.iter().sum::<usize>()
    }

    pub fn lambda_padded(&self) -> Vec<usize> {
        let mut v = self.lambda.clone();
        v.resize(self.m, 0);
        v
    }

    /// `(lambda | gamma)` as a composition of length `n`.
    pub fn full(&self) -> Composition {
        let mut v = self.lambda_padded();
        v.extend_from_slice(&self.gamma);
        v
    }

    /// `(lambda^- | gamma)`, lambda weakly increasing.
    pub fn minus(&self) -> Composition {
        let mut v = self.lambda_padded();
        v.reverse();
        v.extend_from_slice(&self.gamma);
        v
    }

    /// `n(sort(lambda, gamma))`.
    pub fn n_sorted(&self) -> usize {
        sort_and_n(&self.full()).1
    }

    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.lambda.clone(), self.gamma.clone())
    }

    pub fn label(&self) -> String {
        format!("{};{}", join(&self.lambda), join(&self.gamma))
    }

    /// Parses `"lambda;gamma"`.
    pub fn parse(s: &str, m: Option<usize>) -> Result<Self> {
        let (l, g) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected 'lambda;gamma', got '{s}'")))?;
        let lam = parse_list(l)?;
        let gam = parse_list(g)?;
        match m {
            Some(m) => Self::new(&lam, &gam, m),
            None => Self::natural(&lam, &gam),
        }
    }
}

impl PartialEq for SplitIndex {
    fn eq(&self, o: &Self) -> bool {
        self.lambda == o.lambda && self.gamma == o.gamma
    }
}

impl Eq for SplitIndex {}

impl Hash for SplitIndex {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.lambda.hash(h);
        self.gamma.hash(h);
    }
}

impl PartialOrd for SplitIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for SplitIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl fmt::Display for SplitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", join(&self.lambda), join(&self.gamma))
    }
}

impl Serialize for SplitIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SplitIndex", 2)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.end()
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Comma separated nonnegative integers; the empty string is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer '{x}'")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Partitions in the plane.

/// Arm of a plane box in `dg'(xi)`: boxes strictly to the right in its row.
pub fn plane_arm(xi: &[usize], b: PlaneBox) -> i64 {
    xi.get(b.r).copied().unwrap_or(0) as i64 - b.c as i64 - 1
}

/// Leg of a plane box in `dg'(xi)`: boxes strictly above in its column.
pub fn plane_leg(xi: &[usize], b: PlaneBox) -> i64 {
    xi.iter().filter(|&&row| row > b.c).count() as i64 - b.r as i64 - 1
}

pub fn contains(xi: &[usize], b: PlaneBox) -> bool {
    xi.get(b.r).is_some_and(|&len| len > b.c)
}

/// Outer corners of `dg'(xi)`, topmost first.
pub fn addable_boxes(xi: &[usize]) -> Vec<PlaneBox> {
    let xi = trim_zeros(xi);
    let mut out = Vec::new();
    for r in (0..=xi.len()).rev() {
        let len = xi.get(r).copied().unwrap_or(0);
        if r == 0 || xi[r - 1] > len {
            out.push(PlaneBox::new(len, r));
        }
    }
    out
}

/// Inner corners of `dg'(xi)`.
pub fn removable_boxes(xi: &[usize]) -> Vec<PlaneBox> {
    let xi = trim_zeros(xi);
    let mut out = Vec::new();
    for r in 0..xi.len() {
        let next = xi.get(r + 1).copied().unwrap_or(0);
        if xi[r] > next {
            out.push(PlaneBox::new(xi[r] - 1, r));
        }
    }
    out
}

pub fn add_box(xi: &[usize], b: PlaneBox) -> Vec<usize> {
    let mut v = trim_zeros(xi);
    if b.r == v.len() {
        v.push(0);
    }
    v[b.r] += 1;
    v
}

pub fn remove_box(xi: &[usize], b: PlaneBox) -> Vec<usize> {
    let mut v = xi.to_vec();
    v[b.r] -= 1;
    trim_zeros(&v)
}

/// A torus fixed point `(xi, w)` of a parabolic flag Hilbert scheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPointLabel {
    pub xi: Vec<usize>,
    pub w: Vec<PlaneBox>,
}

impl FixedPointLabel {
    pub fn new(xi: &[usize], w: &[PlaneBox]) -> Result<Self> {
        let fp = FixedPointLabel { xi: trim_zeros(xi), w: w.to_vec() };
        fp.validate()?;
        Ok(fp)
    }

    pub fn k(&self) -> usize {
        self.w.len()
    }

    pub fn size(&self) -> usize {
        self.xi.iter().sum()
    }

    pub fn weights(&self) -> Vec<QTRational> {
        self.w.iter().map(|b| b.weight()).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        if !is_partition(&self.xi) {
            return Err(Error::InvalidLabel(format!("{:?} is not a partition", self.xi)));
        }
        let mut cur = self.xi.clone();
        let mut cols = Vec::new();
        for b in &self.w {
            if cols.contains(&b.c) {
                return Err(Error::InvalidLabel(format!("{self} is not a horizontal strip")));
            }
            if !removable_boxes(&cur).contains(b) {
                return Err(Error::InvalidLabel(format!("{self}: {b:?} is not a corner")));
            }
            cols.push(b.c);
            cur = remove_box(&cur, *b);
        }
        Ok(())
    }

    /// `w` with the entry at 0-based `i` swapped with `i+1`.
    pub fn swapped(&self, i: usize) -> FixedPointLabel {
        let mut w = self.w.clone();
        w.swap(i, i + 1);
        FixedPointLabel { xi: self.xi.clone(), w }
    }

    /// Parses `xi` and `w` given as "q^r*t^c" monomials or "(c,r)" pairs.
    pub fn parse(xi: &str, w: &str) -> Result<Self> {
        let xi = parse_list(xi)?;
        let boxes = parse_weights(w)?;
        Self::new(&xi, &boxes)
    }
}

impl fmt::Display for FixedPointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights().iter().map(|w| w.pretty()).collect();
        write!(f, "({}),({})", join(&self.xi), ws.join(","))
    }
}

/// Parses a list of plane boxes, e.g. `"q^0*t^1,q^1*t^0"` or `"(1,0),(0,1)"`.
pub fn parse_weights(s: &str) -> Result<Vec<PlaneBox>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.starts_with('(') {
        let mut out = Vec::new();
        for part in s.split(')') {
            let part = part.trim().trim_start_matches(',').trim();
            if part.is_empty() {
                continue;
            }
            let inner = part
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad box '{part}'")))?;
            let v = parse_list(inner)?;
            if v.len() != 2 {
                return Err(Error::Parse(format!("bad box '{part}'")));
            }
            out.push(PlaneBox::new(v[0], v[1]));
        }
        return Ok(out);
    }
    s.split(',').map(parse_monomial_box).collect()
}

fn parse_monomial_box(s: &str) -> Result<PlaneBox> {
    let mut r = 0usize;
    let mut c = 0usize;
    for f in s.trim().split('*') {
        let f = f.trim();
        let bad = || Error::Parse(format!("bad weight '{s}'"));
        if f == "1" || f.is_empty() {
            continue;
        } else if f == "q" {
            r += 1;
        } else if f == "t" {
            c += 1;
        } else if let Some(e) = f.strip_prefix("q^") {
            r += e.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(e) = f.strip_prefix("t^") {
            c += e.parse::<usize>().map_err(|_| bad())?;
        } else {
            return Err(bad());
        }
    }
    Ok(PlaneBox::new(c, r))
}

/// `phi(xi, w) = (lambda | gamma)` with padding `m = |xi| - k`.
pub fn phi(fp: &FixedPointLabel) -> Result<SplitIndex> {
    fp.validate()?;
    let gamma: Vec<usize> = fp.w.iter().map(|b| b.r).collect();
    let cols = transpose(&fp.xi);
    let labeled: Vec<usize> = fp.w.iter().map(|b| b.c).collect();
    let lambda: Vec<usize> = cols
        .iter()
        .enumerate()
        .filter(|(c, _)| !labeled.contains(c))
        .map(|(_, &h)| h)
        .collect();
    SplitIndex::new(&lambda, &gamma, fp.size() - fp.k())
}

/// Column index of the labeled column `i` (0-based) in `phi^{-1}`.
pub fn label_column(lambda: &[usize], gamma: &[usize], i: usize) -> usize {
    let g = gamma[i];
    lambda.iter().filter(|&&l| l > g).count()
        + gamma[i + 1..].iter().filter(|&&x| x == g).count()
        + gamma.iter().filter(|&&x| x > g).count()
}

pub fn phi_inverse(idx: &SplitIndex) -> FixedPointLabel {
    let lambda = idx.lambda();
    let gamma = idx.gamma();
    let mut cols: Vec<usize> = lambda.to_vec();
    cols.extend(gamma.iter().map(|g| g + 1));
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let xi = transpose(&cols);
    let w = (0..gamma.len())
        .map(|i| PlaneBox::new(label_column(lambda, gamma, i), gamma[i]))
        .collect();
    FixedPointLabel { xi, w }
}

/// Every fixed-point label with `|xi| = size` and `k` labels.
pub fn fixed_points(size: usize, k: usize) -> Vec<FixedPointLabel> {
    fn rec(orig: &[usize], cur: &[usize], w: &mut Vec<PlaneBox>, k: usize, out: &mut Vec<FixedPointLabel>) {
        if w.len() == k {
            out.push(FixedPointLabel { xi: orig.to_vec(), w: w.clone() });
            return;
        }
        for b in removable_boxes(cur) {
            if w.iter().any(|x| x.c == b.c) {
                continue;
            }
            w.push(b);
            rec(orig, &remove_box(cur, b), w, k, out);
            w.pop();
        }
    }
    let mut out = Vec::new();
    if k > size {
        return out;
    }
    for xi in partitions(size) {
        rec(&xi, &xi, &mut Vec::new(), k, &mut out);
    }
    out
}

/// All split indices with `|lambda| + |gamma| = size` and `k` slots.
pub fn split_indices(size: usize, k: usize) -> Vec<SplitIndex> {
    let mut out = Vec::new();
    for g in 0..=size {
        for lam in partitions(size - g) {
            for gam in compositions(g, k) {
                out.push(SplitIndex::new(&lam, &gam, size.max(lam.len())).unwrap());
            }
        }
    }
    out
}
