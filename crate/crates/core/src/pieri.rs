//! Pieri rules for `e_1(X) J_(lambda|gamma)`: the support, the closed-form
//! coefficients, the geometric chain coefficients and a brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{QTRational, XPolynomial};
use crate::error::{Error, Result};
use crate::fixedpoints::{e1_chain_geom, h_scalar, FixedPointVector};
use crate::linalg::solve_sparse;
use crate::partial::build_j;
use crate::shapes::{
    arm_a, arm_tilde, leg_of, phi_inverse, plane_arm, plane_leg, sort_and_n, sort_decreasing, spectral_values,
    split_indices, DgBox, FixedPointLabel, PlaneBox, SplitIndex,
};

/// The data describing one term of the Pieri expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriDatum {
    pub source: SplitIndex,
    /// The entry of the padded `lambda` moved to the last slot.
    pub chosen_entry: usize,
    /// 1-based positions `t_1 < .. < t_r`.
    pub i1: Vec<usize>,
    pub eta: Vec<usize>,
    /// Length `m`, weakly increasing before `h`, then constant.
    pub mu_tilde: Vec<usize>,
    /// 1-based start of the final block of `mu_tilde`.
    pub h: usize,
    pub lambda_tilde: Vec<usize>,
}

impl PieriDatum {
    /// Builds the datum for a chosen entry and positions; `None` if `i1`
    /// is not maximal.
    pub fn new(source: &SplitIndex, chosen_entry: usize, i1: &[usize]) -> Option<PieriDatum> {
        let gamma = source.gamma();
        let m = source.m();
        let k = gamma.len();
        let mut eta = gamma.to_vec();
        let mut prev = chosen_entry;
        for &t in i1 {
            eta[t - 1] = prev;
            prev = gamma[t - 1];
        }
        let height = prev + 1;
        let mut others = source.lambda_padded();
        let pos = others.iter().position(|&v| v == chosen_entry)?;
        others.remove(pos);
        let block = others.iter().filter(|&&v| v == height).count() + 1;
        let mut mu_tilde: Vec<usize> = others.into_iter().filter(|&v| v != height).collect();
        mu_tilde.sort_unstable();
        mu_tilde.extend(std::iter::repeat(height).take(block));
        let h = m - block + 1;
        // maximality
        let mut lo = 0;
        for &t in i1 {
            if (lo + 1..t).any(|j| eta[j - 1] == eta[t - 1]) {
                return None;
            }
            lo = t;
        }
        if (lo + 1..=k).any(|j| eta[j - 1] == height - 1) {
            return None;
        }
        let mut lambda_tilde = mu_tilde.clone();
        lambda_tilde[m - 1] = chosen_entry;
        Some(PieriDatum { source: source.clone(), chosen_entry, i1: i1.to_vec(), eta, mu_tilde, h, lambda_tilde })
    }

    pub fn target(&self) -> SplitIndex {
        let mu = sort_decreasing(&self.mu_tilde);
        SplitIndex::new(&mu, &self.eta, self.source.m()).expect("target is a split index")
    }

    /// `r = |I_1|`.
    pub fn r(&self) -> usize {
        self.i1.len()
    }
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << k))
        .map(|mask| (1..=k).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// All terms of the support, one datum per target. Fails if two different
/// data reach the same target.
pub fn enumerate_support(src: &SplitIndex) -> Result<Vec<(SplitIndex, PieriDatum)>> {
    let src = &src.with_m(src.m().max(src.lambda().len() + 1))?;
    let mut values: Vec<usize> = src.lambda_padded();
    values.sort_unstable();
    values.dedup();
    let mut out: BTreeMap<SplitIndex, PieriDatum> = BTreeMap::new();
    for &v in &values {
        for i1 in subsets(src.k()) {
            let Some(d) = PieriDatum::new(src, v, &i1) else { continue };
            let target = d.target();
            if let Some(prev) = out.get(&target) {
                if prev.i1 != d.i1 {
                    return Err(Error::Inconsistent(format!("{target} reached twice from {src}")));
                }
                continue;
            }
            out.insert(target, d);
        }
    }
    Ok(out.into_iter().collect())
}

fn one_minus_qt(a: i64, b: i64) -> QTRational {
    &QTRational::one() - &QTRational::qt(a as i32, b as i32)
}

/// The closed-form coefficient of `J_(mu|eta)` in `e_1 J_(lambda|gamma)`.
pub fn coefficient_a(d: &PieriDatum) -> Result<QTRational> {
    let src = &d.source;
    let m = src.m();
    let k = src.k();
    let nu = src.minus();
    let t = QTRational::t();
    let v = d.chosen_entry;
    let mut out = QTRational::one();
    // boxes of lambda^- in row v+1
    for i in 1..=m {
        if nu[i - 1] > v {
            let b = DgBox::new(i, v + 1);
            let (l, a) = (leg_of(&nu, b) as i64, arm_a(&nu, b) as i64);
            let num = &t - &QTRational::qt(l as i32 + 1, a as i32 + 1);
            out = &out * &num.checked_div(&one_minus_qt(l + 1, a + 1))?;
        }
    }
    // rightmost column of lambda^- of height v
    if v > 0 {
        let col = (1..=m).rev().find(|&i| nu[i - 1] == v).ok_or_else(|| Error::Inconsistent("no column".into()))?;
        for j in 1..=v {
            let b = DgBox::new(col, j);
            let (l, a) = (leg_of(&nu, b) as i64, arm_tilde(&nu, b) as i64);
            let mult = src.gamma().iter().filter(|&&e| e == j - 1).count() as i64;
            out = &out * &one_minus_qt(l, a + 1).checked_div(&one_minus_qt(l + 1, a + 1 + mult))?;
        }
    }
    // p'
    let mut full_mu = d.mu_tilde.clone();
    full_mu.extend_from_slice(&d.eta);
    let ev_mu = spectral_values(&full_mu);
    let mut full_lt = d.lambda_tilde.clone();
    full_lt.extend_from_slice(src.gamma());
    let ev_lt = spectral_values(&full_lt);
    let mu_h = &ev_mu[d.h - 1] * &QTRational::qt(-1, 0);
    let eta_ev = |j: usize| ev_mu[m + j - 1].clone();
    let t1 = &t - &QTRational::one();
    let r = d.r();
    if r > 0 {
        let tr = d.i1[r - 1];
        out = &out * &(&t1 * &mu_h).checked_div(&(&mu_h - &eta_ev(tr)))?;
        for u in 1..r {
            let (a, b) = (eta_ev(d.i1[u]), eta_ev(d.i1[u - 1]));
            out = &out * &(&t1 * &a).checked_div(&(&a - &b))?;
        }
    }
    let tr = d.i1.last().copied().unwrap_or(0);
    for j in tr + 1..=k {
        let e = eta_ev(j);
        out = &out * &(&(&t * &mu_h) - &e).checked_div(&(&mu_h - &e))?;
    }
    let mut lo = 0;
    for &tu in &d.i1 {
        for j in lo + 1..tu {
            let (a, e) = (eta_ev(tu), eta_ev(j));
            out = &out * &(&(&t * &a) - &e).checked_div(&(&a - &e))?;
        }
        lo = tu;
    }
    out = &out * &(&QTRational::one() - &t).inv()?;
    out = &out * &QTRational::qt(1 - d.mu_tilde[d.h - 1] as i32, 0);
    out = &out * &ev_lt[m - 1];
    Ok(out)
}

/// `e_1(x_1..x_m) J_src` expanded in `J` over all candidates, with `n`
/// total variables.
pub fn brute_force_expand(src: &SplitIndex, n: usize) -> Result<BTreeMap<SplitIndex, QTRational>> {
    let k = src.k();
    if n < k {
        return Err(Error::TooFewVariables(n, k));
    }
    let m = n - k;
    let local = src.with_m(m)?;
    let j = build_j(&local)?.body;
    let mut e1 = XPolynomial::zero(n);
    for i in 1..=m {
        e1 = e1.add(&XPolynomial::variable(n, i))?;
    }
    let f = e1.mul(&j)?;
    let restrict = |p: &XPolynomial| -> BTreeMap<Vec<u32>, QTRational> {
        p.terms().filter(|(e, _)| e[..m].windows(2).all(|w| w[0] >= w[1])).map(|(e, c)| (e.clone(), c.clone())).collect()
    };
    let candidates: Vec<SplitIndex> =
        split_indices(src.size() + 1, k).into_iter().filter(|c| c.lambda().len() <= m).map(|c| c.with_m(m)).collect::<Result<_>>()?;
    let cols: Vec<BTreeMap<Vec<u32>, QTRational>> =
        candidates.iter().map(|c| Ok(restrict(&build_j(c)?.body))).collect::<Result<_>>()?;
    let x = solve_sparse(&cols, &restrict(&f))?;
    Ok(candidates.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// Default variable count for the oracle.
pub fn default_oracle_n(src: &SplitIndex) -> usize {
    src.size() + src.k() + 2
}

/// Geometric data for a datum: source label, target label, the added box and
/// `c_r`.
#[derive(Clone, Debug)]
pub struct GeomTerm {
    pub source: FixedPointLabel,
    pub target: FixedPointLabel,
    pub x: PlaneBox,
}

pub fn geom_term(d: &PieriDatum) -> Result<GeomTerm> {
    let source = phi_inverse(&d.source);
    let target = phi_inverse(&d.target());
    let x = added_box(&source.xi, &target.xi)?;
    Ok(GeomTerm { source, target, x })
}

fn added_box(small: &[usize], big: &[usize]) -> Result<PlaneBox> {
    let mut diff = None;
    for r in 0..big.len() {
        let a = small.get(r).copied().unwrap_or(0);
        if big[r] == a + 1 && diff.is_none() {
            diff = Some(PlaneBox::new(a, r));
        } else if big[r] != a {
            return Err(Error::Inconsistent(format!("{big:?} is not {small:?} plus a box")));
        }
    }
    diff.ok_or_else(|| Error::Inconsistent(format!("{big:?} is not {small:?} plus a box")))
}

/// Coefficients of `d- T_k^{-1}..T_1^{-1} d+ H_(xi,w)` in the `H` basis.
pub fn geom_chain_h(source: &FixedPointLabel) -> Result<FixedPointVector> {
    let v = FixedPointVector::basis(source.clone())?.scale(&h_scalar(&source.xi));
    Ok(e1_chain_geom(&v)?.to_h_basis())
}

/// The closed geometric coefficient: `p~_{I_1} t^{|RL(x)|}` times the row
/// and column products.
pub fn coefficient_c_closed(source: &FixedPointLabel, x: PlaneBox, i1: &[usize]) -> Result<QTRational> {
    let xi = &source.xi;
    let k = source.k();
    let w = source.weights();
    let xw = x.weight();
    let tinv = QTRational::qt(0, -1);
    let one = QTRational::one();
    let labeled: BTreeSet<usize> = source.w.iter().map(|b| b.c).collect();
    let mut out = QTRational::one();
    // p~
    let mut lo = 0;
    let mut prev = xw.clone();
    for &tu in i1 {
        out = &out * &(&(&one - &tinv) * &prev).checked_div(&(&prev - &w[tu - 1]))?;
        for j in lo + 1..tu {
            out = &out * &(&(&tinv * &prev) - &w[j - 1]).checked_div(&(&prev - &w[j - 1]))?;
        }
        prev = w[tu - 1].clone();
        lo = tu;
    }
    for j in lo + 1..=k {
        out = &out * &(&(&tinv * &prev) - &w[j - 1]).checked_div(&(&prev - &w[j - 1]))?;
    }
    // t^{|RL(x)|}
    let rl = source.w.iter().filter(|b| b.c > x.c).count();
    out = &out * &QTRational::qt(0, rl as i32);
    // symmetric boxes in x's row
    for c in 0..x.c {
        if labeled.contains(&c) {
            continue;
        }
        let b = PlaneBox::new(c, x.r);
        let (a, l) = (plane_arm(xi, b), plane_leg(xi, b));
        let num = &QTRational::qt(0, a as i32) - &QTRational::qt(l as i32 + 1, 0);
        let den = &QTRational::qt(0, a as i32 + 1) - &QTRational::qt(l as i32 + 1, 0);
        out = &out * &num.checked_div(&den)?;
    }
    // boxes below x
    let big = crate::shapes::add_box(xi, x);
    for r in 0..x.r {
        let b = PlaneBox::new(x.c, r);
        let nb = source.w.iter().filter(|lb| lb.r == r).count() as i32;
        let (a, l) = (plane_arm(&big, b) as i32, plane_leg(&big, b) as i32);
        let num = &QTRational::qt(0, a + 1 - nb) - &QTRational::qt(l - 1, 0);
        let den = &QTRational::qt(0, a + 1) - &QTRational::qt(l, 0);
        out = &out * &num.checked_div(&den)?;
    }
    Ok(out)
}

/// `c_r` from the `n` statistics of the sorted compositions.
pub fn c_r_from_n(src: &SplitIndex, target: &SplitIndex) -> i64 {
    sort_and_n(&target.full()).1 as i64 - sort_and_n(&src.full()).1 as i64
}

/// The matching predicate `C = t^{-c_r} [A (1-t)]^*`.
pub fn match_predicate(a: &QTRational, c: &QTRational, c_r: i64) -> bool {
    let rhs = &QTRational::qt(0, -(c_r as i32)) * &(a * &(&QTRational::one() - &QTRational::t())).star();
    *c == rhs
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub source: String,
    pub target: String,
    pub a: String,
    pub c: String,
    pub c_closed: String,
    pub c_r: i64,
    pub c_r_column: i64,
    pub matches: bool,
}

/// Compares the closed coefficient with the geometric one for one target.
pub fn match_check(src: &SplitIndex, target: &SplitIndex) -> Result<MatchReport> {
    let support = enumerate_support(src)?;
    let (_, d) = support
        .iter()
        .find(|(t, _)| t == target)
        .ok_or_else(|| Error::InvalidIndexSet(format!("{target} is not in the support of {src}")))?;
    let a = coefficient_a(d)?;
    let g = geom_term(d)?;
    let chain = geom_chain_h(&g.source)?;
    let c = chain.coefficient(&g.target);
    let c_closed = coefficient_c_closed(&g.source, g.x, &d.i1)?;
    let c_r = c_r_from_n(src, target);
    let c_r_column = match d.i1.last() {
        Some(&tr) => g.source.w[tr - 1].c as i64,
        None => g.x.c as i64,
    };
    let matches = c == c_closed && c_r == c_r_column && match_predicate(&a, &c, c_r);
    Ok(MatchReport {
        source: src.to_string(),
        target: target.to_string(),
        a: a.canonical_string(),
        c: c.canonical_string(),
        c_closed: c_closed.canonical_string(),
        c_r,
        c_r_column,
        matches,
    })
}

/// One reading of a worked integral-form coefficient taken from outside the
/// engine, and what the engine says for it.
#[derive(Clone, Debug, Serialize)]
pub struct WorkedReading {
    pub reading: String,
    pub source: String,
    pub target: String,
    pub engine: Option<String>,
    pub expected: String,
    pub equal: bool,
}

/// The worked coefficient for `(2,0|1,1,3) -> (2,1|1,1,3)`, checked under both
/// orders of the index pair. Reported only.
pub fn worked_example_diagnostic() -> Result<Vec<WorkedReading>> {
    let q = QTRational::q();
    let one = QTRational::one();
    let num = &(&(&one - &QTRational::qt(2, 1)) * &(&one - &QTRational::qt(0, 2))) * &q;
    let den = &(&(&one - &QTRational::qt(2, 3)) * &(&one - &QTRational::qt(1, 2))) * &(&one - &QTRational::qt(1, 3));
    let expected = -&num.checked_div(&den)?;
    let readings = [
        ("partition first", (vec![2], vec![1, 1, 3]), (vec![2, 1], vec![1, 1, 3])),
        ("composition first", (vec![3, 1, 1], vec![2, 0]), (vec![3, 1, 1], vec![2, 1])),
    ];
    let mut out = Vec::new();
    for (name, (sl, sg), (tl, tg)) in readings {
        let src = SplitIndex::natural(&sl, &sg)?;
        let tgt = SplitIndex::natural(&tl, &tg)?;
        let engine = match enumerate_support(&src)?.into_iter().find(|(t, _)| *t == tgt) {
            Some((_, d)) => Some(coefficient_a(&d)?),
            None => None,
        };
        out.push(WorkedReading {
            reading: name.to_string(),
            source: src.to_string(),
            target: tgt.to_string(),
            equal: engine.as_ref() == Some(&expected),
            engine: engine.map(|e| e.canonical_string()),
            expected: expected.canonical_string(),
        });
    }
    Ok(out)
}
