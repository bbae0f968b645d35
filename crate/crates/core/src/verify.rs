//! Sweeps comparing the geometric side with the polynomial side.
//!
//! Every comparison renders both sides as canonical strings and checks them
//! for identity.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{QTRational, XPolynomial};
use crate::error::Result;
use crate::fixedpoints::{h_scalar, tgeom_apply, y2_geom, FixedPointVector};
use crate::linalg::solve_sparse;
use crate::nonsym::{dl_apply, dl_inverse_apply};
use crate::partial::{build_j, tj_action};
use crate::pieri::{coefficient_a, enumerate_support, geom_chain_h};
use crate::polyrep::{build_htilde, e1_multiply, expand_htilde};
use crate::shapes::{fixed_points, phi, phi_inverse, split_indices, FixedPointLabel, SplitIndex};
use crate::symfunc::degree_bound;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    pub ms: u64,
}

impl VerificationReport {
    pub fn new(suite: &str, case: String, lhs: String, rhs: String, start: Instant) -> Self {
        let ok = lhs == rhs;
        VerificationReport { suite: suite.into(), case, lhs, rhs, ok, ms: start.elapsed().as_millis() as u64 }
    }

    fn failed(suite: &str, case: String, err: crate::Error, start: Instant) -> Self {
        VerificationReport {
            suite: suite.into(),
            case,
            lhs: format!("error: {err}"),
            rhs: String::new(),
            ok: false,
            ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Coefficients keyed by split index, as a single canonical string.
pub type Expansion = BTreeMap<SplitIndex, QTRational>;

pub fn render(e: &Expansion) -> String {
    let parts: Vec<String> =
        e.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{k}: {}", c.canonical_string())).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

/// Moves a fixed-point vector across `phi`.
pub fn across_phi(v: &FixedPointVector) -> Result<Expansion> {
    let mut out = Expansion::new();
    for (label, c) in v.terms() {
        out.insert(phi(label)?, c.clone());
    }
    Ok(out)
}

/// `t^{n(sort) + size}`, the normalizing power in `H~`.
pub fn norm_power(idx: &SplitIndex) -> i32 {
    (idx.n_sorted() + idx.size()) as i32
}

/// Coefficient of `T_i H~_idx` read off the `T_i J` formula.
pub fn ti_polynomial_side(i: usize, idx: &SplitIndex) -> Result<Expansion> {
    let g = idx.gamma();
    let t = QTRational::t();
    let one = QTRational::one();
    let conv = |c: &QTRational| &t * &c.star();
    let mut out = Expansion::new();
    if g[i - 1] == g[i] {
        out.insert(idx.clone(), one);
    } else if g[i - 1] > g[i] {
        let ((sw, c1), (same, c2)) = tj_action(i, idx)?;
        out.insert(sw, conv(&c1));
        out.insert(same, conv(&c2));
    } else {
        // through (T - 1)(T + t) = 0 from the other ordering
        let mut sg = g.to_vec();
        sg.swap(i - 1, i);
        let other = SplitIndex::new(idx.lambda(), &sg, idx.m())?;
        let ((_, a), (_, b)) = tj_action(i, &other)?;
        let (a, b) = (conv(&a), conv(&b));
        let s = &(&one - &t) - &b;
        let onto_other = (&(&s * &b) + &t).checked_div(&a)?;
        out.insert(idx.clone(), s);
        out.insert(other, onto_other);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn ti_case(label: &FixedPointLabel, i: usize) -> VerificationReport {
    let start = Instant::now();
    let case = format!("T{i} on {label}");
    let run = || -> Result<(String, String)> {
        let v = FixedPointVector::basis(label.clone())?;
        let geo = across_phi(&tgeom_apply(i, &v, false)?)?;
        let poly = ti_polynomial_side(i, &phi(label)?)?;
        Ok((render(&geo), render(&poly)))
    };
    match run() {
        Ok((l, r)) => VerificationReport::new("ti", case, l, r, start),
        Err(e) => VerificationReport::failed("ti", case, e, start),
    }
}

/// `T_i` equivariance for every fixed point with `|xi| <= max_size` and at
/// most `k_max` labels.
pub fn verify_ti(max_size: usize, k_max: usize) -> Vec<VerificationReport> {
    let mut cases = Vec::new();
    for k in 2..=k_max {
        for size in k..=max_size {
            for label in fixed_points(size, k) {
                for i in 1..k {
                    cases.push((label.clone(), i));
                }
            }
        }
    }
    cases.par_iter().map(|(l, i)| ti_case(l, *i)).collect()
}

/// `e_1 H~_src` from the closed Pieri coefficients.
pub fn e1_closed_side(src: &SplitIndex) -> Result<Expansion> {
    let tm1 = &QTRational::t() - &QTRational::one();
    let mut out = Expansion::new();
    for (target, d) in enumerate_support(src)? {
        let a = coefficient_a(&d)?;
        let c = &(&tm1 * &a.star()) * &QTRational::qt(0, norm_power(src) - norm_power(&target));
        out.insert(target, c);
    }
    Ok(out)
}

/// `e_1 H~_src` by multiplying and solving in the `H~` basis.
pub fn e1_direct_side(src: &SplitIndex, d: usize) -> Result<Expansion> {
    let h = build_htilde(src, d)?;
    Ok(expand_htilde(&e1_multiply(&h)?, src.size() + 1)?.into_iter().collect())
}

/// The geometric chain on `H_{phi^{-1}(src)}`, across `phi`.
pub fn e1_geom_side(src: &SplitIndex) -> Result<Expansion> {
    across_phi(&geom_chain_h(&phi_inverse(src))?)
}

fn e1_case(src: &SplitIndex, d: usize, direct: bool) -> Vec<VerificationReport> {
    let start = Instant::now();
    let geo = match e1_geom_side(src) {
        Ok(g) => render(&g),
        Err(e) => return vec![VerificationReport::failed("e1", format!("{src} geometric"), e, start)],
    };
    let mut out = Vec::new();
    let closed = e1_closed_side(src).map(|e| render(&e));
    out.push(match closed {
        Ok(c) => VerificationReport::new("e1", format!("{src} geometric vs closed"), geo.clone(), c, start),
        Err(e) => VerificationReport::failed("e1", format!("{src} geometric vs closed"), e, start),
    });
    if direct {
        let start = Instant::now();
        out.push(match e1_direct_side(src, d) {
            Ok(c) => VerificationReport::new("e1", format!("{src} geometric vs direct"), geo, render(&c), start),
            Err(e) => VerificationReport::failed("e1", format!("{src} geometric vs direct"), e, start),
        });
    }
    out
}

/// Three-way `e_1` check for every source with `|lambda|+|gamma| <= max_weight`
/// and `k <= k_max`. The direct route is skipped when `direct` is false.
pub fn verify_e1(max_weight: usize, k_max: usize, direct: bool) -> Vec<VerificationReport> {
    let d = degree_bound().max(max_weight + 1);
    let mut cases = Vec::new();
    for k in 0..=k_max {
        for size in 0..=max_weight {
            cases.extend(split_indices(size, k));
        }
    }
    cases.par_iter().flat_map(|s| e1_case(s, d, direct)).collect()
}

/// Expands `f` in `J_c` over the candidates, all with the same `m`.
pub fn expand_j(f: &XPolynomial, candidates: &[SplitIndex]) -> Result<Expansion> {
    let cols: Vec<BTreeMap<Vec<u32>, QTRational>> = candidates
        .iter()
        .map(|c| Ok(build_j(c)?.body.terms().map(|(e, v)| (e.clone(), v.clone())).collect()))
        .collect::<Result<_>>()?;
    let rhs = f.terms().map(|(e, v)| (e.clone(), v.clone())).collect();
    let x = solve_sparse(&cols, &rhs)?;
    Ok(candidates.iter().cloned().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// Moves a `J`-side expansion of an operator on `J_src` to the `H~` side:
/// star, then the normalizing powers.
pub fn j_to_htilde(src: &SplitIndex, e: &Expansion) -> Expansion {
    e.iter()
        .map(|(k, c)| (k.clone(), &c.star() * &QTRational::qt(0, norm_power(src) - norm_power(k))))
        .collect()
}

/// The pieces of the `y_2` example on `(|1,0)`.
pub struct Y2Example {
    pub geometric: Expansion,
    pub j_side: Expansion,
    pub j_pushed: Expansion,
    pub direct: Expansion,
    pub untwisted: Expansion,
}

pub fn y2_example_parts(d: usize) -> Result<Y2Example> {
    let src = SplitIndex::natural(&[], &[1, 0])?;
    let label = phi_inverse(&src);
    let v = FixedPointVector::basis(label.clone())?.scale(&h_scalar(&label.xi));
    let geometric = across_phi(&y2_geom(&v)?.to_h_basis())?;

    let m = 2;
    let n = m + 2;
    let j = build_j(&src.with_m(m)?)?.body;
    let candidates: Vec<SplitIndex> =
        split_indices(2, 2).into_iter().map(|c| c.with_m(m)).collect::<Result<_>>()?;
    // T_1^{-1} y_1 T_1 in the y block
    let f = dl_inverse_apply(m + 1, &XPolynomial::variable(n, m + 1).mul(&dl_apply(m + 1, &j)?)?)?;
    let j_side = expand_j(&f, &candidates)?;
    let j_pushed = j_to_htilde(&src, &j_side);
    let plain = XPolynomial::variable(n, m + 2).mul(&j)?;
    let untwisted = j_to_htilde(&src, &expand_j(&plain, &candidates)?);

    let h = build_htilde(&src, d)?;
    let direct = expand_htilde(&h.mul_y(2)?, 2)?.into_iter().collect();
    Ok(Y2Example { geometric, j_side, j_pushed, direct, untwisted })
}

/// `y_2` on `H_{(2,1),(q,t)}` against the `H~` side, both through the
/// conjugated `J` computation and by direct expansion. The last report is
/// the untwisted control and is expected to disagree.
pub fn verify_y2_example() -> Vec<VerificationReport> {
    let start = Instant::now();
    let parts = match y2_example_parts(degree_bound()) {
        Ok(p) => p,
        Err(e) => return vec![VerificationReport::failed("y2", "(|1,0)".into(), e, start)],
    };
    let geo = render(&parts.geometric);
    vec![
        VerificationReport::new("y2", "geometric vs conjugated J".into(), geo.clone(), render(&parts.j_pushed), start),
        VerificationReport::new("y2", "geometric vs direct".into(), geo.clone(), render(&parts.direct), start),
        VerificationReport::new("y2-control", "geometric vs plain y2 on J".into(), geo, render(&parts.untwisted), start),
    ]
}

/// A random element of `V_k` with small `p`-basis terms and monomial
/// coefficients.
pub fn random_vk<R: rand::Rng>(rng: &mut R, k: usize, d: usize, max_deg: usize, terms: usize) -> Result<crate::symfunc::VkElement> {
    use crate::symfunc::VkElement;
    let mut f = VkElement::zero(k, d);
    for _ in 0..terms {
        let xdeg = rng.gen_range(0..=max_deg);
        let mu = {
            let parts = crate::shapes::partitions(xdeg);
            parts[rng.gen_range(0..parts.len())].clone()
        };
        let mut beta = vec![0u32; k];
        for _ in 0..max_deg - xdeg {
            if k > 0 && rng.gen_bool(0.5) {
                beta[rng.gen_range(0..k)] += 1;
            }
        }
        let c = &QTRational::qt(rng.gen_range(-1..=2), rng.gen_range(-1..=2)) * &QTRational::from_int(rng.gen_range(1..=3));
        f = f.add(&VkElement::term(k, d, mu, beta, c)?)?;
    }
    Ok(f)
}

/// `d- T_k^{-1} .. T_1^{-1} d+` against multiplication by `e_1` on seeded
/// random elements.
pub fn verify_chain(samples: usize, k_max: usize, seed: u64) -> Vec<VerificationReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for s in 0..samples {
        let k = s % (k_max + 1);
        cases.push((s, random_vk(&mut rng, k, 6, 3, 3)));
    }
    cases
        .into_par_iter()
        .map(|(s, f)| {
            let start = Instant::now();
            let case = format!("sample {s}");
            let run = || -> Result<(String, String)> {
                let f = f?;
                let a = crate::polyrep::e1_chain(&f)?;
                let b = e1_multiply(&f)?;
                Ok((a.to_string(), b.to_string()))
            };
            match run() {
                Ok((l, r)) => VerificationReport::new("chain", case, l, r, start),
                Err(e) => VerificationReport::failed("chain", case, e, start),
            }
        })
        .collect()
}
