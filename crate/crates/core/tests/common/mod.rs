//! Seeded property checks shared by the integration tests and the acceptance
//! binary. Each returns the first counterexample as an error string.
#![allow(dead_code)]

use psmac_core::nonsym::{dl_apply, evaluation_check};
use psmac_core::partial::{build_j, is_integral_poly, stability_probe};
use psmac_core::polyrep::{dl_star_apply, dl_star_inverse_apply, sf_t_apply, sf_t_inverse_apply};
use psmac_core::shapes::{compositions, fixed_points, phi, phi_inverse, split_indices};
use psmac_core::symfunc::VkElement;
use psmac_core::verify::{random_vk, verify_chain};
use psmac_core::{QTRational, Result, XPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = std::result::Result<(), String>;

fn fail<T: std::fmt::Debug>(what: &str, x: T) -> Check {
    Err(format!("{what}: {x:?}"))
}

pub fn random_xpoly(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> XPolynomial {
    let mut f = XPolynomial::zero(n);
    for _ in 0..terms {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let c = &QTRational::qt(rng.gen_range(-1..=2), rng.gen_range(-1..=2)) * &QTRational::from_int(rng.gen_range(-3..=3));
        f.add_term(e, &c);
    }
    f
}

fn unwrap<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `(T - t)(T + 1) = 0` and the braid relation for the Demazure-Lusztig
/// operators on `x`.
pub fn hecke_x(seed: u64, cases: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = QTRational::t();
    for _ in 0..cases {
        let f = random_xpoly(&mut rng, 3, 4);
        for i in 1..3 {
            let tf = unwrap(dl_apply(i, &f))?;
            let ttf = unwrap(dl_apply(i, &tf))?;
            let z = unwrap(unwrap(ttf.sub(&tf.scalar_mul(&(&t - &QTRational::one()))))?.sub(&f.scalar_mul(&t)))?;
            if !z.is_zero() {
                return fail("quadratic relation on x", (i, f.pretty()));
            }
        }
        let a = unwrap(dl_apply(1, &f).and_then(|g| dl_apply(2, &g)).and_then(|g| dl_apply(1, &g)))?;
        let b = unwrap(dl_apply(2, &f).and_then(|g| dl_apply(1, &g)).and_then(|g| dl_apply(2, &g)))?;
        if a != b {
            return fail("braid relation on x", f.pretty());
        }
    }
    Ok(())
}

type Op = fn(usize, &VkElement) -> Result<VkElement>;

/// `(T - 1)(T + t) = 0`, inverses and braids for the `y`-side operators.
pub fn hecke_y(seed: u64, cases: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = QTRational::t();
    let one = QTRational::one();
    let ops: [(&str, Op, Op); 2] =
        [("T", sf_t_apply, sf_t_inverse_apply), ("T*", dl_star_apply, dl_star_inverse_apply)];
    for _ in 0..cases {
        let f = unwrap(random_vk(&mut rng, 3, 6, 4, 3))?;
        for (name, op, inv) in ops {
            for i in 1..3 {
                let tf = unwrap(op(i, &f))?;
                let ttf = unwrap(op(i, &tf))?;
                let z = unwrap(unwrap(ttf.add(&tf.scale(&(&t - &one))))?.sub(&f.scale(&t)))?;
                if !z.is_zero() {
                    return fail(&format!("quadratic relation for {name}{i}"), f.to_string());
                }
                if unwrap(inv(i, &tf))? != f {
                    return fail(&format!("inverse of {name}{i}"), f.to_string());
                }
            }
            let a = unwrap(op(1, &f).and_then(|g| op(2, &g)).and_then(|g| op(1, &g)))?;
            let b = unwrap(op(2, &f).and_then(|g| op(1, &g)).and_then(|g| op(2, &g)))?;
            if a != b {
                return fail(&format!("braid relation for {name}"), f.to_string());
            }
        }
    }
    Ok(())
}

/// The operator chain against multiplication by `e_1`.
pub fn chain_is_e1(seed: u64, samples: usize) -> Check {
    match verify_chain(samples, 3, seed).into_iter().find(|r| !r.ok) {
        Some(r) => fail("e1 chain", r),
        None => Ok(()),
    }
}

/// Setting an extra symmetric variable to zero recovers `P` in fewer
/// variables.
pub fn stability(max_size: usize, k_max: usize) -> Check {
    for k in 0..=k_max {
        for size in 0..=max_size {
            for idx in split_indices(size, k) {
                let m = idx.lambda().len().max(1);
                if !unwrap(stability_probe(&idx, m, m + 1))? {
                    return fail("stability", idx.to_string());
                }
            }
        }
    }
    Ok(())
}

/// `J` has polynomial coefficients.
pub fn j_integrality(max_size: usize, k_max: usize) -> Check {
    for k in 0..=k_max {
        for size in 0..=max_size {
            for idx in split_indices(size, k) {
                let j = unwrap(build_j(&idx))?;
                if !j.body.terms().all(|(_, c)| is_integral_poly(c)) {
                    return fail("integrality", idx.to_string());
                }
            }
        }
    }
    Ok(())
}

/// `phi` and its inverse are mutually inverse on both index sets.
pub fn phi_roundtrips(max_size: usize, k_max: usize) -> Check {
    for k in 0..=k_max {
        for size in 0..=max_size {
            for label in fixed_points(size, k) {
                let idx = unwrap(phi(&label))?;
                if phi_inverse(&idx) != label {
                    return fail("phi then inverse", label.to_string());
                }
            }
            for idx in split_indices(size, k) {
                let back = unwrap(phi(&phi_inverse(&idx)))?;
                if back != idx {
                    return fail("inverse then phi", idx.to_string());
                }
            }
        }
    }
    Ok(())
}

/// The evaluation formula for every composition with `|lambda| <= max_size`
/// in at most `max_n` variables.
pub fn evaluation(max_size: usize, max_n: usize) -> Check {
    for n in 1..=max_n {
        for s in 0..=max_size {
            for lam in compositions(s, n) {
                let c = unwrap(evaluation_check(&lam))?;
                if !c.equal {
                    return fail("evaluation formula", (lam, c.lhs.pretty(), c.rhs.pretty()));
                }
            }
        }
    }
    Ok(())
}

/// Counts of fixed points and split indices agree size by size.
pub fn index_counts(max_size: usize, k_max: usize) -> Check {
    for k in 0..=k_max {
        for size in k..=max_size {
            let a = fixed_points(size, k).len();
            let b = split_indices(size - k, k).len();
            if a != b {
                return fail("fixed points vs split indices", (size, k, a, b));
            }
        }
    }
    Ok(())
}
