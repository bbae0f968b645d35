mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::Check;
use psmac_core::fixedpoints::{dplus_geom, e1_chain_geom, h_scalar, FixedPointVector};
use psmac_core::partial::build_jw0;
use psmac_core::pieri::*;
use psmac_core::polyrep::{build_htilde, dminus_poly, e1_multiply, expand_htilde};
use psmac_core::shapes::split_indices;
use psmac_core::symfunc::VkElement;
use psmac_core::verify::{verify_ti, y2_example_parts, Expansion};
use psmac_core::{FixedPointLabel, QTRational, SplitIndex, XPolynomial};

type Keyed = BTreeMap<String, QTRational>;

fn idx(l: &[usize], g: &[usize]) -> SplitIndex {
    SplitIndex::natural(l, g).unwrap()
}

fn q() -> QTRational {
    QTRational::q()
}

fn t() -> QTRational {
    QTRational::t()
}

fn one() -> QTRational {
    QTRational::one()
}

fn label(xi: &str, w: &str) -> FixedPointLabel {
    FixedPointLabel::parse(xi, w).unwrap()
}

fn show(m: &Keyed) -> String {
    let v: Vec<String> = m.iter().map(|(k, c)| format!("{k}: {}", c.pretty())).collect();
    v.join("; ")
}

fn same(what: &str, got: Keyed, want: &Keyed) -> Check {
    if got == *want {
        Ok(())
    } else {
        Err(format!("{what}: got {} want {}", show(&got), show(want)))
    }
}

fn by_index<I: IntoIterator<Item = (SplitIndex, QTRational)>>(it: I) -> Keyed {
    it.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let (l, g) = k.key();
            (format!("{l:?}|{g:?}"), c)
        })
        .collect()
}

fn from_expansion(e: &Expansion) -> Keyed {
    by_index(e.iter().map(|(k, c)| (k.clone(), c.clone())))
}

fn by_label(v: &FixedPointVector) -> Keyed {
    v.terms().map(|(l, c)| (l.to_string(), c.clone())).collect()
}

fn e(v: &[(SplitIndex, QTRational)]) -> Keyed {
    by_index(v.iter().cloned())
}

fn worked_j() -> Keyed {
    let a = QTRational::one_minus(1, 1);
    e(&[
        (idx(&[2], &[0, 0]), a.inv().unwrap()),
        (idx(&[1], &[0, 1]), &QTRational::one_minus(1, 0) / &(&QTRational::one_minus(0, 1) * &a)),
    ])
}

fn worked_h() -> Keyed {
    let tq = &t() - &q();
    e(&[
        (idx(&[2], &[0, 0]), &(&t() - &one()) / &tq),
        (idx(&[1], &[0, 1]), &QTRational::one_minus(1, 0) / &tq),
    ])
}

fn c1() -> Check {
    let src = idx(&[], &[0, 1]);
    let oracle = brute_force_expand(&src, default_oracle_n(&src)).map_err(|e| e.to_string())?;
    same("oracle", by_index(oracle), &worked_j())?;
    let closed = enumerate_support(&src)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(t, d)| Ok((t, coefficient_a(&d)?)))
        .collect::<psmac_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    same("closed", by_index(closed), &worked_j())
}

fn c2() -> Check {
    let h = build_htilde(&idx(&[], &[0, 1]), 8).map_err(|e| e.to_string())?;
    let prod = e1_multiply(&h).map_err(|e| e.to_string())?;
    let got = expand_htilde(&prod, 2).map_err(|e| e.to_string())?;
    same("e1 H~", by_index(got), &worked_h())
}

fn c3() -> Check {
    let i = FixedPointVector::basis(label("2,1", "t,q")).unwrap();
    let up = dplus_geom(&i).map_err(|e| e.to_string())?;
    let want_up: Keyed = [(label("3,1", "t^2,t,q").to_string(), -&QTRational::qt(0, 2))].into_iter().collect();
    same("d+", by_label(&up), &want_up)?;
    let h = i.scale(&h_scalar(&[2, 1]));
    let got = e1_chain_geom(&h).map_err(|e| e.to_string())?.to_h_basis();
    let tq = &t() - &q();
    let want: Keyed = [
        (label("3,1", "t^2,t").to_string(), &(&t() - &one()) / &tq),
        (label("3,1", "t^2,q").to_string(), &QTRational::one_minus(1, 0) / &tq),
    ]
    .into_iter()
    .collect();
    same("chain", by_label(&got), &want)
}

fn c4() -> Check {
    let p = y2_example_parts(8).map_err(|e| e.to_string())?;
    let t2 = QTRational::qt(0, 2);
    let want = e(&[
        (idx(&[], &[1, 1]), (&t() - &q()).inv().unwrap()),
        (idx(&[1], &[0, 1]), &(&(&t() - &one()) * &t()) / &(&(&q() - &t()) * &(&t2 - &q()))),
        (idx(&[1], &[1, 0]), (&q() - &t2).inv().unwrap()),
    ]);
    same("geometric", from_expansion(&p.geometric), &want)?;
    same("J side pushed", from_expansion(&p.j_pushed), &want)?;
    same("direct", from_expansion(&p.direct), &want)?;
    if from_expansion(&p.untwisted) == want {
        return Err("untwisted control agrees".into());
    }
    Ok(())
}

fn c5() -> Check {
    let r = verify_ti(6, 3);
    if r.is_empty() {
        return Err("empty sweep".into());
    }
    match r.iter().find(|x| !x.ok) {
        Some(x) => Err(format!("{} of {} fail, first {}: {} vs {}", r.iter().filter(|x| !x.ok).count(), r.len(), x.case, x.lhs, x.rhs)),
        None => Ok(()),
    }
}

fn c6() -> Check {
    let mut n = 0;
    for size in 0..=4 {
        for k in 0..=2 {
            for src in split_indices(size, k) {
                for (tg, _) in enumerate_support(&src).map_err(|e| e.to_string())? {
                    let r = match_check(&src, &tg).map_err(|e| e.to_string())?;
                    if !r.matches {
                        return Err(format!("{r:?}"));
                    }
                    n += 1;
                }
            }
        }
    }
    if n == 0 {
        return Err("empty sweep".into());
    }
    Ok(())
}

fn c7() -> Check {
    let d = 6;
    for k in 0..=3 {
        let zeros = vec![0; k];
        let h0 = build_htilde(&idx(&[], &zeros), d).map_err(|e| e.to_string())?;
        if *h0 != VkElement::one(k, d) {
            return Err(format!("H~(|0^{k}) = {h0}"));
        }
        let m = 3;
        let jw = build_jw0(&SplitIndex::new(&[1], &zeros, m).unwrap()).map_err(|e| e.to_string())?.body;
        let mut e1 = XPolynomial::zero(m + k);
        for i in 1..=m {
            e1 = e1.add(&XPolynomial::variable(m + k, i)).unwrap();
        }
        if jw != e1.scalar_mul(&QTRational::one_minus(0, 1)) {
            return Err(format!("J^w0(1|0^{k}) is not (1-t) e1"));
        }
        let h1 = build_htilde(&idx(&[1], &zeros), d).map_err(|e| e.to_string())?;
        let e1k = VkElement::elementary(1, k, d).unwrap();
        if *h1 != e1k {
            return Err(format!("H~(1|0^{k}) = {h1}"));
        }
        if k >= 1 {
            let down = dminus_poly(&h0).map_err(|e| e.to_string())?;
            let want = build_htilde(&idx(&[1], &vec![0; k - 1]), d).map_err(|e| e.to_string())?;
            if down != *want {
                return Err(format!("d- H~(|0^{k}) = {down}"));
            }
        }
    }
    Ok(())
}

fn c8() -> Check {
    common::hecke_x(3, 40)?;
    common::hecke_y(5, 25)?;
    common::chain_is_e1(7, 40)?;
    common::stability(3, 2)?;
    common::j_integrality(4, 2)?;
    common::phi_roundtrips(8, 3)?;
    common::evaluation(5, 4)
}

fn c9() -> Check {
    let a = enumerate_support(&idx(&[], &[0, 1])).map_err(|e| e.to_string())?.len();
    let b = enumerate_support(&idx(&[], &[1, 0])).map_err(|e| e.to_string())?.len();
    if (a, b) == (2, 3) {
        Ok(())
    } else {
        Err(format!("sizes {a} and {b}"))
    }
}

fn c10() -> Check {
    let rows = worked_example_diagnostic().map_err(|e| e.to_string())?;
    for r in &rows {
        let verdict = if r.equal { "equal" } else { "differs" };
        println!(
            "     {}: {} -> {}: engine {} vs worked {} ({verdict})",
            r.reading,
            r.source,
            r.target,
            r.engine.as_deref().unwrap_or("none"),
            r.expected
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("worked e1 J expansion, oracle and closed form", c1),
        ("e1 H~ expansion at D=8", c2),
        ("geometric chain on H_(2,1),(t,q)", c3),
        ("y2 triple agreement, untwisted control fails", c4),
        ("T_i equivariance, |xi| <= 6, k <= 3", c5),
        ("Pieri match sweep, |lambda|+|gamma| <= 4, k <= 2", c6),
        ("normalization chain, k <= 3", c7),
        ("property suites", c8),
        ("support cardinalities", c9),
        ("worked integral-form coefficient (diagnostic, reported)", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let ms = start.elapsed().as_millis();
        match r {
            Ok(()) => println!("PASS {:>2} {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
