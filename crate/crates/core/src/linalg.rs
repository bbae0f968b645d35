//! Exact linear solves over `Q(q, t)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::QTRational;
use crate::error::{Error, Result};

/// Finds `x` with `sum_j x_j columns[j] = rhs`, where vectors are sparse maps
/// keyed by `K`. The columns must be linearly independent.
///
/// Large systems are first reduced modulo a prime at a fixed point `(q, t)`.
/// That gives the support of the solution and a square subsystem, which is
/// solved exactly and then checked against every row. Anything unexpected
/// falls back to plain elimination.
pub fn solve_sparse<K: Ord + Clone>(
    columns: &[BTreeMap<K, QTRational>],
    rhs: &BTreeMap<K, QTRational>,
) -> Result<Vec<QTRational>> {
    if columns.len() > 6 {
        if let Some(x) = solve_by_support(columns, rhs) {
            return Ok(x);
        }
    }
    solve_dense(columns, rhs)
}

const P: u64 = (1 << 61) - 1;
const Q0: u64 = 1_000_003;
const S0: u64 = 7_919;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn poly_mod(p: &crate::algebra::QtPoly) -> u64 {
    let pb = num_bigint::BigInt::from(P);
    let mut acc = 0u64;
    for ((a, b), c) in p.terms() {
        let c = ((c % &pb) + &pb) % &pb;
        let c: u64 = c.try_into().expect("reduced below P");
        let v = mulmod(c, mulmod(powmod(Q0, *a as u64), powmod(S0, *b as u64)));
        acc = (acc + v) % P;
    }
    acc
}

/// Value at `q = Q0`, `t = S0^2`, or `None` if the denominator vanishes there.
fn eval_mod(x: &QTRational) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let (n, d) = x.parts();
    let dv = poly_mod(&d);
    if dv == 0 {
        return None;
    }
    Some(mulmod(poly_mod(&n), invmod(dv)))
}

/// Row reduction mod `P` restricted to `cols`. Returns the pivot row per
/// column, or `None` when the columns are dependent at this point.
fn pivot_rows(m: &[Vec<u64>], cols: &[usize], aug: Option<usize>) -> Option<(Vec<usize>, Vec<u64>)> {
    let mut rows: Vec<(usize, Vec<u64>)> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<u64> = cols.iter().map(|&c| r[c]).collect();
            if let Some(a) = aug {
                v.push(r[a]);
            }
            (i, v)
        })
        .collect();
    let n = cols.len();
    let width = n + aug.is_some() as usize;
    let mut piv = Vec::with_capacity(n);
    for col in 0..n {
        let top = col;
        let r = (top..rows.len()).find(|&r| rows[r].1[col] != 0)?;
        rows.swap(top, r);
        let inv = invmod(rows[top].1[col]);
        let prow: Vec<u64> = rows[top].1.iter().map(|&v| mulmod(v, inv)).collect();
        for (i, (_, row)) in rows.iter_mut().enumerate() {
            if i == top || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for c in col..width {
                row[c] = (row[c] + P - mulmod(f, prow[c])) % P;
            }
        }
        rows[top].1 = prow;
        piv.push(rows[top].0);
    }
    let sol = if aug.is_some() { (0..n).map(|i| rows[i].1[n]).collect() } else { Vec::new() };
    Some((piv, sol))
}

fn solve_by_support<K: Ord + Clone>(
    columns: &[BTreeMap<K, QTRational>],
    rhs: &BTreeMap<K, QTRational>,
) -> Option<Vec<QTRational>> {
    let keys: Vec<&K> = columns
        .iter()
        .flat_map(|c| c.keys())
        .chain(rhs.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ncols = columns.len();
    let mut m = Vec::with_capacity(keys.len());
    for k in &keys {
        let mut r = Vec::with_capacity(ncols + 1);
        for c in columns {
            r.push(c.get(*k).map_or(Some(0), eval_mod)?);
        }
        r.push(rhs.get(*k).map_or(Some(0), eval_mod)?);
        m.push(r);
    }
    let all: Vec<usize> = (0..ncols).collect();
    let (_, sol) = pivot_rows(&m, &all, Some(ncols))?;
    let support: Vec<usize> = (0..ncols).filter(|&j| sol[j] != 0).collect();
    let (rows, _) = pivot_rows(&m, &support, None)?;
    let sub_cols: Vec<BTreeMap<usize, QTRational>> = support
        .iter()
        .map(|&j| rows.iter().enumerate().filter_map(|(i, &r)| columns[j].get(keys[r]).map(|v| (i, v.clone()))).collect())
        .collect();
    let sub_rhs: BTreeMap<usize, QTRational> =
        rows.iter().enumerate().filter_map(|(i, &r)| rhs.get(keys[r]).map(|v| (i, v.clone()))).collect();
    let xs = solve_dense(&sub_cols, &sub_rhs).ok()?;
    // exact check on every row
    for k in &keys {
        let mut acc = rhs.get(*k).cloned().unwrap_or_else(QTRational::zero);
        for (x, &j) in xs.iter().zip(&support) {
            if let Some(v) = columns[j].get(*k) {
                acc = &acc - &(x * v);
            }
        }
        if !acc.is_zero() {
            return None;
        }
    }
    let mut out = vec![QTRational::zero(); ncols];
    for (x, j) in xs.into_iter().zip(support) {
        out[j] = x;
    }
    Some(out)
}

fn solve_dense<K: Ord + Clone>(
    columns: &[BTreeMap<K, QTRational>],
    rhs: &BTreeMap<K, QTRational>,
) -> Result<Vec<QTRational>> {
    let keys: BTreeSet<&K> = columns.iter().flat_map(|c| c.keys()).chain(rhs.keys()).collect();
    let ncols = columns.len();
    let mut rows: Vec<Vec<QTRational>> = keys
        .iter()
        .map(|k| {
            let mut r: Vec<QTRational> = columns.iter().map(|c| c.get(*k).cloned().unwrap_or_else(QTRational::zero)).collect();
            r.push(rhs.get(*k).cloned().unwrap_or_else(QTRational::zero));
            r
        })
        .collect();
    let mut pivots = Vec::with_capacity(ncols);
    let mut top = 0;
    for col in 0..ncols {
        // smallest nonzero entry as pivot
        let piv = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| rows[r][col].size());
        let Some(piv) = piv else {
            return Err(Error::Singular(format!("column {col} is dependent on earlier columns")));
        };
        rows.swap(top, piv);
        let inv = rows[top][col].inv()?;
        let prow: Vec<QTRational> = rows[top].iter().map(|v| v * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..=ncols {
                if !prow[c].is_zero() {
                    row[c] = &row[c] - &(&f * &prow[c]);
                }
            }
        }
        rows[top] = prow;
        pivots.push(top);
        top += 1;
    }
    if rows[top..].iter().any(|r| !r[ncols].is_zero()) {
        return Err(Error::Inconsistent("right-hand side is outside the span".into()));
    }
    Ok(pivots.into_iter().map(|r| rows[r][ncols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let q = QTRational::q();
        let t = QTRational::t();
        let c0 = BTreeMap::from([(0, QTRational::one()), (1, q.clone())]);
        let c1 = BTreeMap::from([(0, t.clone()), (1, QTRational::one())]);
        // 2*c0 + q*c1
        let rhs = BTreeMap::from([(0, &QTRational::from_int(2) + &(&q * &t)), (1, &(&QTRational::from_int(2) * &q) + &q)]);
        let x = solve_sparse(&[c0.clone(), c1.clone()], &rhs).unwrap();
        assert_eq!(x, vec![QTRational::from_int(2), q]);
        assert!(solve_sparse(&[c0.clone(), c0.clone()], &rhs).is_err());
        let bad = BTreeMap::from([(2, QTRational::one())]);
        assert!(matches!(solve_sparse(&[c0, c1], &bad), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn support_route_agrees_with_dense() {
        let q = QTRational::q();
        let t = QTRational::t();
        // upper triangular 8x8 with entries q^i t^j
        let cols: Vec<BTreeMap<usize, QTRational>> = (0..8)
            .map(|j| (0..=j).map(|i| (i, &QTRational::qt(i as i32, j as i32) + &QTRational::from_int(1 + (i == j) as i64))).collect())
            .collect();
        let mut rhs = BTreeMap::new();
        for (j, c) in [(2usize, &q - &t), (5, QTRational::from_int(3))] {
            for (k, v) in &cols[j] {
                let e = rhs.entry(*k).or_insert_with(QTRational::zero);
                *e = &*e + &(&c * v);
            }
        }
        let fast = solve_sparse(&cols, &rhs).unwrap();
        let slow = solve_dense(&cols, &rhs).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast[2], &q - &t);
        assert!(fast[0].is_zero());
    }
}
