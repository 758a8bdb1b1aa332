//! Exhaustive point counts of `U~ -> U` over small prime fields.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::varieties::Case;

/// Largest parameter space enumerated.
pub const POINT_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub case: String,
    pub q: u64,
    /// `|U~(F_q)|`.
    pub total: u128,
    /// `|G(F_q)|`.
    pub group_order: u128,
    /// `|U(F_q)|`, the number of nonempty fibers.
    pub base: u128,
    /// Fiber size -> number of fibers of that size.
    pub histogram: BTreeMap<u128, u128>,
    pub verdict: bool,
}

/// `|GL_r(F_q)|`.
pub fn gl_order(q: u128, r: u32) -> u128 {
    (0..r).map(|i| q.pow(r) - q.pow(i)).product()
}

/// `|Sp_{2r}(F_q)|`.
pub fn sp_order(q: u128, r: u32) -> u128 {
    q.pow(r * r) * (1..=r).map(|i| q.pow(2 * i) - 1).product::<u128>()
}

/// Rank of a small matrix over `F_p`, entries in `[0, p)`.
fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Matrix number `idx` in base-`q` enumeration order.
fn decode(mut idx: u64, rows: usize, cols: usize, q: u64) -> Vec<Vec<u64>> {
    let mut a = vec![vec![0; cols]; rows];
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = idx % q;
            idx /= q;
        }
    }
    a
}

fn all_of_rank(rows: usize, cols: usize, rank: usize, q: u64) -> Vec<Vec<Vec<u64>>> {
    let count = q.pow((rows * cols) as u32);
    (0..count)
        .into_par_iter()
        .map(|i| decode(i, rows, cols, q))
        .filter(|a| rank_mod(a.clone(), q) == rank)
        .collect()
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() * b[0].len());
    for row in a {
        out.extend((0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, bl)| x * bl[j]).sum::<u64>() % p));
    }
    out
}

/// Upper triangle of `phi^T J~ phi` with `J~` the standard form of size
/// `phi.len()`.
fn pulled_back_form(phi: &[Vec<u64>], p: u64) -> Vec<u64> {
    let k = phi.len();
    let r = k / 2;
    let n = phi[0].len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            // <e_l, e_{k-1-l}> = +1 for l < r and -1 for l >= r
            let mut s = 0u64;
            for l in 0..k {
                let prod = phi[l][i] * phi[k - 1 - l][j] % p;
                s = if l < r { (s + prod) % p } else { (s + p - prod) % p };
            }
            out.push(s);
        }
    }
    out
}

/// Enumerates `U~(F_q)`, buckets by the image under `pi`, and checks that
/// every fiber has `|G(F_q)|` points.
pub fn count_points_bundle(case: Case, q: u64) -> Result<PointCount> {
    let field = Field::prime(q)?;
    let p = field.characteristic();
    let size = (q as u128).checked_pow(case.param_vars() as u32).unwrap_or(u128::MAX);
    if size > POINT_CAP {
        return Err(Error::TooLarge(format!(
            "{case} over F_{q} has {size} parameter points, cap {POINT_CAP}"
        )));
    }
    let r = case.r();
    let mut fibers: HashMap<Vec<u64>, u128> = HashMap::new();
    let group_order = match case {
        Case::Gl { m, n, .. } => {
            let phis = all_of_rank(m, r, r, p);
            let psis = all_of_rank(r, n, r, p);
            let parts: Vec<HashMap<Vec<u64>, u128>> = phis
                .par_iter()
                .map(|phi| {
                    let mut local = HashMap::new();
                    for psi in &psis {
                        *local.entry(matmul(phi, psi, p)).or_insert(0) += 1;
                    }
                    local
                })
                .collect();
            for part in parts {
                for (k, v) in part {
                    *fibers.entry(k).or_insert(0) += v;
                }
            }
            gl_order(q as u128, r as u32)
        }
        Case::Sp { n, .. } => {
            for phi in all_of_rank(2 * r, n, 2 * r, p) {
                *fibers.entry(pulled_back_form(&phi, p)).or_insert(0) += 1;
            }
            sp_order(q as u128, r as u32)
        }
    };
    let total: u128 = fibers.values().sum();
    let base = fibers.len() as u128;
    let mut histogram = BTreeMap::new();
    for &size in fibers.values() {
        *histogram.entry(size).or_insert(0) += 1;
    }
    let verdict = histogram.keys().all(|&s| s == group_order) && total == group_order * base;
    Ok(PointCount {
        case: case.to_string(),
        q,
        total,
        group_order,
        base,
        histogram,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(2, 1), 1);
        assert_eq!(gl_order(3, 1), 2);
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(sp_order(2, 1), 6);
        assert_eq!(sp_order(3, 1), 24);
        assert_eq!(sp_order(2, 2), 720);
    }

    #[test]
    fn small_rank() {
        assert_eq!(rank_mod(vec![vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 1]], 5), 2);
    }

    #[test]
    fn gl_rank_one() {
        let c = count_points_bundle(Case::gl(2, 2, 2).unwrap(), 2).unwrap();
        assert_eq!((c.total, c.group_order, c.base), (9, 1, 9));
        assert!(c.verdict);
        let c = count_points_bundle(Case::gl(2, 2, 2).unwrap(), 3).unwrap();
        assert_eq!(c.group_order, 2);
        assert_eq!(c.histogram.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert!(c.verdict);
    }

    #[test]
    fn sp_four() {
        let c = count_points_bundle(Case::sp(4, 2).unwrap(), 2).unwrap();
        assert_eq!(c.group_order, 6);
        assert_eq!(c.histogram.keys().copied().collect::<Vec<_>>(), vec![6]);
        assert!(c.verdict);
    }

    #[test]
    fn cap_and_prime() {
        assert!(matches!(
            count_points_bundle(Case::gl(4, 4, 3).unwrap(), 3),
            Err(Error::TooLarge(_))
        ));
        assert!(count_points_bundle(Case::gl(2, 2, 2).unwrap(), 4).is_err());
    }
}
