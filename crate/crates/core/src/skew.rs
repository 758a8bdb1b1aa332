//! Alternating matrices: Pfaffians, congruence normal form and
//! factorization through the standard symplectic form.
//!
//! Only the strict upper triangle is stored. The lower triangle is read as
//! the negation and the diagonal as zero, so a `SkewMatrix` is alternating in
//! every characteristic, including 2.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{CommRing, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix<E> {
    n: usize,
    upper: Vec<E>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // rows 0..i contribute (n-1) + (n-2) + ... + (n-i) entries
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl<E: Clone> SkewMatrix<E> {
    /// Builds from a function evaluated on every `i < j` (0-based).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Stored entry `a_ij` for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &E {
        &self.upper[upper_index(self.n, i, j)]
    }

    pub fn set_upper(&mut self, i: usize, j: usize, v: E) {
        let k = upper_index(self.n, i, j);
        self.upper[k] = v;
    }

    /// Full entry `a_ij`, derived from the upper triangle.
    pub fn entry<R: CommRing<Elem = E>>(&self, ring: &R, i: usize, j: usize) -> E {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper(i, j).clone(),
            Equal => ring.zero(),
            Greater => ring.neg(self.upper(j, i)),
        }
    }

    /// Principal submatrix on increasing indices.
    pub fn principal(&self, idx: &[usize]) -> SkewMatrix<E> {
        SkewMatrix::from_fn(idx.len(), |a, b| self.upper(idx[a], idx[b]).clone())
    }

    /// Strict upper triangle entries as `(i, j, value)`, row-major.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.upper.iter())
            .map(|((i, j), v)| (i, j, v))
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> SkewMatrix<F> {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }
}

impl SkewMatrix<Scalar> {
    pub fn zero(field: Field, n: usize) -> Self {
        SkewMatrix::from_fn(n, |_, _| field.zero())
    }

    /// Reads the upper triangle of a square matrix, checking it is alternating.
    pub fn from_exact(a: &ExactMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        for i in 0..n {
            if !a.get(i, i).is_zero() {
                return Err(Error::Precondition(format!("nonzero diagonal entry at {i}")));
            }
            for j in i + 1..n {
                if *a.get(j, i) != -a.get(i, j) {
                    return Err(Error::Precondition(format!("not alternating at ({i},{j})")));
                }
            }
        }
        Ok(SkewMatrix::from_fn(n, |i, j| a.get(i, j).clone()))
    }

    pub fn to_exact(&self, field: Field) -> ExactMatrix {
        ExactMatrix::from_fn(field, self.n, self.n, |i, j| self.entry(&field, i, j))
    }
}

/// Perfect matchings of `{0..n}` as the permutations of the Pfaffian sum:
/// `sigma = (s1, s2, s3, s4, ...)` with `s1 < s3 < ...` and each pair
/// increasing. Returned in lexicographic order of `sigma`, with the sign of
/// `sigma` as a permutation.
pub fn pfaffian_terms(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            cur.push(first);
            cur.push(partner);
            rec(free, cur, out);
            cur.pop();
            cur.pop();
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::with_capacity(n), &mut out);
    out.into_iter()
        .map(|sigma| {
            let mut inversions = 0usize;
            for a in 0..n {
                for b in a + 1..n {
                    if sigma[a] > sigma[b] {
                        inversions += 1;
                    }
                }
            }
            (sigma, inversions % 2 == 1)
        })
        .collect()
}

/// Pfaffian as the signed sum over perfect matchings.
pub fn pfaffian<R: CommRing>(ring: &R, a: &SkewMatrix<R::Elem>) -> Result<R::Elem> {
    if a.n % 2 == 1 {
        return Err(Error::OddSize(a.n));
    }
    let mut acc = ring.zero();
    for (sigma, odd) in pfaffian_terms(a.n) {
        let mut t = ring.one();
        for pair in sigma.chunks(2) {
            t = ring.mul(&t, a.upper(pair[0], pair[1]));
            if ring.is_zero(&t) {
                break;
            }
        }
        acc = if odd { ring.sub(&acc, &t) } else { ring.add(&acc, &t) };
    }
    Ok(acc)
}

/// Pfaffian by expansion along the first row:
/// `Pf(A) = sum_j (-1)^j a_1j Pf(A minus rows/cols 1, j)` (1-based `j`).
pub fn pfaffian_expand<R: CommRing>(ring: &R, a: &SkewMatrix<R::Elem>) -> Result<R::Elem> {
    fn rec<R: CommRing>(ring: &R, a: &SkewMatrix<R::Elem>, idx: &[usize]) -> R::Elem {
        if idx.is_empty() {
            return ring.one();
        }
        let mut acc = ring.zero();
        for k in 1..idx.len() {
            let entry = a.upper(idx[0], idx[k]);
            if ring.is_zero(entry) {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .enumerate()
                .filter(|&(p, _)| p + 1 != k)
                .map(|(_, &v)| v)
                .collect();
            let t = ring.mul(entry, &rec(ring, a, &rest));
            // 1-based column index is k + 1; the sign is positive for even ones
            acc = if k % 2 == 1 {
                ring.add(&acc, &t)
            } else {
                ring.sub(&acc, &t)
            };
        }
        acc
    }
    if a.n % 2 == 1 {
        return Err(Error::OddSize(a.n));
    }
    let idx: Vec<usize> = (0..a.n).collect();
    Ok(rec(ring, a, &idx))
}

/// The `2r x 2r` form `[[0, J], [-J, 0]]` with `J` the `r x r` anti-diagonal
/// matrix of ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    r: usize,
    matrix: ExactMatrix,
}

impl StandardForm {
    pub fn new(field: Field, r: usize) -> StandardForm {
        let matrix = ExactMatrix::from_fn(field, 2 * r, 2 * r, |i, j| {
            if i < r && j == 2 * r - 1 - i {
                field.one()
            } else if i >= r && j == 2 * r - 1 - i {
                -field.one()
            } else {
                field.zero()
            }
        });
        StandardForm { r, matrix }
    }

    pub fn half_rank(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// `diag(J~_r, 0)` of size `n >= 2r`.
    pub fn padded(&self, n: usize) -> ExactMatrix {
        let f = self.matrix.field();
        ExactMatrix::from_fn(f, n, n, |i, j| {
            if i < 2 * self.r && j < 2 * self.r {
                self.matrix.get(i, j).clone()
            } else {
                f.zero()
            }
        })
    }

    pub fn skew(&self) -> SkewMatrix<Scalar> {
        SkewMatrix::from_fn(2 * self.r, |i, j| self.matrix.get(i, j).clone())
    }

    /// `<x, y> = x^T J~ y`.
    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let jy = self.matrix.mul_vec(y).expect("vector length 2r");
        x.iter()
            .zip(&jy)
            .fold(self.matrix.field().zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Invertible `x` and `r` with `x^T a x = diag(J~_r, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub x: ExactMatrix,
    pub r: usize,
}

fn congruence(cur: &mut ExactMatrix, x: &mut ExactMatrix, e: &ExactMatrix) {
    *cur = e.transpose().mul(cur).and_then(|m| m.mul(e)).expect("square");
    *x = x.mul(e).expect("square");
}

fn swap_matrix(field: Field, n: usize, a: usize, b: usize) -> ExactMatrix {
    let mut e = ExactMatrix::identity(field, n);
    if a != b {
        e.set(a, a, field.zero());
        e.set(b, b, field.zero());
        e.set(a, b, field.one());
        e.set(b, a, field.one());
    }
    e
}

fn normal_form_rec(a: &ExactMatrix) -> (ExactMatrix, usize) {
    let field = a.field();
    let n = a.rows();
    let mut x = ExactMatrix::identity(field, n);
    let pivot = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !a.get(i, j).is_zero());
    let Some((i, j)) = pivot else {
        return (x, 0);
    };
    let mut cur = a.clone();
    let last = n - 1;

    // bring the nonzero entry to (0, j), then to (0, n-1)
    congruence(&mut cur, &mut x, &swap_matrix(field, n, 0, i));
    congruence(&mut cur, &mut x, &swap_matrix(field, n, j, last));

    let mut e = ExactMatrix::identity(field, n);
    e.set(last, last, cur.get(0, last).inv().expect("pivot is nonzero"));
    congruence(&mut cur, &mut x, &e);

    // clear the first row against column n-1, then the last column against row 0
    for k in 1..last {
        let c = cur.get(0, k).clone();
        if !c.is_zero() {
            let mut e = ExactMatrix::identity(field, n);
            e.set(last, k, -c);
            congruence(&mut cur, &mut x, &e);
        }
    }
    for k in 1..last {
        let c = cur.get(k, last).clone();
        if !c.is_zero() {
            let mut e = ExactMatrix::identity(field, n);
            e.set(0, k, -c);
            congruence(&mut cur, &mut x, &e);
        }
    }

    let inner_idx: Vec<usize> = (1..last).collect();
    let (inner_x, inner_r) = normal_form_rec(&cur.select(&inner_idx, &inner_idx));
    let e = ExactMatrix::from_fn(field, n, n, |p, q| {
        if (1..last).contains(&p) && (1..last).contains(&q) {
            inner_x.get(p - 1, q - 1).clone()
        } else if p == q {
            field.one()
        } else {
            field.zero()
        }
    });
    congruence(&mut cur, &mut x, &e);

    // move index n-1 to position 2r-1 so the zero block sits at the end
    let r = inner_r + 1;
    let target = 2 * r - 1;
    let source_of = |q: usize| match q.cmp(&target) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Equal => last,
        std::cmp::Ordering::Greater => q - 1,
    };
    let p = ExactMatrix::from_fn(field, n, n, |row, col| {
        if source_of(col) == row {
            field.one()
        } else {
            field.zero()
        }
    });
    congruence(&mut cur, &mut x, &p);
    (x, r)
}

/// Congruence normal form by the constructive induction: pick a nonzero
/// `a_ij`, move it to `(1, n)`, scale it to 1, clear the first row and last
/// column, recurse on the inner block.
pub fn skew_normal_form(field: Field, a: &SkewMatrix<Scalar>) -> NormalForm {
    let (x, r) = normal_form_rec(&a.to_exact(field));
    NormalForm { x, r }
}

pub fn skew_rank(field: Field, a: &SkewMatrix<Scalar>) -> usize {
    a.to_exact(field).rank()
}

/// A `(2t-2) x n` matrix `T` with `T^T J~_{t-1} T = a`; fails when the skew
/// rank of `a` exceeds `2t - 2`.
pub fn factor_through_form(field: Field, a: &SkewMatrix<Scalar>, t: usize) -> Result<ExactMatrix> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    let n = a.size();
    let big_r = t - 1;
    let NormalForm { x, r: l } = skew_normal_form(field, a);
    if l > big_r {
        return Err(Error::NotInLocus {
            rank: 2 * l,
            bound: 2 * big_r,
        });
    }
    let x_inv = x.inverse().expect("normal form transform is invertible");
    // Y': first 2l rows of X^{-1}, zero below
    let y_pad = ExactMatrix::from_fn(field, 2 * big_r, n, |i, j| {
        if i < 2 * l {
            x_inv.get(i, j).clone()
        } else {
            field.zero()
        }
    });
    // Z e_k = e_k for k < l, e_{k + 2(R - l)} for l <= k < 2l, 0 otherwise
    let z = ExactMatrix::from_fn(field, 2 * big_r, 2 * big_r, |i, k| {
        let image = if k < l {
            Some(k)
        } else if k < 2 * l {
            Some(k + 2 * (big_r - l))
        } else {
            None
        };
        if image == Some(i) {
            field.one()
        } else {
            field.zero()
        }
    });
    Ok(z.mul(&y_pad).expect("shapes agree"))
}

/// `T^T J~ T` as an alternating matrix.
pub fn pull_back_form(t_mat: &ExactMatrix) -> Result<SkewMatrix<Scalar>> {
    if t_mat.rows() % 2 == 1 {
        return Err(Error::OddSize(t_mat.rows()));
    }
    let form = StandardForm::new(t_mat.field(), t_mat.rows() / 2);
    let full = t_mat.transpose().mul(form.matrix())?.mul(t_mat)?;
    SkewMatrix::from_exact(&full)
}
