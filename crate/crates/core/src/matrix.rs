//! Dense exact matrices over a [`Field`], plus a sparse incremental row
//! echelon form for the large, mostly-zero systems built from polynomial
//! coefficient matrices.
//!
//! Pivoting always takes the first nonzero entry. Reduced row echelon form
//! is canonical, so kernel bases and the pivot-first particular solution of
//! [`ExactMatrix::solve`] do not depend on the order rows were processed in.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{CommRing, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::DimensionMismatch(format!(
                        "entry over {} in a matrix over {}",
                        x.field(),
                        field
                    )));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Integer entries mapped into `field`. Panics on ragged input.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        ExactMatrix { data, ..self.clone() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// First `k` rows.
    pub fn top_rows(&self, k: usize) -> ExactMatrix {
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(&rows, &cols)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut a = self.to_rows();
        let pivots = rref_in_place(&mut a, self.cols);
        let m = ExactMatrix {
            data: a.into_iter().flatten().collect(),
            ..self.clone()
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.field, self.cols);
        for i in 0..self.rows {
            ech.insert_dense(self.row(i));
        }
        ech.rank()
    }

    /// Basis of the right null space, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(self.field, self.cols, &pivots, |k, j| r.get(k, j).clone())
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_determinant(&self.field, self.to_rows()))
    }

    /// One solution of `self * x = b` with all free variables zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = aug[k][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        ExactMatrix::from_rows(self.field, rows).ok()
    }

    /// Maps an integer-valued rational matrix into `F_p` entrywise.
    pub fn reduce(&self, target: Field) -> Result<ExactMatrix> {
        let rows = self
            .data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        Scalar::Rational(q) => target.from_rational(q),
                        Scalar::Residue { .. } => Err(Error::Unsupported("reduce from F_p".into())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if self.cols == 0 {
            return Ok(ExactMatrix::zeros(target, self.rows, 0));
        }
        ExactMatrix::from_rows(target, rows)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn rref_in_place(a: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pr, found);
        let inv = a[pr][col].inv().expect("nonzero pivot");
        let nz: Vec<usize> = (col..cols).filter(|&j| !a[pr][j].is_zero()).collect();
        for &j in &nz {
            a[pr][j] = &a[pr][j] * &inv;
        }
        let pivot_row = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &j in &nz {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

fn kernel_from_rref(
    field: Field,
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> Scalar,
) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -entry(k, f);
            }
            v
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant over any integral domain with exact
/// division. Zero pivots are handled by swapping in the first nonzero entry
/// below, flipping the sign.
pub fn bareiss_determinant<R: CommRing>(ring: &R, mut a: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = a.len();
    if n == 0 {
        return ring.one();
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&a[r][k])) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring
                    .exact_div(&num, &prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

/// Incrementally built row echelon basis of sparse rows.
///
/// Each stored row is normalized to a leading one at its pivot column.
/// [`RowEchelon::insert`] reports whether the new row was independent of
/// everything inserted before it.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    cols: usize,
    // pivot column -> index into rows
    by_pivot: std::collections::BTreeMap<usize, usize>,
    rows: Vec<Vec<(usize, Scalar)>>,
}

pub type SparseRow = Vec<(usize, Scalar)>;

impl RowEchelon {
    pub fn new(field: Field, cols: usize) -> Self {
        RowEchelon {
            field,
            cols,
            by_pivot: Default::default(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        self.insert(sparse)
    }

    /// Reduces `row` (sorted by column, no zeros) against the basis; keeps it
    /// if a nonzero remainder is left.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let rem = self.reduce(row);
        match rem.first() {
            None => false,
            Some((p, lead)) => {
                let p = *p;
                let inv = lead.inv().expect("nonzero lead");
                let rem = rem.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
                self.by_pivot.insert(p, self.rows.len());
                self.rows.push(rem);
                true
            }
        }
    }

    /// True when `row` lies in the span of the basis.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        loop {
            let Some(pos) = row[start..].iter().position(|(j, _)| self.by_pivot.contains_key(j)) else {
                return row;
            };
            let (col, c) = row[start + pos].clone();
            let basis = &self.rows[self.by_pivot[&col]];
            row = axpy(&row, &c, basis);
            // entries before `col` are untouched by the subtraction
            start = row.iter().position(|(j, _)| *j > col).unwrap_or(row.len());
        }
    }

    /// Rows of the reduced row echelon form, ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseRow)> {
        let mut out: Vec<(usize, SparseRow)> = Vec::with_capacity(self.rows.len());
        // back-substitute from the last pivot upward
        let mut done: std::collections::BTreeMap<usize, SparseRow> = Default::default();
        for (&p, &idx) in self.by_pivot.iter().rev() {
            let mut row = self.rows[idx].clone();
            loop {
                let hit = row
                    .iter()
                    .find(|(j, _)| *j != p && done.contains_key(j))
                    .map(|(j, c)| (*j, c.clone()));
                match hit {
                    Some((j, c)) => row = axpy(&row, &c, &done[&j]),
                    None => break,
                }
            }
            done.insert(p, row);
        }
        for (p, row) in done {
            out.push((p, row));
        }
        out
    }

    /// Null space of the matrix whose rows were inserted.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let reduced = self.reduced_rows();
        let pivots: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
        let lookup: Vec<std::collections::BTreeMap<usize, Scalar>> =
            reduced.iter().map(|(_, r)| r.iter().cloned().collect()).collect();
        let zero = self.field.zero();
        kernel_from_rref(self.field, self.cols, &pivots, |k, j| {
            lookup[k].get(&j).unwrap_or(&zero).clone()
        })
    }
}

/// `a - c * b` on sorted sparse rows.
fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
