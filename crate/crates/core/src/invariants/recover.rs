//! Recovering the group element relating two points of one fiber of `pi`,
//! and random group elements for round trips.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{Field, Scalar};
use crate::skew::StandardForm;

/// Which columns of the reference map are used to solve for `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    /// First linearly independent columns scanning left to right.
    Forward,
    /// Scanning right to left.
    Reverse,
}

/// Indices of `rank` independent columns of `a`.
fn column_basis(a: &ExactMatrix, order: PivotOrder) -> Vec<usize> {
    let n = a.cols();
    let rows: Vec<usize> = (0..a.rows()).collect();
    match order {
        PivotOrder::Forward => a.rref().1,
        PivotOrder::Reverse => {
            let rev: Vec<usize> = (0..n).rev().collect();
            let mut cols: Vec<usize> = a.select(&rows, &rev).rref().1.into_iter().map(|j| n - 1 - j).collect();
            cols.sort_unstable();
            cols
        }
    }
}

/// The `g` with `target = g * reference`, where `reference` has full row
/// rank, solved on a column basis of `reference`.
fn solve_left(target: &ExactMatrix, reference: &ExactMatrix, order: PivotOrder) -> Option<ExactMatrix> {
    let rows: Vec<usize> = (0..reference.rows()).collect();
    let cols = column_basis(reference, order);
    let c = reference.select(&rows, &cols).inverse()?;
    let g = target.select(&rows, &cols).mul(&c).ok()?;
    (g.mul(reference).ok()? == *target).then_some(g)
}

fn check_shape(name: &str, a: &ExactMatrix, rows: usize, cols: usize, field: Field) -> Result<()> {
    if a.rows() != rows || a.cols() != cols || a.field() != field {
        return Err(Error::DimensionMismatch(format!(
            "{name} is {}x{} over {}, expected {rows}x{cols} over {field}",
            a.rows(),
            a.cols(),
            a.field()
        )));
    }
    Ok(())
}

fn require_rank(name: &str, a: &ExactMatrix, r: usize, what: &str) -> Result<()> {
    if a.rank() != r {
        return Err(Error::Precondition(format!("{name} is not {what}")));
    }
    Ok(())
}

/// For `(phi, psi)` and `(phi2, psi2)` in `U~`, the unique invertible `g`
/// with `psi = g psi2` and `phi2 = phi g`, or `None` when
/// `phi psi != phi2 psi2`.
pub fn recover_g_gl(
    phi: &ExactMatrix,
    psi: &ExactMatrix,
    phi2: &ExactMatrix,
    psi2: &ExactMatrix,
) -> Result<Option<ExactMatrix>> {
    recover_g_gl_with(phi, psi, phi2, psi2, PivotOrder::Forward)
}

pub fn recover_g_gl_with(
    phi: &ExactMatrix,
    psi: &ExactMatrix,
    phi2: &ExactMatrix,
    psi2: &ExactMatrix,
    order: PivotOrder,
) -> Result<Option<ExactMatrix>> {
    let field = phi.field();
    let (m, r, n) = (phi.rows(), phi.cols(), psi.cols());
    check_shape("psi", psi, r, n, field)?;
    check_shape("phi'", phi2, m, r, field)?;
    check_shape("psi'", psi2, r, n, field)?;
    require_rank("phi", phi, r, "injective")?;
    require_rank("phi'", phi2, r, "injective")?;
    require_rank("psi", psi, r, "surjective")?;
    require_rank("psi'", psi2, r, "surjective")?;
    if phi.mul(psi)? != phi2.mul(psi2)? {
        return Ok(None);
    }
    let Some(g) = solve_left(psi, psi2, order) else {
        return Ok(None);
    };
    Ok((phi.mul(&g)? == *phi2).then_some(g))
}

/// For surjective `phi, phi2 : V -> E` with the same pulled-back form, the
/// `g` in `Sp(E)` with `phi = g phi2`; `None` when the forms differ.
pub fn recover_g_sp(phi: &ExactMatrix, phi2: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    recover_g_sp_with(phi, phi2, PivotOrder::Forward)
}

pub fn recover_g_sp_with(phi: &ExactMatrix, phi2: &ExactMatrix, order: PivotOrder) -> Result<Option<ExactMatrix>> {
    let field = phi.field();
    let (k, n) = (phi.rows(), phi.cols());
    if k % 2 != 0 {
        return Err(Error::DimensionMismatch(format!("E must have even dimension, got {k}")));
    }
    check_shape("phi'", phi2, k, n, field)?;
    require_rank("phi", phi, k, "surjective")?;
    require_rank("phi'", phi2, k, "surjective")?;
    let jt = StandardForm::new(field, k / 2).matrix().clone();
    let form = |a: &ExactMatrix| a.transpose().mul(&jt)?.mul(a);
    if form(phi)? != form(phi2)? {
        return Ok(None);
    }
    let Some(g) = solve_left(phi, phi2, order) else {
        return Ok(None);
    };
    Ok((g.transpose().mul(&jt)?.mul(&g)? == jt).then_some(g))
}

fn random_scalar<R: Rng>(field: Field, bound: i64, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-bound..=bound))
}

pub fn random_matrix<R: Rng>(field: Field, rows: usize, cols: usize, bound: i64, rng: &mut R) -> ExactMatrix {
    let mut a = ExactMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a.set(i, j, random_scalar(field, bound, rng));
        }
    }
    a
}

/// Random matrix of rank `min(rows, cols)`, by rejection.
pub fn random_full_rank<R: Rng>(field: Field, rows: usize, cols: usize, bound: i64, rng: &mut R) -> ExactMatrix {
    loop {
        let a = random_matrix(field, rows, cols, bound, rng);
        if a.rank() == rows.min(cols) {
            return a;
        }
    }
}

/// Product of `steps` random transvections `x -> x + s <x,u> u` on `k^{2r}`.
pub fn random_symplectic<R: Rng>(field: Field, r: usize, steps: usize, rng: &mut R) -> ExactMatrix {
    let k = 2 * r;
    let jt = StandardForm::new(field, r).matrix().clone();
    let mut g = ExactMatrix::identity(field, k);
    for _ in 0..steps {
        let u: Vec<Scalar> = (0..k).map(|_| random_scalar(field, 4, rng)).collect();
        let s = random_scalar(field, 4, rng);
        let ju = jt.mul_vec(&u).expect("sizes agree");
        let tau = ExactMatrix::from_fn(field, k, k, |i, l| {
            let delta = if i == l { field.one() } else { field.zero() };
            &delta + &(&(&s * &u[i]) * &ju[l])
        });
        g = tau.mul(&g).expect("square");
    }
    g
}
