//! Degree-by-degree comparison of `S/I` with the invariants of the
//! parameter ring under `pi^#`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::space::Invariance;
use crate::error::Result;
use crate::matrix::{RowEchelon, SparseRow};
use crate::poly::{monomial_count, monomials_of_degree, Monomial, MonomialIndex, MultiPoly, PolyRing};
use crate::scalar::{Field, Scalar};
use crate::varieties::{ideal_component, Case, Locus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// The three dimension counts and the containment check in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub d: u32,
    /// `dim (S/I)_d`.
    pub dim_ring: usize,
    /// Rank of `pi^#` on `S_d`.
    pub dim_image: usize,
    /// `dim (T^G)_{2d}`.
    pub dim_invariants: usize,
    /// Every image of a degree-`d` monomial is invariant.
    pub containment: bool,
    /// `I_d` maps to zero.
    pub ideal_in_kernel: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub case: String,
    pub field: String,
    pub degrees: Vec<DegreeCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict == Verdict::Pass)
    }

    /// `dim (S/I)_d` for `d = 0..=d_max`.
    pub fn ring_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_ring).collect()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_invariants).collect()
    }
}

/// Largest graded component the verification of `case` up to `d_max`
/// touches, counted in monomials.
pub fn estimated_monomials(case: Case, d_max: u32) -> u128 {
    monomial_count(case.ambient_vars(), d_max).max(monomial_count(case.param_vars(), 2 * d_max))
}

pub fn verify_dp_gl(m: usize, n: usize, t: usize, field: Field, d_max: u32) -> Result<VerifyReport> {
    verify_case(Case::gl(m, n, t)?, field, d_max)
}

pub fn verify_dp_sp(n: usize, t: usize, field: Field, d_max: u32) -> Result<VerifyReport> {
    verify_case(Case::sp(n, t)?, field, d_max)
}

pub fn verify_case(case: Case, field: Field, d_max: u32) -> Result<VerifyReport> {
    let locus = Locus::new(case, field)?;
    let inv = Invariance::new(case, field)?;
    let degrees = (0..=d_max)
        .into_par_iter()
        .map(|d| check_degree(&locus, &inv, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        case: case.to_string(),
        field: field.label(),
        degrees,
    })
}

fn check_degree(locus: &Locus, inv: &Invariance, d: u32) -> Result<DegreeCheck> {
    let field = locus.field();
    let source = locus.ambient.clone();
    let basis = monomials_of_degree(source.nvars(), d);
    let images: Vec<MultiPoly> = basis
        .par_iter()
        .map(|m| {
            locus
                .pi_sharp
                .apply(&MultiPoly::monomial(&source, m.clone(), field.one()))
        })
        .collect::<Result<_>>()?;

    // pi^# on S_d as a matrix with one row per target monomial
    let mut rows: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            rows.entry(m.clone()).or_default().push((col, c.clone()));
        }
    }
    let mut map = RowEchelon::new(field, basis.len());
    for row in rows.into_values() {
        map.insert(row);
    }
    let dim_image = map.rank();

    let s_index = MonomialIndex::from_monomials(basis.iter().cloned());
    let mut ideal = RowEchelon::new(field, basis.len());
    for p in ideal_component(&locus.gens, d)? {
        ideal.insert(s_index.row_known(&p).expect("ideal element of degree d"));
    }
    let dim_ring = basis.len() - ideal.rank();
    let ideal_in_kernel = locus
        .gens
        .iter()
        .filter(|g| g.total_degree().is_some_and(|e| e <= d))
        .map(|g| locus.pi_sharp.apply(g).map(|x| x.is_zero()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    let space = inv.space(2 * d)?;
    let dim_invariants = space.dim();
    let bad_image = images
        .par_iter()
        .map(|f| inv.is_invariant(f).map(|ok| (!ok).then(|| f.clone())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let containment = bad_image.is_none();

    let mut witness = bad_image.map(|f| format!("image not invariant: {f}"));
    if witness.is_none() && dim_image < dim_ring {
        witness = map
            .kernel()
            .into_iter()
            .map(|v| sparse(&v))
            .find(|row| !ideal.contains(row.clone()))
            .map(|row| {
                format!(
                    "kernel element outside the ideal: {}",
                    polynomial(&source, &basis, &row)
                )
            });
    }
    if witness.is_none() && dim_image < dim_invariants {
        witness = invariant_outside_image(&images, space.basis()).map(|f| format!("invariant outside the image: {f}"));
    }
    if witness.is_none() && !ideal_in_kernel {
        witness = Some("an ideal generator does not map to zero".into());
    }
    let pass = containment && ideal_in_kernel && dim_ring == dim_image && dim_image == dim_invariants;
    if witness.is_none() && !pass {
        witness = Some(format!(
            "dimension mismatch: ring {dim_ring}, image {dim_image}, invariants {dim_invariants}"
        ));
    }
    Ok(DegreeCheck {
        d,
        dim_ring,
        dim_image,
        dim_invariants,
        containment,
        ideal_in_kernel,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witness,
    })
}

fn sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.clone()))
        .collect()
}

fn polynomial(ring: &PolyRing, basis: &[Monomial], row: &SparseRow) -> MultiPoly {
    MultiPoly::from_terms(ring, row.iter().map(|(j, c)| (basis[*j].clone(), c.clone())))
}

fn invariant_outside_image(images: &[MultiPoly], invariants: &[MultiPoly]) -> Option<MultiPoly> {
    let field = invariants.first()?.ring().field();
    let mut idx = MonomialIndex::new();
    let image_rows: Vec<SparseRow> = images.iter().map(|p| idx.row(p)).collect();
    let inv_rows: Vec<SparseRow> = invariants.iter().map(|p| idx.row(p)).collect();
    let mut ech = RowEchelon::new(field, idx.len());
    for r in image_rows {
        ech.insert(r);
    }
    invariants
        .iter()
        .zip(inv_rows)
        .find(|(_, r)| !ech.contains(r.clone()))
        .map(|(p, _)| p.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn gl_two_by_two() {
        for field in [Q, Field::Prime(2), Field::Prime(3)] {
            let r = verify_dp_gl(2, 2, 2, field, 3).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.ring_dims(), vec![1, 4, 9, 16]);
            assert_eq!(r.invariant_dims(), vec![1, 4, 9, 16]);
        }
    }

    #[test]
    fn gl_three_by_two() {
        let r = verify_dp_gl(3, 2, 2, Q, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.ring_dims(), vec![1, 6, 18]);
    }

    #[test]
    fn sp_examples() {
        let r = verify_dp_sp(4, 2, Q, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.ring_dims(), vec![1, 6, 20]);
        let r = verify_dp_sp(5, 2, Field::Prime(5), 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.ring_dims(), vec![1, 10]);
    }

    #[test]
    fn degree_zero_is_trivial() {
        let r = verify_dp_gl(3, 3, 3, Field::Prime(2), 0).unwrap();
        assert!(r.passed());
        assert_eq!((r.degrees[0].dim_ring, r.degrees[0].dim_invariants), (1, 1));
    }

    #[test]
    fn report_serializes() {
        let r = verify_dp_gl(2, 2, 2, Q, 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(
            s.starts_with(r#"{"case":"GL(2,2,2)","field":"Q","degrees":[{"d":0,"#),
            "{s}"
        );
        assert!(s.contains(r#""verdict":"PASS""#));
        assert!(!s.contains("witness"));
    }

    #[test]
    fn size_estimate() {
        assert_eq!(estimated_monomials(Case::gl(2, 2, 2).unwrap(), 1), 10);
    }

    #[test]
    fn invalid_cases_rejected() {
        assert!(verify_dp_gl(2, 2, 3, Q, 1).is_err());
        assert!(verify_dp_sp(5, 3, Q, 1).is_err());
    }
}
