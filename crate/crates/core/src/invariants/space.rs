//! Degree-by-degree invariant subspaces of the parameter ring.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::ops::{embed, is_weight_zero, LieOperatorSet, OneParamSubgroup};
use crate::error::{Error, Result};
use crate::matrix::{RowEchelon, SparseRow};
use crate::poly::{monomials_of_degree, GradedSpace, Monomial, MultiPoly, PolyRing, Substitution};
use crate::scalar::{Field, Scalar};
use crate::varieties::{Case, ParamRing};

/// How invariance is imposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Common kernel of the Lie operators; characteristic zero only.
    Lie,
    /// Fixed points of the one-parameter subgroups, coefficient-wise in `s`.
    Subgroups,
}

impl Method {
    pub fn for_field(field: Field) -> Method {
        match field {
            Field::Rationals => Method::Lie,
            Field::Prime(_) => Method::Subgroups,
        }
    }
}

/// The group action on one parameter ring, prepared for repeated use.
///
/// Both methods restrict to torus weight zero first; the weight-zero
/// condition is invariance under the diagonal torus in every characteristic.
#[derive(Clone, Debug)]
pub struct Invariance {
    pub param: ParamRing,
    pub method: Method,
    lie: LieOperatorSet,
    ring_s: PolyRing,
    subgroups: Vec<Substitution>,
}

impl Invariance {
    pub fn new(case: Case, field: Field) -> Result<Invariance> {
        Self::with_method(case, field, Method::for_field(field))
    }

    pub fn with_method(case: Case, field: Field, method: Method) -> Result<Invariance> {
        if method == Method::Lie && field != Field::Rationals {
            return Err(Error::Unsupported(format!(
                "Lie-algebra invariance is not group invariance over {field}"
            )));
        }
        let param = ParamRing::new(case, field);
        let lie = LieOperatorSet::new(&param);
        let ring_s = param.ring.extended("s")?;
        let subgroups = OneParamSubgroup::standard_set(&param)
            .iter()
            .map(|g| g.substitution(&param, &ring_s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Invariance {
            param,
            method,
            lie,
            ring_s,
            subgroups,
        })
    }

    pub fn field(&self) -> Field {
        self.param.ring.field()
    }

    /// Weight-zero monomials of degree `deg`, descending.
    pub fn weight_zero_monomials(&self, deg: u32) -> Vec<Monomial> {
        monomials_of_degree(self.param.ring.nvars(), deg)
            .into_iter()
            .filter(|m| is_weight_zero(&self.param, m))
            .collect()
    }

    /// The polynomials whose vanishing expresses invariance of `f`.
    fn defects(&self, f: &MultiPoly) -> Result<Vec<MultiPoly>> {
        match self.method {
            Method::Lie => Ok(self.lie.ops.iter().map(|d| d.apply(f)).collect()),
            Method::Subgroups => {
                let base = embed(f, &self.ring_s);
                self.subgroups.iter().map(|sub| Ok(sub.apply(f)?.sub(&base))).collect()
            }
        }
    }

    pub fn is_invariant(&self, f: &MultiPoly) -> Result<bool> {
        if f.terms().any(|(m, _)| !is_weight_zero(&self.param, m)) {
            return Ok(false);
        }
        Ok(self.defects(f)?.iter().all(MultiPoly::is_zero))
    }

    /// Basis of the invariants of degree `deg`.
    pub fn space(&self, deg: u32) -> Result<GradedSpace> {
        let domain = self.weight_zero_monomials(deg);
        let ring = &self.param.ring;
        let defects: Vec<Vec<MultiPoly>> = domain
            .par_iter()
            .map(|m| self.defects(&MultiPoly::monomial(ring, m.clone(), self.field().one())))
            .collect::<Result<_>>()?;
        // one row per (operator, output monomial), columns are the domain
        let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
        for (col, ds) in defects.iter().enumerate() {
            for (op, d) in ds.iter().enumerate() {
                for (m, c) in d.terms() {
                    rows.entry((op, m.clone())).or_default().push((col, c.clone()));
                }
            }
        }
        let mut ech = RowEchelon::new(self.field(), domain.len());
        for row in rows.into_values() {
            ech.insert(row);
        }
        let basis = ech
            .kernel()
            .into_iter()
            .map(|v| combination(ring, &domain, &v))
            .collect();
        GradedSpace::new(self.field(), deg, basis)
    }
}

fn combination(ring: &PolyRing, monomials: &[Monomial], coeffs: &[Scalar]) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        monomials
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Dimension and a basis of the degree-`deg` invariants of the parameter
/// ring of `case` over `field`.
pub fn invariant_space_dim(case: Case, field: Field, deg: u32) -> Result<(usize, GradedSpace)> {
    let space = Invariance::new(case, field)?.space(deg)?;
    Ok((space.dim(), space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::span_dim;

    const Q: Field = Field::Rationals;

    fn dim(case: Case, field: Field, deg: u32) -> usize {
        invariant_space_dim(case, field, deg).unwrap().0
    }

    #[test]
    fn gl_rank_one_examples() {
        let c = Case::gl(2, 2, 2).unwrap();
        for field in [Q, Field::Prime(2), Field::Prime(3)] {
            assert_eq!(dim(c, field, 0), 1);
            assert_eq!(dim(c, field, 1), 0);
            assert_eq!(dim(c, field, 2), 4);
            assert_eq!(dim(c, field, 3), 0);
        }
    }

    /// The four invariants of degree 2 are spanned by the `w_i v_j`.
    #[test]
    fn gl_rank_one_basis_is_xi() {
        let c = Case::gl(2, 2, 2).unwrap();
        let inv = Invariance::new(c, Q).unwrap();
        let p = &inv.param;
        let (d, space) = invariant_space_dim(c, Q, 2).unwrap();
        let mut all = space.basis().to_vec();
        for i in 0..2 {
            for j in 0..2 {
                let xi = p.ring.var(p.w(i, 0)).mul(&p.ring.var(p.v(0, j)));
                assert!(inv.is_invariant(&xi).unwrap());
                all.push(xi);
            }
        }
        assert_eq!(span_dim(&all, 2).unwrap(), d);
    }

    #[test]
    fn odd_degrees_vanish() {
        for case in [Case::gl(3, 3, 3), Case::sp(4, 2)] {
            let case = case.unwrap();
            for deg in [1, 3] {
                assert_eq!(dim(case, Q, deg), 0);
                assert_eq!(dim(case, Field::Prime(3), deg), 0);
            }
        }
    }

    #[test]
    fn sp_pairings() {
        let c = Case::sp(4, 2).unwrap();
        assert_eq!(dim(c, Q, 2), 6);
        assert_eq!(dim(c, Field::Prime(2), 2), 6);
        assert_eq!(dim(c, Field::Prime(5), 2), 6);
    }

    /// Over `Q` the subgroup method and the Lie method agree.
    #[test]
    fn methods_agree_over_q() {
        for case in [Case::gl(3, 2, 2), Case::gl(3, 3, 3), Case::sp(4, 2), Case::sp(5, 2)] {
            let case = case.unwrap();
            for deg in [2, 4] {
                let lie = Invariance::with_method(case, Q, Method::Lie)
                    .unwrap()
                    .space(deg)
                    .unwrap();
                let sub = Invariance::with_method(case, Q, Method::Subgroups)
                    .unwrap()
                    .space(deg)
                    .unwrap();
                assert_eq!(lie.dim(), sub.dim(), "{case} degree {deg}");
                let mut both = lie.basis().to_vec();
                both.extend_from_slice(sub.basis());
                assert_eq!(span_dim(&both, deg).unwrap(), lie.dim());
            }
        }
    }

    #[test]
    fn lie_rejected_in_positive_characteristic() {
        let c = Case::gl(2, 2, 2).unwrap();
        assert!(Invariance::with_method(c, Field::Prime(3), Method::Lie).is_err());
    }

    /// `v(1,1)^2 v(2,1)^2` is killed by every derivation in characteristic 2
    /// but is not invariant.
    #[test]
    fn frobenius_powers_are_not_invariant() {
        let field = Field::Prime(2);
        let inv = Invariance::new(Case::sp(4, 2).unwrap(), field).unwrap();
        let p = &inv.param;
        let f = p.ring.var(p.v(0, 0)).pow(2).mul(&p.ring.var(p.v(1, 0)).pow(2));
        assert!(!inv
            .is_invariant(&p.ring.var(p.v(0, 0)).mul(&p.ring.var(p.v(1, 1))))
            .unwrap());
        assert!(!inv.is_invariant(&f).unwrap());
    }
}
