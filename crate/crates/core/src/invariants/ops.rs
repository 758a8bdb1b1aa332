//! The group actions on the parameter ring: infinitesimal (Lie operators)
//! and one-parameter subgroups with a formal parameter `s`.

use crate::error::Result;
use crate::matrix::ExactMatrix;
use crate::poly::{Derivation, Monomial, MultiPoly, PolyRing, Substitution};
use crate::scalar::{Field, Scalar};
use crate::skew::StandardForm;
use crate::varieties::{ParamRing, ParamShape};

/// Torus weight of a monomial of the parameter ring, one entry per `l < r`.
///
/// GL: `v(l,j)` has weight `+e_l`, `w(i,l)` has weight `-e_l`.
/// Sp: `v(l,j)` has weight `+e_l` for `l < r` and `-e_{2r-1-l}` otherwise,
/// matching the pairing of `e_l` with `e_{2r-1-l}` under `J~`.
pub fn torus_weight(param: &ParamRing, m: &Monomial) -> Vec<i64> {
    let n = param.n();
    let mut w = vec![0i64; weight_len(param)];
    for (idx, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (slot, sign) = weight_of_var(param, idx, n);
        w[slot] += sign * e as i64;
    }
    w
}

fn weight_len(param: &ParamRing) -> usize {
    match param.shape {
        ParamShape::Gl { r, .. } | ParamShape::Sp { r, .. } => r,
    }
}

fn weight_of_var(param: &ParamRing, idx: usize, n: usize) -> (usize, i64) {
    match param.shape {
        ParamShape::Gl { m, r, .. } => {
            if idx < m * r {
                (idx % r, -1)
            } else {
                ((idx - m * r) / n, 1)
            }
        }
        ParamShape::Sp { r, .. } => {
            let l = idx / n;
            if l < r {
                (l, 1)
            } else {
                (2 * r - 1 - l, -1)
            }
        }
    }
}

pub fn is_weight_zero(param: &ParamRing, m: &Monomial) -> bool {
    torus_weight(param, m).iter().all(|&x| x == 0)
}

/// Infinitesimal generators of the group action on the parameter ring.
#[derive(Clone, Debug)]
pub struct LieOperatorSet {
    /// Lie algebra element behind each operator, as a matrix on `E`.
    pub generators: Vec<ExactMatrix>,
    pub ops: Vec<Derivation>,
}

impl LieOperatorSet {
    /// GL: `E_ab = sum_j v(a,j) d/dv(b,j) - sum_i w(i,b) d/dw(i,a)` for all
    /// `a, b`. Sp: `D_X = sum X_{ll'} v(l',j) d/dv(l,j)` for `X = J~ S`,
    /// `S` running over the standard basis of symmetric matrices.
    pub fn new(param: &ParamRing) -> LieOperatorSet {
        let field = param.ring.field();
        let one = field.one();
        let minus = -&one;
        match param.shape {
            ParamShape::Gl { m, n, r } => {
                let mut generators = Vec::new();
                let mut ops = Vec::new();
                for a in 0..r {
                    for b in 0..r {
                        let mut terms = Vec::new();
                        for j in 0..n {
                            terms.push(Derivation::term(one.clone(), param.v(a, j), param.v(b, j)));
                        }
                        for i in 0..m {
                            terms.push(Derivation::term(minus.clone(), param.w(i, b), param.w(i, a)));
                        }
                        let mut e = ExactMatrix::zeros(field, r, r);
                        e.set(a, b, one.clone());
                        generators.push(e);
                        ops.push(Derivation::new(terms));
                    }
                }
                LieOperatorSet { generators, ops }
            }
            ParamShape::Sp { n, r } => {
                let k = 2 * r;
                let jt = StandardForm::new(field, r).matrix().clone();
                let mut generators = Vec::new();
                for i in 0..k {
                    for j in i..k {
                        let mut s = ExactMatrix::zeros(field, k, k);
                        s.set(i, j, one.clone());
                        s.set(j, i, one.clone());
                        generators.push(jt.mul(&s).expect("square"));
                    }
                }
                let ops = generators
                    .iter()
                    .map(|x| {
                        let mut terms = Vec::new();
                        for l in 0..k {
                            for lp in 0..k {
                                let c = x.get(l, lp);
                                if c.is_zero() {
                                    continue;
                                }
                                for j in 0..n {
                                    terms.push(Derivation::term(c.clone(), param.v(lp, j), param.v(l, j)));
                                }
                            }
                        }
                        Derivation::new(terms)
                    })
                    .collect();
                LieOperatorSet { generators, ops }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn annihilates(&self, f: &MultiPoly) -> bool {
        self.ops.iter().all(|d| d.apply(f).is_zero())
    }
}

/// A one-parameter subgroup `s -> g(s)` of `GL(E)` or `Sp(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneParamSubgroup {
    /// `I + s E_ab`, `a != b`.
    Elementary { a: usize, b: usize },
    /// `x -> x + s <x,u> u` with `<x,y> = x^T J~ y`.
    Transvection { u: Vec<i64> },
}

impl OneParamSubgroup {
    /// Elementary subgroups for GL, transvections along every `e_i` and
    /// `e_i + e_j` for Sp.
    pub fn standard_set(param: &ParamRing) -> Vec<OneParamSubgroup> {
        match param.shape {
            ParamShape::Gl { r, .. } => (0..r)
                .flat_map(|a| {
                    (0..r)
                        .filter(move |&b| b != a)
                        .map(move |b| OneParamSubgroup::Elementary { a, b })
                })
                .collect(),
            ParamShape::Sp { r, .. } => {
                let k = 2 * r;
                let mut out = Vec::new();
                for i in 0..k {
                    let mut u = vec![0; k];
                    u[i] = 1;
                    out.push(OneParamSubgroup::Transvection { u });
                }
                for i in 0..k {
                    for j in i + 1..k {
                        let mut u = vec![0; k];
                        u[i] = 1;
                        u[j] = 1;
                        out.push(OneParamSubgroup::Transvection { u });
                    }
                }
                out
            }
        }
    }

    /// `g(s)` as a matrix on `E` of dimension `k`.
    pub fn matrix(&self, field: Field, k: usize, s: &Scalar) -> ExactMatrix {
        let mut g = ExactMatrix::identity(field, k);
        match self {
            OneParamSubgroup::Elementary { a, b } => g.set(*a, *b, s.clone()),
            OneParamSubgroup::Transvection { u } => {
                // x + s <x,u> u = (I + s u (J~ u)^T) x
                let ju = j_times(field, u);
                for (i, &ui) in u.iter().enumerate().take(k) {
                    for (l, jul) in ju.iter().enumerate().take(k) {
                        let add = &(s * &field.from_i64(ui)) * jul;
                        let cur = g.get(i, l) + &add;
                        g.set(i, l, cur);
                    }
                }
            }
        }
        g
    }

    /// The induced substitution `f(x) -> f(g(s) . x)` from the parameter
    /// ring into `ring_s`, the parameter ring with `s` appended.
    pub fn substitution(&self, param: &ParamRing, ring_s: &PolyRing) -> Result<Substitution> {
        let field = param.ring.field();
        let nv = param.ring.nvars();
        let s = ring_s.var(nv);
        let mut sub = Substitution::new(&param.ring, ring_s);
        for v in 0..nv {
            sub.set(v, ring_s.var(v))?;
        }
        let n = param.n();
        match (self, param.shape) {
            (OneParamSubgroup::Elementary { a, b }, ParamShape::Gl { m, .. }) => {
                // g psi: v(a,j) -> v(a,j) + s v(b,j); phi g^{-1}: w(i,b) -> w(i,b) - s w(i,a)
                for j in 0..n {
                    let img = ring_s.var(param.v(*a, j)).add(&s.mul(&ring_s.var(param.v(*b, j))));
                    sub.set(param.v(*a, j), img)?;
                }
                for i in 0..m {
                    let img = ring_s.var(param.w(i, *b)).sub(&s.mul(&ring_s.var(param.w(i, *a))));
                    sub.set(param.w(i, *b), img)?;
                }
            }
            (OneParamSubgroup::Transvection { u }, ParamShape::Sp { r, .. }) => {
                let k = 2 * r;
                let ju = j_times(field, u);
                for j in 0..n {
                    // <phi_j, u> = sum_l v(l,j) (J~ u)_l
                    let pair = (0..k).fold(ring_s.zero_poly(), |acc, l| {
                        acc.add(&ring_s.var(param.v(l, j)).scale(&ju[l]))
                    });
                    let shift = s.mul(&pair);
                    for (l, &ul) in u.iter().enumerate() {
                        if ul == 0 {
                            continue;
                        }
                        let img = ring_s.var(param.v(l, j)).add(&shift.scale(&field.from_i64(ul)));
                        sub.set(param.v(l, j), img)?;
                    }
                }
            }
            _ => {
                return Err(crate::error::Error::DimensionMismatch(
                    "subgroup type does not match the parameter ring".into(),
                ))
            }
        }
        Ok(sub)
    }
}

/// `J~ u` for an integer vector `u`.
fn j_times(field: Field, u: &[i64]) -> Vec<Scalar> {
    let jt = StandardForm::new(field, u.len() / 2);
    let uv: Vec<Scalar> = u.iter().map(|&x| field.from_i64(x)).collect();
    jt.matrix().mul_vec(&uv).expect("sizes agree")
}

/// `f` viewed in `ring_s` (same variables plus a trailing `s`).
pub fn embed(f: &MultiPoly, ring_s: &PolyRing) -> MultiPoly {
    MultiPoly::from_terms(
        ring_s,
        f.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.push(0);
            (Monomial::new(e), c.clone())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::Case;

    const Q: Field = Field::Rationals;

    #[test]
    fn operator_counts() {
        for (case, count) in [
            (Case::gl(3, 3, 2), 1),
            (Case::gl(3, 3, 3), 4),
            (Case::gl(4, 3, 3), 4),
            (Case::sp(4, 2), 3),
            (Case::sp(6, 3), 10),
        ] {
            let p = ParamRing::new(case.unwrap(), Q);
            assert_eq!(LieOperatorSet::new(&p).len(), count);
        }
    }

    #[test]
    fn sp_generators_preserve_form() {
        for r in 1..=3 {
            let p = ParamRing::with_shape(ParamShape::Sp { n: 3, r }, Q);
            let jt = StandardForm::new(Q, r).matrix().clone();
            for x in LieOperatorSet::new(&p).generators {
                let lhs = x.transpose().mul(&jt).unwrap().add(&jt.mul(&x).unwrap()).unwrap();
                assert!(lhs.is_zero());
            }
        }
    }

    #[test]
    fn subgroup_matrices() {
        for field in [Q, Field::Prime(2), Field::Prime(5)] {
            let s = field.from_i64(3);
            let g = OneParamSubgroup::Elementary { a: 0, b: 1 };
            let gm = g.matrix(field, 2, &s);
            let inv = OneParamSubgroup::Elementary { a: 0, b: 1 }.matrix(field, 2, &-&s);
            assert_eq!(gm.mul(&inv).unwrap(), ExactMatrix::identity(field, 2));
            let jt = StandardForm::new(field, 2).matrix().clone();
            let p = ParamRing::with_shape(ParamShape::Sp { n: 4, r: 2 }, field);
            for t in OneParamSubgroup::standard_set(&p) {
                let tm = t.matrix(field, 4, &s);
                assert_eq!(tm.transpose().mul(&jt).unwrap().mul(&tm).unwrap(), jt);
            }
        }
    }

    #[test]
    fn subgroup_set_sizes() {
        let p = ParamRing::new(Case::gl(3, 3, 3).unwrap(), Q);
        assert_eq!(OneParamSubgroup::standard_set(&p).len(), 2);
        let p = ParamRing::new(Case::sp(4, 2).unwrap(), Q);
        assert_eq!(OneParamSubgroup::standard_set(&p).len(), 2 + 1);
    }

    /// The substitution agrees with acting by the matrix on a concrete point.
    #[test]
    fn substitution_matches_matrix_action() {
        let field = Field::Prime(7);
        let p = ParamRing::with_shape(ParamShape::Sp { n: 3, r: 2 }, field);
        let ring_s = p.ring.extended("s").unwrap();
        let point: Vec<Scalar> = (0..p.ring.nvars()).map(|i| field.from_i64(i as i64 * 3 + 1)).collect();
        let s_val = field.from_i64(4);
        let mut point_s = point.clone();
        point_s.push(s_val.clone());
        let phi = ExactMatrix::from_fn(field, 4, 3, |l, j| point[p.v(l, j)].clone());
        for g in OneParamSubgroup::standard_set(&p) {
            let sub = g.substitution(&p, &ring_s).unwrap();
            let moved = g.matrix(field, 4, &s_val).mul(&phi).unwrap();
            for l in 0..4 {
                for j in 0..3 {
                    let img = sub.apply(&p.ring.var(p.v(l, j))).unwrap();
                    assert_eq!(&img.evaluate(&point_s).unwrap(), moved.get(l, j));
                }
            }
        }
    }

    #[test]
    fn weights() {
        let p = ParamRing::new(Case::gl(2, 2, 2).unwrap(), Q);
        let xi = p.ring.var(p.w(0, 0)).mul(&p.ring.var(p.v(0, 1)));
        let (m, _) = xi.leading_term().unwrap();
        assert!(is_weight_zero(&p, m));
        let (m, _) = p
            .ring
            .var(p.v(0, 0))
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        assert_eq!(torus_weight(&p, &m), vec![1]);
    }
}
