//! Determinantal and Pfaffian loci: generic coordinate rings, ideal
//! generators, the parametrization maps and dimension measurements.
//!
//! Grading: the `x` and `y` coordinates have degree 1 and the
//! parametrization doubles degree, so a degree-`d` piece of the quotient is
//! compared with the degree-`2d` piece of the parameter ring.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{bareiss_determinant, ExactMatrix};
use crate::poly::{monomial_count, monomials_of_degree, span_dim, MultiPoly, PolyRing, Substitution, VarSet};
use crate::scalar::{Field, Scalar};
use crate::skew::{pfaffian, SkewMatrix, StandardForm};

/// Which locus: rank `< t` in `Hom(V,W)` (`W = k^m`, `V = k^n`), or
/// alternating forms on `V = k^n` of rank `< 2t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    Gl { m: usize, n: usize, t: usize },
    Sp { n: usize, t: usize },
}

impl Case {
    pub fn gl(m: usize, n: usize, t: usize) -> Result<Case> {
        if t < 2 || t > m.min(n) {
            return Err(Error::OutOfRange(format!(
                "GL case needs 2 <= t <= min(m, n), got m={m} n={n} t={t}"
            )));
        }
        Ok(Case::Gl { m, n, t })
    }

    pub fn sp(n: usize, t: usize) -> Result<Case> {
        if 2 * t < 4 || 2 * t > n {
            return Err(Error::OutOfRange(format!(
                "Sp case needs 4 <= 2t <= n, got n={n} t={t}"
            )));
        }
        Ok(Case::Sp { n, t })
    }

    pub fn t(&self) -> usize {
        match *self {
            Case::Gl { t, .. } | Case::Sp { t, .. } => t,
        }
    }

    /// `r = t - 1`; `E = k^r` (GL) or `k^{2r}` (Sp).
    pub fn r(&self) -> usize {
        self.t() - 1
    }

    /// Same ambient sizes with `t - 1`, when that is still a valid case.
    pub fn lower(&self) -> Option<Case> {
        match *self {
            Case::Gl { m, n, t } => Case::gl(m, n, t - 1).ok(),
            Case::Sp { n, t } => Case::sp(n, t - 1).ok(),
        }
    }

    /// Number of coordinates on the ambient space of the locus.
    pub fn ambient_vars(&self) -> usize {
        match *self {
            Case::Gl { m, n, .. } => m * n,
            Case::Sp { n, .. } => n * (n - 1) / 2,
        }
    }

    /// Number of coordinates on the parameter space.
    pub fn param_vars(&self) -> usize {
        match *self {
            Case::Gl { m, n, t } => (m + n) * (t - 1),
            Case::Sp { n, t } => 2 * (t - 1) * n,
        }
    }

    /// `mr + nr - r^2` or `(2n - 2t + 1)(t - 1)`.
    pub fn dim_formula(&self) -> usize {
        match *self {
            Case::Gl { m, n, t } => {
                let r = t - 1;
                m * r + n * r - r * r
            }
            Case::Sp { n, t } => (2 * n - 2 * t + 1) * (t - 1),
        }
    }

    /// Lower bound on the codimension of the next smaller stratum.
    pub fn codim_bound(&self) -> usize {
        match self {
            Case::Gl { .. } => 3,
            Case::Sp { .. } => 5,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Gl { m, n, t } => write!(f, "GL({m},{n},{t})"),
            Case::Sp { n, t } => write!(f, "Sp({n},{t})"),
        }
    }
}

/// `k[x(i,j)]`, coordinates on `m x n` matrices, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericMatrixRing {
    pub m: usize,
    pub n: usize,
    pub ring: PolyRing,
}

impl GenericMatrixRing {
    pub fn new(m: usize, n: usize, field: Field) -> Self {
        let names = (1..=m).flat_map(|i| (1..=n).map(move |j| format!("x({i},{j})")));
        GenericMatrixRing {
            m,
            n,
            ring: PolyRing::new(VarSet::new(names).expect("distinct names"), field),
        }
    }

    pub fn var(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn matrix(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.m)
            .map(|i| (0..self.n).map(|j| self.ring.var(self.var(i, j))).collect())
            .collect()
    }
}

/// `k[y(i,j) : i < j]`, coordinates on alternating `n x n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericSkewRing {
    pub n: usize,
    pub ring: PolyRing,
}

impl GenericSkewRing {
    pub fn new(n: usize, field: Field) -> Self {
        let names = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| format!("y({i},{j})")));
        GenericSkewRing {
            n,
            ring: PolyRing::new(VarSet::new(names).expect("distinct names"), field),
        }
    }

    /// Index of `y(i,j)`, `i < j`, 0-based.
    pub fn var(&self, i: usize, j: usize) -> usize {
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn matrix(&self) -> SkewMatrix<MultiPoly> {
        let mut k = 0;
        SkewMatrix::from_fn(self.n, |_, _| {
            k += 1;
            self.ring.var(k - 1)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamShape {
    /// `w(i,l)` on `Hom(E,W)`, then `v(l,j)` on `Hom(V,E)`.
    Gl { m: usize, n: usize, r: usize },
    /// `v(l,j)` on `Hom(V,E)` with `dim E = 2r`.
    Sp { n: usize, r: usize },
}

/// Coordinate ring of the parameter space `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamRing {
    pub shape: ParamShape,
    pub ring: PolyRing,
}

impl ParamRing {
    pub fn new(case: Case, field: Field) -> Self {
        let shape = match case {
            Case::Gl { m, n, t } => ParamShape::Gl { m, n, r: t - 1 },
            Case::Sp { n, t } => ParamShape::Sp { n, r: t - 1 },
        };
        Self::with_shape(shape, field)
    }

    pub fn with_shape(shape: ParamShape, field: Field) -> Self {
        let mut names = Vec::new();
        let (rows, n) = match shape {
            ParamShape::Gl { m, n, r } => {
                for i in 1..=m {
                    for l in 1..=r {
                        names.push(format!("w({i},{l})"));
                    }
                }
                (r, n)
            }
            ParamShape::Sp { n, r } => (2 * r, n),
        };
        for l in 1..=rows {
            for j in 1..=n {
                names.push(format!("v({l},{j})"));
            }
        }
        ParamRing {
            shape,
            ring: PolyRing::new(VarSet::new(names).expect("distinct names"), field),
        }
    }

    /// Rows of the `v` block (`r` for GL, `2r` for Sp).
    pub fn v_rows(&self) -> usize {
        match self.shape {
            ParamShape::Gl { r, .. } => r,
            ParamShape::Sp { r, .. } => 2 * r,
        }
    }

    pub fn n(&self) -> usize {
        match self.shape {
            ParamShape::Gl { n, .. } | ParamShape::Sp { n, .. } => n,
        }
    }

    fn w_count(&self) -> usize {
        match self.shape {
            ParamShape::Gl { m, r, .. } => m * r,
            ParamShape::Sp { .. } => 0,
        }
    }

    /// Index of `w(i,l)` (GL only), 0-based.
    pub fn w(&self, i: usize, l: usize) -> usize {
        match self.shape {
            ParamShape::Gl { r, .. } => i * r + l,
            ParamShape::Sp { .. } => panic!("no w variables in the Sp parameter ring"),
        }
    }

    /// Index of `v(l,j)`, 0-based.
    pub fn v(&self, l: usize, j: usize) -> usize {
        self.w_count() + l * self.n() + j
    }
}

/// All `t x t` minors, row subsets outermost, both in lexicographic order.
pub fn det_ideal_gens(ring: &GenericMatrixRing, t: usize) -> Result<Vec<MultiPoly>> {
    if t < 1 || t > ring.m.min(ring.n) {
        return Err(Error::OutOfRange(format!(
            "minor size {t} for a {}x{} matrix",
            ring.m, ring.n
        )));
    }
    let x = ring.matrix();
    let rows = combinations(ring.m, t);
    let cols = combinations(ring.n, t);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for rs in &rows {
        for cs in &cols {
            let sub: Vec<Vec<MultiPoly>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| x[i][j].clone()).collect())
                .collect();
            out.push(bareiss_determinant(&ring.ring, sub));
        }
    }
    Ok(out)
}

/// Pfaffians of all principal `2t x 2t` submatrices.
pub fn pfaff_ideal_gens(ring: &GenericSkewRing, t: usize) -> Result<Vec<MultiPoly>> {
    if t < 1 || 2 * t > ring.n {
        return Err(Error::OutOfRange(format!(
            "sub-Pfaffian size {} for n={}",
            2 * t,
            ring.n
        )));
    }
    let y = ring.matrix();
    combinations(ring.n, 2 * t)
        .iter()
        .map(|idx| pfaffian(&ring.ring, &y.principal(idx)))
        .collect()
}

/// The substitution `x(i,j) -> sum_l w(i,l) v(l,j)`.
pub fn gl_substitution(ring: &GenericMatrixRing, param: &ParamRing) -> Result<Substitution> {
    let ParamShape::Gl { m, n, r } = param.shape else {
        return Err(Error::DimensionMismatch("GL map needs a GL parameter ring".into()));
    };
    if m != ring.m || n != ring.n || ring.ring.field() != param.ring.field() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix ring against {m}x{n} parameters",
            ring.m, ring.n
        )));
    }
    let p = &param.ring;
    let mut sub = Substitution::new(&ring.ring, p);
    for i in 0..m {
        for j in 0..n {
            let img = (0..r).fold(p.zero_poly(), |acc, l| {
                acc.add(&p.var(param.w(i, l)).mul(&p.var(param.v(l, j))))
            });
            sub.set(ring.var(i, j), img)?;
        }
    }
    Ok(sub)
}

/// The substitution `y(i,j) -> (X^T J~ X)_{ij}` with `X` the generic
/// `2r x n` matrix of `v` variables.
pub fn sp_substitution(ring: &GenericSkewRing, param: &ParamRing) -> Result<Substitution> {
    let ParamShape::Sp { n, r } = param.shape else {
        return Err(Error::DimensionMismatch("Sp map needs an Sp parameter ring".into()));
    };
    if n != ring.n || ring.ring.field() != param.ring.field() {
        return Err(Error::DimensionMismatch(format!(
            "n={} skew ring against n={n} parameters",
            ring.n
        )));
    }
    let p = &param.ring;
    let form = StandardForm::new(p.field(), r);
    let jt = form.matrix();
    let mut sub = Substitution::new(&ring.ring, p);
    for i in 0..n {
        for j in i + 1..n {
            let mut img = p.zero_poly();
            for k in 0..2 * r {
                for l in 0..2 * r {
                    let c = jt.get(k, l);
                    if c.is_zero() {
                        continue;
                    }
                    img = img.add(&p.var(param.v(k, i)).mul(&p.var(param.v(l, j))).scale(c));
                }
            }
            sub.set(ring.var(i, j), img)?;
        }
    }
    Ok(sub)
}

pub fn pi_sharp_gl(ring: &GenericMatrixRing, param: &ParamRing, f: &MultiPoly) -> Result<MultiPoly> {
    gl_substitution(ring, param)?.apply(f)
}

pub fn pi_sharp_sp(ring: &GenericSkewRing, param: &ParamRing, f: &MultiPoly) -> Result<MultiPoly> {
    sp_substitution(ring, param)?.apply(f)
}

/// Spanning list of the degree-`d` piece of the ideal: every `monomial * g`.
pub fn ideal_component(gens: &[MultiPoly], d: u32) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    for g in gens {
        let Some(deg) = g.total_degree() else {
            continue;
        };
        if !g.is_homogeneous_of(deg) {
            return Err(Error::Inhomogeneous(deg));
        }
        if deg > d {
            continue;
        }
        for m in monomials_of_degree(g.ring().nvars(), d - deg) {
            out.push(g.mul_monomial(&m));
        }
    }
    Ok(out)
}

pub fn ideal_component_dim(gens: &[MultiPoly], d: u32) -> Result<usize> {
    span_dim(&ideal_component(gens, d)?, d)
}

/// `dim (ring / (gens))_d`.
pub fn hilbert_fn(ring: &PolyRing, gens: &[MultiPoly], d: u32) -> Result<usize> {
    let total = monomial_count(ring.nvars(), d) as usize;
    Ok(total - ideal_component_dim(gens, d)?)
}

/// A locus with its generators and parametrization, built once and reused
/// across degrees.
#[derive(Clone, Debug)]
pub struct Locus {
    pub case: Case,
    pub ambient: PolyRing,
    pub param: ParamRing,
    pub gens: Vec<MultiPoly>,
    pub pi_sharp: Substitution,
}

impl Locus {
    pub fn new(case: Case, field: Field) -> Result<Locus> {
        let param = ParamRing::new(case, field);
        match case {
            Case::Gl { m, n, t } => {
                Case::gl(m, n, t)?;
                let ring = GenericMatrixRing::new(m, n, field);
                let gens = det_ideal_gens(&ring, t)?;
                let pi_sharp = gl_substitution(&ring, &param)?;
                Ok(Locus {
                    case,
                    ambient: ring.ring,
                    param,
                    gens,
                    pi_sharp,
                })
            }
            Case::Sp { n, t } => {
                Case::sp(n, t)?;
                let ring = GenericSkewRing::new(n, field);
                let gens = pfaff_ideal_gens(&ring, t)?;
                let pi_sharp = sp_substitution(&ring, &param)?;
                Ok(Locus {
                    case,
                    ambient: ring.ring,
                    param,
                    gens,
                    pi_sharp,
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    pub fn hilbert(&self, d: u32) -> Result<usize> {
        hilbert_fn(&self.ambient, &self.gens, d)
    }

    /// Images of the ambient coordinates, in variable order.
    pub fn coordinate_images(&self) -> Result<Vec<MultiPoly>> {
        (0..self.ambient.nvars())
            .map(|v| self.pi_sharp.apply(&self.ambient.var(v)))
            .collect()
    }

    /// True when every generator maps to the zero polynomial.
    pub fn generators_vanish(&self) -> Result<bool> {
        for g in &self.gens {
            if !self.pi_sharp.apply(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Jacobian-rank measurement of `dim Y_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimMeasurement {
    pub measured: usize,
    pub formula: usize,
    pub trials: usize,
}

impl DimMeasurement {
    pub fn matches(&self) -> bool {
        self.measured == self.formula
    }
}

/// Largest rank, over `trials` random integer points in `[-100, 100]`, of
/// the Jacobian of the parametrization. Assembled symbolically, evaluated
/// exactly over `Q`.
pub fn variety_dim_jacobian(case: Case, trials: usize, seed: u64) -> Result<DimMeasurement> {
    const BOUND: i64 = 100;
    let q = Field::Rationals;
    let locus = Locus::new(case, q)?;
    let images = locus.coordinate_images()?;
    let nparams = locus.param.ring.nvars();
    let jacobian: Vec<Vec<MultiPoly>> = images
        .iter()
        .map(|f| (0..nparams).map(|v| f.partial(v)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials {
        let point: Vec<Scalar> = (0..nparams)
            .map(|_| q.from_i64(rng.gen_range(-BOUND..=BOUND)))
            .collect();
        let rows = jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(&point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rank = ExactMatrix::from_rows(q, rows)?.rank();
        best = best.max(rank);
    }
    Ok(DimMeasurement {
        measured: best,
        formula: case.dim_formula(),
        trials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    pub dim: usize,
    pub dim_lower: usize,
    pub codim: usize,
    pub bound: usize,
}

impl CodimReport {
    pub fn holds(&self) -> bool {
        self.codim >= self.bound
    }
}

/// Measured dimensions of `Y_t` and `Y_{t-1}` (`Y_1 = {0}`) and their
/// difference.
pub fn codim_report(case: Case, trials: usize, seed: u64) -> Result<CodimReport> {
    let dim = variety_dim_jacobian(case, trials, seed)?.measured;
    let dim_lower = match case.lower() {
        Some(lower) => variety_dim_jacobian(lower, trials, seed)?.measured,
        None => 0,
    };
    Ok(CodimReport {
        dim,
        dim_lower,
        codim: dim - dim_lower.min(dim),
        bound: case.codim_bound(),
    })
}

/// Per-case summary used by the `dims` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub case: String,
    pub t: usize,
    pub generators: usize,
    pub hilbert: Vec<usize>,
    pub dim_measured: usize,
    pub dim_formula: usize,
    pub dim_lower: usize,
    pub codim: usize,
    pub codim_ok: bool,
}

pub fn variety_report(case: Case, d_max: u32, trials: usize, seed: u64) -> Result<VarietyReport> {
    let locus = Locus::new(case, Field::Rationals)?;
    let hilbert = (0..=d_max).map(|d| locus.hilbert(d)).collect::<Result<Vec<_>>>()?;
    let dims = variety_dim_jacobian(case, trials, seed)?;
    let codim = codim_report(case, trials, seed)?;
    Ok(VarietyReport {
        case: case.to_string(),
        t: case.t(),
        generators: locus.gens.len(),
        hilbert,
        dim_measured: dims.measured,
        dim_formula: dims.formula,
        dim_lower: codim.dim_lower,
        codim: codim.codim,
        codim_ok: codim.holds(),
    })
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial;

    const Q: Field = Field::Rationals;

    #[test]
    fn case_validation() {
        assert!(Case::gl(2, 2, 2).is_ok());
        assert!(Case::gl(3, 2, 2).is_ok());
        assert!(Case::gl(2, 2, 3).is_err());
        assert!(Case::gl(3, 3, 1).is_err());
        assert!(Case::sp(4, 2).is_ok());
        assert!(Case::sp(5, 3).is_err());
        assert!(Case::sp(4, 1).is_err());
        assert_eq!(Case::gl(3, 3, 3).unwrap().lower(), Some(Case::Gl { m: 3, n: 3, t: 2 }));
        assert_eq!(Case::gl(3, 3, 2).unwrap().lower(), None);
    }

    #[test]
    fn ring_sizes() {
        let g = ParamRing::new(Case::gl(4, 3, 3).unwrap(), Q);
        assert_eq!(g.ring.nvars(), (4 + 3) * 2);
        let s = ParamRing::new(Case::sp(6, 3).unwrap(), Q);
        assert_eq!(s.ring.nvars(), 4 * 6);
        assert_eq!(GenericSkewRing::new(6, Q).ring.nvars(), 15);
        assert_eq!(GenericMatrixRing::new(2, 3, Q).ring.vars().name(4), "x(2,2)");
        let sk = GenericSkewRing::new(5, Q);
        assert_eq!(sk.ring.vars().name(sk.var(2, 4)), "y(3,5)");
        assert_eq!(g.ring.vars().name(g.v(1, 2)), "v(2,3)");
        assert_eq!(g.ring.vars().name(g.w(3, 1)), "w(4,2)");
    }

    #[test]
    fn det_gens_examples() {
        let r = GenericMatrixRing::new(2, 2, Q);
        let g = det_ideal_gens(&r, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "x(1,1)*x(2,2) - x(1,2)*x(2,1)");
        assert_eq!(det_ideal_gens(&GenericMatrixRing::new(2, 3, Q), 2).unwrap().len(), 3);
        let g = det_ideal_gens(&GenericMatrixRing::new(3, 3, Q), 2).unwrap();
        assert_eq!(g.len(), 9);
        assert!(g.iter().all(|p| p.num_terms() == 2 && p.is_homogeneous_of(2)));
        assert!(det_ideal_gens(&r, 3).is_err());
        let g = det_ideal_gens(&GenericMatrixRing::new(4, 3, Q), 3).unwrap();
        assert_eq!(g.len() as u128, binomial(4, 3) * binomial(3, 3));
        assert!(g.iter().all(|p| p.num_terms() == 6));
    }

    #[test]
    fn pfaff_gens_examples() {
        let g = pfaff_ideal_gens(&GenericSkewRing::new(4, Q), 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "y(1,2)*y(3,4) - y(1,3)*y(2,4) + y(1,4)*y(2,3)");
        assert_eq!(pfaff_ideal_gens(&GenericSkewRing::new(5, Q), 2).unwrap().len(), 5);
        let g = pfaff_ideal_gens(&GenericSkewRing::new(6, Q), 3).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].num_terms(), 15);
        assert!(g[0].is_homogeneous_of(3));
        assert!(pfaff_ideal_gens(&GenericSkewRing::new(5, Q), 3).is_err());
    }

    #[test]
    fn pi_sharp_examples() {
        let case = Case::gl(2, 2, 2).unwrap();
        let s = GenericMatrixRing::new(2, 2, Q);
        let p = ParamRing::new(case, Q);
        let x11 = s.ring.var(s.var(0, 0));
        let img = pi_sharp_gl(&s, &p, &x11).unwrap();
        assert_eq!(img.to_string(), "w(1,1)*v(1,1)");
        let x22 = s.ring.var(s.var(1, 1));
        let img = pi_sharp_gl(&s, &p, &x11.mul(&x22)).unwrap();
        let t = &p.ring;
        let expected = t
            .var(p.w(0, 0))
            .mul(&t.var(p.v(0, 0)))
            .mul(&t.var(p.w(1, 0)))
            .mul(&t.var(p.v(0, 1)));
        assert_eq!(img, expected);
        assert!(img.is_homogeneous_of(4));
        // wrong shape
        let p3 = ParamRing::new(Case::gl(3, 3, 2).unwrap(), Q);
        assert!(pi_sharp_gl(&s, &p3, &x11).is_err());
    }

    #[test]
    fn pi_sharp_sp_examples() {
        let y = GenericSkewRing::new(4, Q);
        let p = ParamRing::new(Case::sp(4, 2).unwrap(), Q);
        let img = pi_sharp_sp(&y, &p, &y.ring.var(y.var(0, 1))).unwrap();
        assert_eq!(img.to_string(), "v(1,1)*v(2,2) - v(1,2)*v(2,1)");
        assert_eq!(pi_sharp_sp(&y, &p, &y.ring.one_poly()).unwrap(), p.ring.one_poly());
        let p5 = ParamRing::new(Case::sp(5, 2).unwrap(), Q);
        assert!(pi_sharp_sp(&y, &p5, &y.ring.one_poly()).is_err());
    }

    #[test]
    fn generators_map_to_zero() {
        for field in [Q, Field::Prime(2), Field::Prime(3)] {
            for case in [
                Case::gl(2, 2, 2),
                Case::gl(3, 3, 2),
                Case::gl(3, 3, 3),
                Case::sp(4, 2),
                Case::sp(5, 2),
            ] {
                let l = Locus::new(case.unwrap(), field).unwrap();
                assert!(l.generators_vanish().unwrap(), "{} over {field}", l.case);
            }
        }
    }

    #[test]
    fn ideal_dims() {
        let r = GenericMatrixRing::new(2, 2, Q);
        let g = det_ideal_gens(&r, 2).unwrap();
        assert_eq!(ideal_component_dim(&g, 2).unwrap(), 1);
        assert_eq!(ideal_component_dim(&g, 1).unwrap(), 0);
        let r3 = GenericMatrixRing::new(3, 3, Q);
        let g3 = det_ideal_gens(&r3, 2).unwrap();
        // Segre P2 x P2: degree-3 quotient has C(5,2)^2 = 100 of the C(11,3) = 165 monomials
        assert_eq!(ideal_component_dim(&g3, 3).unwrap(), 165 - 100);
    }

    /// `(d+1)^2` for 2x2 rank <= 1; Segre `C(d+2,2)(d+1)` for 3x2.
    #[test]
    fn hilbert_examples() {
        let l = Locus::new(Case::gl(2, 2, 2).unwrap(), Q).unwrap();
        for d in 0..=3u32 {
            assert_eq!(l.hilbert(d).unwrap(), ((d + 1) * (d + 1)) as usize);
        }
        let l = Locus::new(Case::gl(3, 2, 2).unwrap(), Q).unwrap();
        for d in 0..=3u32 {
            let expect = binomial(d as u64 + 2, 2) * (d as u128 + 1);
            assert_eq!(l.hilbert(d).unwrap() as u128, expect);
        }
        let l = Locus::new(Case::sp(4, 2).unwrap(), Q).unwrap();
        assert_eq!(
            (0..=2).map(|d| l.hilbert(d).unwrap()).collect::<Vec<_>>(),
            vec![1, 6, 20]
        );
    }

    #[test]
    fn hilbert_is_monotone() {
        for case in [Case::gl(3, 3, 2), Case::sp(5, 2)] {
            let l = Locus::new(case.unwrap(), Field::Prime(3)).unwrap();
            let h: Vec<usize> = (0..=3).map(|d| l.hilbert(d).unwrap()).collect();
            assert!(h.windows(2).all(|w| w[0] <= w[1]), "{h:?}");
        }
    }

    #[test]
    fn jacobian_dimensions() {
        let d = variety_dim_jacobian(Case::gl(3, 3, 2).unwrap(), 5, 1).unwrap();
        assert_eq!((d.measured, d.formula), (5, 5));
        let d = variety_dim_jacobian(Case::sp(4, 2).unwrap(), 5, 1).unwrap();
        assert_eq!((d.measured, d.formula), (5, 5));
        let d = variety_dim_jacobian(Case::gl(2, 2, 2).unwrap(), 5, 1).unwrap();
        assert_eq!((d.measured, d.formula), (3, 3));
    }

    #[test]
    fn codim_examples() {
        let c = codim_report(Case::gl(2, 2, 2).unwrap(), 3, 7).unwrap();
        assert_eq!((c.dim, c.dim_lower, c.codim), (3, 0, 3));
        let c = codim_report(Case::gl(3, 3, 3).unwrap(), 3, 7).unwrap();
        assert_eq!((c.dim, c.dim_lower, c.codim), (8, 5, 3));
        assert!(c.holds());
        let c = codim_report(Case::sp(6, 3).unwrap(), 3, 7).unwrap();
        assert_eq!((c.dim, c.dim_lower, c.codim), (14, 9, 5));
        assert!(c.holds());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
