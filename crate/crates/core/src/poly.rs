//! Sparse multivariate polynomials with exact coefficients.
//!
//! Monomials are dense exponent vectors over a fixed [`VarSet`] and are
//! ordered graded-lexicographically: higher total degree first, ties broken
//! by the larger exponent of the earliest variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{RowEchelon, SparseRow};
use crate::scalar::{CommRing, Field, Scalar};

/// Ordered, duplicate-free variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<VarSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::OutOfRange(format!("duplicate variable {n}")));
            }
        }
        Ok(VarSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Polynomial ring `field[vars]`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Arc<VarSet>,
    field: Field,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(vars: VarSet, field: Field) -> PolyRing {
        PolyRing {
            vars: Arc::new(vars),
            field,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: Field) -> PolyRing {
        PolyRing {
            vars: Arc::clone(&self.vars),
            field,
        }
    }

    /// Ring with one extra variable appended.
    pub fn extended(&self, name: &str) -> Result<PolyRing> {
        let mut names = self.vars.names.clone();
        names.push(name.to_string());
        Ok(PolyRing::new(VarSet::new(names)?, self.field))
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        MultiPoly::monomial(self, Monomial::new(e), self.field.one())
    }

    pub fn var_by_name(&self, name: &str) -> Option<MultiPoly> {
        self.vars.index_of(name).map(|i| self.var(i))
    }

    pub fn constant(&self, c: Scalar) -> MultiPoly {
        MultiPoly::monomial(self, Monomial::one(self.nvars()), c)
    }

    pub fn zero_poly(&self) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one_poly(&self) -> MultiPoly {
        self.constant(self.field.one())
    }
}

impl CommRing for PolyRing {
    type Elem = MultiPoly;
    fn zero(&self) -> MultiPoly {
        self.zero_poly()
    }
    fn one(&self) -> MultiPoly {
        self.one_poly()
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn exact_div(&self, a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
        a.exact_div(b)
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Monomial {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial::new(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, pos: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            cur[pos] = left;
            out.push(Monomial::new(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(nvars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = vec![0u16; nvars];
    rec(nvars, 0, d as u16, &mut cur, &mut out);
    out
}

/// `monomials_of_degree` lifted to polynomials in `ring`.
pub fn monomial_basis(ring: &PolyRing, d: u32) -> Vec<MultiPoly> {
    monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| MultiPoly::monomial(ring, m, ring.field.one()))
        .collect()
}

/// `C(n, k)` as `u128`; used for size estimates.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: u32) -> u128 {
    if nvars == 0 {
        return u128::from(d == 0);
    }
    binomial(nvars as u64 + d as u64 - 1, d as u64)
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn monomial(ring: &PolyRing, m: Monomial, c: Scalar) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> MultiPoly {
        let mut p = ring.zero_poly();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// True when every term has degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.ring.zero_poly();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Panics on ring mismatch; use [`MultiPoly::try_add`] for a checked sum.
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.try_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("ring mismatch")
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero_poly();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.ring.one_poly();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient when `divisor` divides `self` exactly, by repeated
    /// leading-term division.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = self.ring.zero_poly();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            let t = MultiPoly::monomial(&self.ring, qm, qc);
            rem = rem.sub(&divisor.mul(&t));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = self.ring.zero_poly();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), &(c * &self.ring.field.from_i64(e as i64)));
        }
        out
    }

    /// Value at a point (one scalar per variable).
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables but point of length {}",
                self.ring.nvars(),
                point.len()
            )));
        }
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// The same polynomial read in another ring with identical variables,
    /// after mapping coefficients by `f`.
    pub fn map_coefficients(&self, ring: &PolyRing, f: impl Fn(&Scalar) -> Scalar) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let n = self.ring.vars.name(i);
                        if e == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A ring homomorphism defined by images of the source variables.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: PolyRing,
    target: PolyRing,
    images: Vec<Option<MultiPoly>>,
}

impl Substitution {
    pub fn new(source: &PolyRing, target: &PolyRing) -> Substitution {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.nvars()],
        }
    }

    /// Sets the image of source variable `var`.
    pub fn set(&mut self, var: usize, image: MultiPoly) -> Result<()> {
        if image.ring != self.target {
            return Err(Error::VarSetMismatch);
        }
        self.images[var] = Some(image);
        Ok(())
    }

    pub fn with(mut self, var: usize, image: MultiPoly) -> Result<Self> {
        self.set(var, image)?;
        Ok(self)
    }

    pub fn target(&self) -> &PolyRing {
        &self.target
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.ring != self.source {
            return Err(Error::VarSetMismatch);
        }
        let mut powers: HashMap<(usize, u16), MultiPoly> = HashMap::new();
        let mut out = self.target.zero_poly();
        for (m, c) in &f.terms {
            let mut t = self.target.constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images[v]
                    .as_ref()
                    .ok_or_else(|| Error::MissingImage(self.source.vars.name(v).to_string()))?;
                let p = powers.entry((v, e)).or_insert_with(|| img.pow(e as u32));
                t = t.mul(p);
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

/// First-order operator `sum c * x_u * d/dx_z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub terms: Vec<DerivationTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivationTerm {
    pub coeff: Scalar,
    pub multiplier: usize,
    pub target: usize,
}

impl Derivation {
    pub fn new(terms: Vec<DerivationTerm>) -> Derivation {
        Derivation { terms }
    }

    pub fn term(coeff: Scalar, multiplier: usize, target: usize) -> DerivationTerm {
        DerivationTerm {
            coeff,
            multiplier,
            target,
        }
    }

    /// Applies the operator by the Leibniz rule, term by term.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let field = f.ring.field;
        let mut out = f.ring.zero_poly();
        for (m, c) in &f.terms {
            for t in &self.terms {
                let e = m.0[t.target];
                if e == 0 {
                    continue;
                }
                let mut exps = m.0.to_vec();
                exps[t.target] -= 1;
                exps[t.multiplier] += 1;
                let coeff = &(c * &t.coeff) * &field.from_i64(e as i64);
                out.add_term(Monomial::new(exps), &coeff);
            }
        }
        out
    }
}

/// Basis of a space of homogeneous polynomials of one degree.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    degree: u32,
    field: Field,
    basis: Vec<MultiPoly>,
}

impl GradedSpace {
    /// Checks homogeneity of every element and linear independence.
    pub fn new(field: Field, degree: u32, basis: Vec<MultiPoly>) -> Result<GradedSpace> {
        if basis.iter().any(|p| p.ring.field != field) {
            return Err(Error::VarSetMismatch);
        }
        let dim = span_dim(&basis, degree)?;
        if dim != basis.len() {
            return Err(Error::Precondition(format!(
                "{} basis elements span only {dim} dimensions",
                basis.len()
            )));
        }
        Ok(GradedSpace { degree, field, basis })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }
}

/// Column indexing of a set of monomials, used to turn polynomials into
/// sparse coefficient rows.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    index: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut idx = Self::new();
        for m in ms {
            idx.intern(&m);
        }
        idx
    }

    pub fn intern(&mut self, m: &Monomial) -> usize {
        if let Some(&i) = self.index.get(m) {
            return i;
        }
        let i = self.monomials.len();
        self.index.insert(m.clone(), i);
        self.monomials.push(m.clone());
        i
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    /// Sparse coefficient row of `p`, interning unseen monomials.
    pub fn row(&mut self, p: &MultiPoly) -> SparseRow {
        let mut row: SparseRow = p.terms.iter().map(|(m, c)| (self.intern(m), c.clone())).collect();
        row.sort_by_key(|(j, _)| *j);
        row
    }

    /// Sparse row for a polynomial whose support is already indexed.
    pub fn row_known(&self, p: &MultiPoly) -> Option<SparseRow> {
        let mut row = p
            .terms
            .iter()
            .map(|(m, c)| self.get(m).map(|j| (j, c.clone())))
            .collect::<Option<SparseRow>>()?;
        row.sort_by_key(|(j, _)| *j);
        Some(row)
    }
}

/// Dimension of the span of homogeneous degree-`d` polynomials.
pub fn span_dim(polys: &[MultiPoly], d: u32) -> Result<usize> {
    let Some(first) = polys.first() else {
        return Ok(0);
    };
    if polys.iter().any(|p| !p.is_homogeneous_of(d)) {
        return Err(Error::Inhomogeneous(d));
    }
    let mut idx = MonomialIndex::new();
    let rows: Vec<SparseRow> = polys
        .iter()
        .map(|p| {
            if p.ring != first.ring {
                Err(Error::VarSetMismatch)
            } else {
                Ok(idx.row(p))
            }
        })
        .collect::<Result<_>>()?;
    let mut ech = RowEchelon::new(first.ring.field, idx.len());
    for r in rows {
        ech.insert(r);
    }
    Ok(ech.rank())
}
