//! Exact computational algebra for determinantal and Pfaffian quotients.
//!
//! The crate computes, degree by degree and over `Q` and prime fields, both
//! sides of the two classical first-and-second fundamental theorems: the
//! graded pieces of `S/I_t` (minors) and `Sym(Λ²V)/Pf_2t` (sub-Pfaffians),
//! and the invariant subspaces of the coordinate rings of
//! `Hom(E,W) × Hom(V,E)` under `GL(E)` and of `Hom(V,E)` under `Sp(E)`.

pub mod error;
pub mod invariants;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod skew;
pub mod varieties;

pub use error::{Error, Result};
pub use matrix::{bareiss_determinant, ExactMatrix, RowEchelon};
pub use poly::{
    monomial_basis, span_dim, Derivation, GradedSpace, Monomial, MultiPoly, PolyRing, Substitution, VarSet,
};
pub use scalar::{CommRing, Field, Scalar};
pub use skew::{SkewMatrix, StandardForm};
