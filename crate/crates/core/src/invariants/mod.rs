//! Invariants of the parameter ring, the theorem-verification harness,
//! group-element recovery on fibers and finite-field point counts.

mod ops;
mod points;
mod recover;
mod space;
mod verify;

pub use ops::{embed, is_weight_zero, torus_weight, LieOperatorSet, OneParamSubgroup};
pub use points::{count_points_bundle, gl_order, sp_order, PointCount, POINT_CAP};
pub use recover::{
    random_full_rank, random_matrix, random_symplectic, recover_g_gl, recover_g_gl_with, recover_g_sp,
    recover_g_sp_with, PivotOrder,
};
pub use space::{invariant_space_dim, Invariance, Method};
pub use verify::{estimated_monomials, verify_case, verify_dp_gl, verify_dp_sp, DegreeCheck, Verdict, VerifyReport};
