//! The mirror family in Cox coordinates and its singular fibers.

pub mod cox;
pub mod cyclotomic;
pub mod labels;
pub mod laurent;
pub mod patch;
pub mod singular;

pub use cox::{
    cox_equations, index_support_obstruction, missing_indices, no_common_cone, same_class, torus_restriction, Psi,
};
pub use cyclotomic::Cyc;
pub use labels::{RayKind, RayLabel};
pub use laurent::{LaurentPolynomial, PsiPoly, Variables};
pub use patch::{affine_patch, nabla_patch, AffinePatch};
pub use singular::{
    fiber_point, fiber_residuals, matches_printed_form, odp_certificate, torus_jacobian_rank, QuadraticForm,
};
