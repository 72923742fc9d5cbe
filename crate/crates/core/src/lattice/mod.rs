//! Lattice geometry: vectors in N and M, polytopes, cones and fans.

pub mod cone;
pub mod dd;
pub mod fan;
pub mod hull;
pub mod json;
pub mod polytope;
pub mod vector;

pub use cone::{dual_cone, hilbert_basis, Cone};
pub use fan::{face_fan, normal_fan, Fan};
pub use polytope::{dual_polytope, lattice_points, minkowski_sum, DualPolytope, Halfspace, Polytope};
pub use vector::{LatticeSpace, LatticeVector};
