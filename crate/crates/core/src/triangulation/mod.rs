//! Lattice triangulations: edgewise and prism subdivisions, the glued
//! star triangulation τ(P), exact verification and regularity certificates.

pub mod esd;
pub mod geom;
pub mod prism;
pub mod projective;
pub mod simplex;
pub mod star;
pub mod tau;
pub mod verify;

pub use esd::{color_schemes, edgewise_subdivision, ColorScheme};
pub use prism::prism_subdivision;
pub use projective::{check_projective, Projectivity, SecondaryCertificate};
pub use simplex::{Simplex, Triangulation};
pub use star::fan_from_star_triangulation;
pub use tau::{build_tau_p, TauP};
pub use verify::{verify_triangulation, VerifyReport};
