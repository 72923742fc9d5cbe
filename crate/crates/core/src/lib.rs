//! Exact toric geometry and Picard–Fuchs computations for the mirror family
//! of the complete intersection of two cubics in P⁵.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod builtin;
pub mod error;
pub mod lattice;
pub mod lp;
pub mod mirror;
pub mod nef;
pub mod pf;
pub mod triangulation;

pub use error::{Error, Result};
pub use lattice::{Cone, Fan, LatticeSpace, LatticeVector, Polytope};
