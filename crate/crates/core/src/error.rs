use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow: {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("lattice mismatch: {0}")]
    Space(String),
    #[error("vector {coords:?} is not in the sum-zero lattice")]
    NotSumZero { coords: Vec<i64> },
    #[error("origin is not interior; separating functional {witness:?}")]
    OriginNotInterior { witness: Vec<String> },
    #[error("polytope is not full-dimensional (dimension {dim} in rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("divisor is not Cartier on cone {cone}")]
    NotCartier { cone: usize },
    #[error("fan does not refine the coarse fan: ray {ray} lies in no coarse cone")]
    NotRefinement { ray: usize },
    #[error("invalid subdivision input: {0}")]
    Subdivision(String),
    #[error("gluing mismatch between facets {a} and {b} at simplex {simplex:?}")]
    Gluing { a: String, b: String, simplex: Vec<usize> },
    #[error("triangulation is not a star triangulation")]
    NotStar,
    #[error("unknown ray: {0}")]
    UnknownRay(String),
    #[error("point is not on the fiber; residuals {residuals:?}")]
    OffFiber { residuals: Vec<String> },
    #[error("psi is not a sixth root of unity")]
    NotRootOfUnity,
    #[error("division by zero")]
    DivisionByZero,
    #[error("irregular singular point: {0}")]
    Irregular(String),
    #[error("resonant exponent {0}: a Frobenius denominator vanishes")]
    Resonance(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
