//! Picard–Fuchs operators of the mirror family and their local analysis.

pub mod frobenius;
pub mod lmhs;
pub mod ore;
pub mod period;
pub mod poly;
pub mod series;

pub use frobenius::{
    companion_matrix, frobenius_coefficient, frobenius_solutions, indicial_polynomial, monodromy_classification,
    Classification, FrobeniusSolution, MonodromyKind, MonodromyModel,
};
pub use lmhs::{diamond_with, k_point_candidates, k_point_constraints, lmhs_enumeration, HodgeDeligneDiamond, LmhsConstraint};
pub use ore::{psi_z_transport, z_psi_transport, OreOperator};
pub use period::{annihilation_check, period_coefficient, period_series, yukawa_check, AnnihilationReport};
pub use poly::{Poly, RatFunc};
pub use series::TruncatedSeries;

use crate::arith::{q, qr, Q};
use num_traits::One;

fn d_poly(roots: &[(Q, u32)]) -> Poly {
    roots.iter().fold(Poly::constant(Q::one()), |acc, (r, m)| &acc * &Poly::linear_root(r.clone()).pow(*m))
}

/// L = D⁴ − 3⁶z(D + 1/3)²(D + 2/3)² in z = (3ψ)^{−6}.
pub fn operator_l() -> OreOperator {
    let d4 = OreOperator::from_d_poly("z", &RatFunc::one(), &d_poly(&[(q(0), 4)]));
    let rest = d_poly(&[(qr(-1, 3), 2), (qr(-2, 3), 2)]);
    let tail = OreOperator::from_d_poly("z", &RatFunc::poly(Poly::monomial(q(729), 1)), &rest);
    d4.sub(&tail)
}

/// L = 6^{−4}(Q⁴ − ψ^{−6}(Q − 2)²(Q − 4)²) with Q = ψ d/dψ.
pub fn operator_l_psi() -> OreOperator {
    let c = q(1296).recip();
    let q4 = OreOperator::from_d_poly("psi", &RatFunc::constant(c.clone()), &d_poly(&[(q(0), 4)]));
    let inv6 = RatFunc::new(Poly::constant(c), Poly::monomial(Q::one(), 6)).expect("nonzero");
    q4.sub(&OreOperator::from_d_poly("psi", &inv6, &d_poly(&[(q(2), 2), (q(4), 2)])))
}

/// R = ψ⁶/(1 − ψ⁶)(Q + 2)⁴ − 1/(1 − ψ⁶)Q²(Q − 2)².
pub fn operator_r() -> OreOperator {
    let den = Poly::from_ints(&[1, 0, 0, 0, 0, 0, -1]);
    let a = RatFunc::new(Poly::monomial(Q::one(), 6), den.clone()).expect("nonzero");
    let b = RatFunc::new(Poly::constant(Q::one()), den).expect("nonzero");
    OreOperator::from_d_poly("psi", &a, &d_poly(&[(q(-2), 4)]))
        .sub(&OreOperator::from_d_poly("psi", &b, &d_poly(&[(q(0), 2), (q(2), 2)])))
}

/// Built-in operators by name.
pub fn builtin_operator(name: &str) -> Option<OreOperator> {
    match name {
        "L" => Some(operator_l()),
        "L_psi" => Some(operator_l_psi()),
        "R" => Some(operator_r()),
        _ => None,
    }
}
