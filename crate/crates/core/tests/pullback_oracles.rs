use nefmirror::builtin;
use nefmirror::nef::{divisor_from_polytope, pullback_divisor, TorusDivisor};

#[test]
fn pullbacks_to_pi() {
    let sigma = builtin::sigma_nabla_named();
    let pi = builtin::pi().unwrap();
    let d1 = divisor_from_polytope(&builtin::nabla1(), &sigma).unwrap();
    let d2 = divisor_from_polytope(&builtin::nabla2(), &sigma).unwrap();
    // D_∇₁ = D_{u1}+…+D_{u6}, D_∇₂ = D_{v1}+…+D_{v6}.
    for i in 1..=6 {
        assert_eq!(d1.coeff(&builtin::u(i)), Some(1));
        assert_eq!(d1.coeff(&builtin::v(i)), Some(0));
        assert_eq!(d2.coeff(&builtin::v(i)), Some(1));
    }
    let p1 = pullback_divisor(&d1, &pi).unwrap();
    let p2 = pullback_divisor(&d2, &pi).unwrap();
    let is_u = |r: &nefmirror::LatticeVector| r.coords()[3..].iter().all(|&x| x >= 0);
    let ones = |d: &TorusDivisor| d.coeffs.iter().filter(|&&c| c == 1).count();
    assert_eq!(ones(&p1), 55);
    assert_eq!(ones(&p2), 55);
    for (r, (&a, &b)) in pi.rays().iter().zip(p1.coeffs.iter().zip(&p2.coeffs)) {
        assert_eq!((a, b), if is_u(r) { (1, 0) } else { (0, 1) }, "{r:?}");
    }
    let sum = p1.add(&p2).unwrap();
    assert_eq!(sum, TorusDivisor::anticanonical(pi.clone()));
}
