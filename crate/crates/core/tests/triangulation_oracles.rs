use std::collections::BTreeSet;

use nefmirror::arith::{q, to_q_vec, Q};
use nefmirror::builtin::{self, u, v3};
use nefmirror::lattice::{lattice_points, Fan, LatticeSpace, Polytope};
use nefmirror::triangulation::esd::{scheme_simplex, ColorScheme};
use nefmirror::triangulation::projective::{regular_triangulation, SecondaryCertificate, secondary_constraints, verify_certificate, verify_witness};
use nefmirror::triangulation::star::non_unimodular_cones;
use nefmirror::triangulation::tau::{facet_restriction_mismatches, facet_triangulation};
use nefmirror::triangulation::*;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_simplex(pts: &[Vec<i64>]) -> Simplex {
    Simplex::new(LatticeSpace::Free(pts[0].len()), pts.iter().map(|p| to_q_vec(p)).collect()).unwrap()
}

fn standard_simplex(d: usize) -> Simplex {
    let mut pts = vec![vec![0; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        pts.push(e);
    }
    free_simplex(&pts)
}

fn hull_of(s: &Simplex) -> Polytope {
    Polytope::from_points(s.space, &s.vertices)
}

#[test]
fn worked_color_scheme_gives_listed_simplex() {
    let s = Simplex::from_lattice(&(1..=5).map(u).collect::<Vec<_>>()).unwrap();
    let c = ColorScheme::new(3, vec![0, 2, 1, 1]).unwrap();
    let got = scheme_simplex(&s, &c);
    // Column multisets 013,113,114,124,134 over vertices p0..p4 = u1..u5.
    let want = [[1, 2, 4], [2, 2, 4], [2, 2, 5], [2, 3, 5], [2, 4, 5]]
        .map(|[a, b, c]| to_q_vec(&builtin::u3(a, b, c).intrinsic()));
    assert_eq!(got.vertices, want.to_vec());
}

#[test]
fn rationality_cone_columns() {
    // Dividers produce columns 123,124,224,234,235 over v1..v5.
    let c = ColorScheme::new(3, vec![2, 0, 1, 2]).unwrap();
    assert_eq!(c.columns(), vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 1, 3], vec![1, 2, 3], vec![1, 2, 4]]);
    let s = Simplex::from_lattice(&(1..=5).map(builtin::v).collect::<Vec<_>>()).unwrap();
    let got: BTreeSet<Vec<Q>> = scheme_simplex(&s, &c).vertices.into_iter().collect();
    let want: BTreeSet<Vec<Q>> = [v3(1, 2, 3), v3(1, 2, 4), v3(2, 2, 4), v3(2, 3, 4), v3(2, 3, 5)]
        .iter()
        .map(|x| to_q_vec(&x.intrinsic()))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn k1_is_identity() {
    let s = standard_simplex(3);
    let t = edgewise_subdivision(&s, 1).unwrap();
    assert_eq!(t.all_simplices(), vec![s]);
    assert!(edgewise_subdivision(&standard_simplex(2), 0).is_err());
}

#[test]
fn esd3_of_four_simplex() {
    let s = standard_simplex(4);
    let big = Simplex { space: s.space, vertices: s.vertices.iter().map(|v| v.iter().map(|x| x * q(3)).collect()).collect() };
    let t = edgewise_subdivision(&big, 3).unwrap();
    assert_eq!(t.len(), 81);
    let r = verify_triangulation(&t, &hull_of(&big));
    assert!(r.passes(), "{r:?}");
    // Unit simplices: each has normalized volume 1, total 3⁴.
    assert_eq!(r.volume_simplices, "81");
    assert_eq!(r.volume_polytope, "81");
}

#[test]
fn esd_counts_and_validity_small() {
    for d in 1..=3 {
        for k in 1..=3 {
            let s = standard_simplex(d);
            let t = edgewise_subdivision(&s, k).unwrap();
            assert_eq!(t.len(), k.pow(d as u32));
            assert!(verify_triangulation(&t, &hull_of(&s)).axioms_hold());
        }
    }
}

#[test]
fn face_lemma() {
    for d in 1..=4 {
        let s = standard_simplex(d);
        let full = edgewise_subdivision(&s, 3).unwrap();
        for drop in 0..=d {
            let face = Simplex {
                space: s.space,
                vertices: s.vertices.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| v.clone()).collect(),
            };
            let face_hull = hull_of(&face);
            let on_face = |v: &Vec<Q>| face_hull.contains(v);
            let restricted: BTreeSet<Vec<Vec<Q>>> = full
                .cells()
                .into_iter()
                .map(|c| c.into_iter().filter(on_face).collect::<Vec<_>>())
                .filter(|c| c.len() == d)
                .collect();
            assert_eq!(restricted, edgewise_subdivision(&face, 3).unwrap().cells(), "d={d} drop={drop}");
        }
    }
}

#[test]
fn prism_over_a_c_face_simplex() {
    let pts: Vec<Vec<Q>> = [2, 3, 5, 6].iter().map(|&i| to_q_vec(&u(i).intrinsic())).collect();
    let delta = Simplex::new(LatticeSpace::N, pts).unwrap();
    let w = to_q_vec(&[1, 1, 1, -1, -1]);
    let t = prism_subdivision(&delta, &delta.translate(&w)).unwrap();
    assert_eq!(t.len(), 4);
    let mut pts = delta.vertices.clone();
    pts.extend(delta.translate(&w).vertices);
    let r = verify_triangulation(&t, &Polytope::from_points(LatticeSpace::N, &pts));
    assert!(r.axioms_hold(), "{r:?}");
}

#[test]
fn gluing_u1_with_c14() {
    let (name_u, tu) = facet_triangulation(&[1, 2, 3, 4, 5]).unwrap();
    let (name_c, tc) = facet_triangulation(&[1, 2, 4, 5, 7, 8, 10, 11]).unwrap();
    assert_eq!((name_u.as_str(), name_c.as_str()), ("U1", "C1,4"));
    // The shared face is conv(u2, u3, u5, u6).
    let face_pts: Vec<Vec<Q>> = [2, 3, 5, 6].iter().map(|&i| to_q_vec(&u(i).intrinsic())).collect();
    let face = Polytope::from_points(LatticeSpace::N, &face_pts);
    let restrict = |t: &Triangulation| -> BTreeSet<Vec<Vec<Q>>> {
        t.cells().into_iter().map(|c| c.into_iter().filter(|v| face.contains(v)).collect::<Vec<_>>()).filter(|c| c.len() == 4).collect()
    };
    let a = restrict(&tu);
    assert_eq!(a.len(), 27);
    assert_eq!(a, restrict(&tc));
}

#[test]
fn tau_p_builds_and_verifies() {
    let tau = build_tau_p().unwrap();
    let t = &tau.triangulation;
    assert_eq!(tau.facets.len(), 15);
    assert_eq!(t.len(), 1458);
    assert_eq!(t.points.len(), 111);
    assert!(t.is_star());
    let p = builtin::p_polytope();
    let lattice: BTreeSet<Vec<Q>> = lattice_points(&p).iter().map(|v| to_q_vec(&v.intrinsic())).collect();
    assert_eq!(t.points.iter().cloned().collect::<BTreeSet<_>>(), lattice);
    assert!(facet_restriction_mismatches(&tau.facets, &tau.boundary).is_empty());
    let r = verify_triangulation(t, &p);
    assert!(r.passes() && r.star, "{r:?}");

    let mut dropped = t.clone();
    dropped.simplices.pop();
    assert!(!verify_triangulation(&dropped, &p).covers());
}

#[test]
fn pi_is_smooth_and_refines_sigma_nabla() {
    let tau = build_tau_p().unwrap();
    let pi = fan_from_star_triangulation(&tau.triangulation).unwrap();
    assert_eq!(pi.len(), 1458);
    assert_eq!(pi.rays().len(), 110);
    assert!(non_unimodular_cones(&pi).is_empty());
    let sigma = Fan::new(LatticeSpace::N, &builtin::named_nabla_cones().into_iter().map(|(_, c)| c).collect::<Vec<_>>());
    assert!(pi.refines(&sigma).is_ok());
    let target = builtin::rationality_cone().canonical();
    assert!(pi.cones().iter().any(|c| c.canonical() == target));
}

#[test]
fn non_star_rejected() {
    let s = free_simplex(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
    let t = Triangulation::from_simplices(s.space, &[s]);
    assert!(fan_from_star_triangulation(&t).is_err());
}

fn spiral() -> (Vec<Vec<Q>>, Triangulation) {
    let t = builtin::nonregular_triangulation();
    (t.points.clone(), t)
}

#[test]
fn spiral_triangulation_is_not_regular() {
    let (pts, t) = spiral();
    let hull = Polytope::from_points(LatticeSpace::Free(2), &pts);
    let r = verify_triangulation(&t, &hull);
    assert!(r.axioms_hold(), "{r:?}");
    let res = check_projective(&t).unwrap();
    let Projectivity::NotRegular(w) = &res.outcome else { panic!("expected a witness") };
    assert!(verify_witness(&res.constraints, t.points.len(), w));

    // Independent primal check: maximize s subject to C h ≥ s, s ≤ 1, h = h⁺ − h⁻.
    use nefmirror::lp::{solve, Lp};
    let cons = secondary_constraints(&t).unwrap();
    let n = t.points.len();
    let m = cons.len();
    let mut lp = Lp::new(m + 1);
    for p in 0..n {
        for sign in [1, -1] {
            let col: Vec<(usize, Q)> = cons
                .iter()
                .enumerate()
                .filter_map(|(r, c)| c.coeffs.iter().find(|(i, _)| *i == p).map(|(_, v)| (r, v * q(sign))))
                .collect();
            lp.add_column(col, Q::zero());
        }
    }
    // Row r: C_r h − s − slack_r = 0; last row: s + u = 1.
    let mut s_col: Vec<(usize, Q)> = (0..m).map(|r| (r, q(-1))).collect();
    s_col.push((m, q(1)));
    lp.add_column(s_col, q(-1));
    for r in 0..m {
        lp.add_column(vec![(r, q(-1))], Q::zero());
    }
    lp.add_column(vec![(m, q(1))], Q::zero());
    lp.b[m] = q(1);
    let sol = solve(&lp);
    assert!(sol.objective.is_zero(), "best slack {}", -sol.objective);
}

#[test]
fn regular_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<Vec<Q>> = [[0, 0], [4, 0], [0, 4], [4, 4], [1, 2], [2, 1], [3, 3]].iter().map(|p| to_q_vec(p)).collect();
    for _ in 0..5 {
        let heights: Vec<Q> = (0..pts.len()).map(|_| q(rng.gen_range(0..1000i64))).collect();
        let t = regular_triangulation(&pts, &heights, LatticeSpace::Free(2));
        let hull = Polytope::from_points(LatticeSpace::Free(2), &pts);
        let r = verify_triangulation(&t, &hull);
        assert!(r.axioms_hold(), "{r:?}");
        let res = check_projective(&t).unwrap();
        let Projectivity::Regular(cert) = &res.outcome else { panic!("regular by construction") };
        assert!(verify_certificate(&res.constraints, cert));
        assert_eq!(regular_triangulation(&t.points, &cert.heights, LatticeSpace::Free(2)).cells(), t.cells());
    }
}

#[test]
fn triangulation_json_round_trip() {
    let t = edgewise_subdivision(&Simplex::from_lattice(&(1..=5).map(u).collect::<Vec<_>>()).unwrap(), 3).unwrap();
    let j = serde_json::to_string(&t.to_json()).unwrap();
    let back = Triangulation::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, t);
}

#[test]
fn tau_p_is_projective() {
    let tau = build_tau_p().unwrap();
    let res = check_projective(&tau.triangulation).unwrap();
    let walls = res.constraints.len();
    assert_eq!(walls, 3645);
    let Projectivity::Regular(cert) = &res.outcome else { panic!("τ(P) should be regular") };
    assert!(verify_certificate(&res.constraints, cert));
    let back = SecondaryCertificate::from_json(&cert.to_json(), tau.triangulation.points.len()).unwrap();
    assert_eq!(&back, cert);
}
