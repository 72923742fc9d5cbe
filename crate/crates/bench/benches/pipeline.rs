use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use nefmirror::arith::to_q_vec;
use nefmirror::lattice::polytope::{dual_polytope, lattice_points};
use nefmirror::mirror::{odp_certificate, Cyc};
use nefmirror::pf::{builtin_operator, frobenius_solutions, k_point_constraints, lmhs_enumeration, monodromy_classification};
use nefmirror::pf::period::{period_series, yukawa_check};
use nefmirror::triangulation::{build_tau_p, edgewise_subdivision, Simplex};
use nefmirror::{builtin, LatticeSpace};

fn lattice(c: &mut Criterion) {
    let nabla = builtin::nabla();
    c.bench_function("dual of nabla", |b| b.iter(|| dual_polytope(&nabla).unwrap()));
    c.bench_function("lattice points of delta", |b| b.iter(|| lattice_points(&builtin::delta())));
}

fn triangulation(c: &mut Criterion) {
    let mut g = c.benchmark_group("triangulation");
    g.sample_size(10);
    g.bench_function("build tau", |b| b.iter(|| build_tau_p().unwrap()));
    let simplex = Simplex::new(
        LatticeSpace::Free(3),
        vec![to_q_vec(&[0, 0, 0]), to_q_vec(&[1, 0, 0]), to_q_vec(&[0, 1, 0]), to_q_vec(&[0, 0, 1])],
    )
    .unwrap();
    g.bench_function("edgewise subdivision k=3", |b| b.iter(|| edgewise_subdivision(&simplex, 3).unwrap()));
    g.finish();
}

fn mirror(c: &mut Criterion) {
    c.bench_function("node forms over mu6", |b| {
        b.iter_batched(Cyc::mu6, |roots| roots.iter().map(|p| odp_certificate(p).unwrap()).collect::<Vec<_>>(), BatchSize::SmallInput)
    });
}

fn picard_fuchs(c: &mut Criterion) {
    let l = builtin_operator("L").unwrap();
    let r = builtin_operator("R").unwrap();
    c.bench_function("period series 64", |b| b.iter(|| period_series(64)));
    c.bench_function("classify L", |b| b.iter(|| monodromy_classification(&l).unwrap()));
    c.bench_function("frobenius R 32", |b| b.iter(|| frobenius_solutions(&r, 32).unwrap()));
    c.bench_function("yukawa 20", |b| b.iter(|| yukawa_check(20)));
    c.bench_function("lmhs enumeration", |b| b.iter(|| lmhs_enumeration(4, &k_point_constraints())));
}

criterion_group!(benches, lattice, triangulation, mirror, picard_fuchs);
criterion_main!(benches);
