use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cak_bench::{artinian_power, standard_ring};
use cak_core::detring::{det_reduction_sequence, generic_matrix_ring};
use cak_core::quotient::ext_dims;
use cak_core::resolve::resolve_quotient;
use cak_core::semigroup::toric_ideal;
use cak_core::{IdealHandle, NumericalSemigroup, PresentedModule, PrimeField};

fn toric(c: &mut Criterion) {
    let mut g = c.benchmark_group("toric_kernel");
    for gens in [vec![6u64, 11, 16, 26], vec![10, 14, 16, 23], vec![7, 9, 11, 13, 15]] {
        let s = NumericalSemigroup::new(gens.clone()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{gens:?}")), &s, |b, s| {
            b.iter(|| toric_ideal(PrimeField::default(), s).unwrap().groebner_basis().unwrap().len())
        });
    }
    g.finish();
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolve_power_of_maximal_ideal");
    for (n, e) in [(3usize, 2u32), (3, 3), (4, 2)] {
        let s = standard_ring(n);
        let m = IdealHandle::in_poly_ring(&s, (0..n).map(|i| s.var(i)).collect()).unwrap();
        g.bench_function(format!("n{n}_e{e}"), |b| {
            b.iter(|| {
                let i = IdealHandle::in_poly_ring(&s, m.power(e).unwrap().generators().to_vec()).unwrap();
                resolve_quotient(&i, None).unwrap().ranks()
            })
        });
    }
    g.finish();
}

fn ext(c: &mut Criterion) {
    let mut g = c.benchmark_group("ext_residue_field");
    for n in [2u32, 3] {
        let r = artinian_power(n);
        let k = PresentedModule::residue_field(r.presentation());
        g.bench_function(format!("power_{n}"), |b| b.iter(|| ext_dims(&r, &k, &k, 4).unwrap().dims));
    }
    g.finish();
}

fn det_reduction(c: &mut Criterion) {
    c.bench_function("det_reduction_2x4", |b| {
        let ring = generic_matrix_ring(PrimeField::default(), 2, 4).unwrap();
        b.iter(|| det_reduction_sequence(&ring, 2, 4).unwrap().1.verified)
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = toric, resolution, ext, det_reduction
}
criterion_main!(benches);
