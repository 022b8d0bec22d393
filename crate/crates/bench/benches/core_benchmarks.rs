use criterion::{black_box, criterion_group, criterion_main, Criterion};

use lusztig_core::ffield::{odd_primes_up_to, FieldSpec};
use lusztig_core::lusztig::{eigen_check, fourier_transform, lusztig_function};
use lusztig_core::orbits::{build_atlas, orbit_partition_oracle};
use lusztig_core::padic::census;
use lusztig_core::DEFAULT_TOLERANCE;

fn bench_gauss_sums(c: &mut Criterion) {
    c.bench_function("gauss_sums_p_le_100", |b| {
        let primes = odd_primes_up_to(100);
        b.iter(|| {
            for &p in &primes {
                let spec = FieldSpec::new(p).unwrap();
                black_box(spec.gauss_sum());
            }
        })
    });
}

fn bench_fourier(c: &mut Criterion) {
    let spec = FieldSpec::new(7).unwrap();
    let f = lusztig_function(1, &spec).unwrap();
    c.bench_function("fourier_transform_sp2_p7", |b| {
        b.iter(|| black_box(fourier_transform(&f).unwrap()))
    });
    c.bench_function("eigen_check_sp2_p7", |b| {
        b.iter(|| black_box(eigen_check(&f, DEFAULT_TOLERANCE).unwrap()))
    });
}

fn bench_oracle(c: &mut Criterion) {
    let spec = FieldSpec::new(3).unwrap();
    let mut group = c.benchmark_group("orbits");
    group.sample_size(10);
    group.bench_function("oracle_n2_p3", |b| {
        b.iter(|| black_box(orbit_partition_oracle(2, &spec).unwrap().orbit_count()))
    });
    group.bench_function("atlas_n2_p3", |b| {
        b.iter(|| black_box(build_atlas(2, &spec).unwrap().orbits.len()))
    });
    group.finish();
}

fn bench_census(c: &mut Criterion) {
    c.bench_function("census_500", |b| b.iter(|| black_box(census(500).len())));
}

criterion_group!(
    benches,
    bench_gauss_sums,
    bench_fourier,
    bench_oracle,
    bench_census
);
criterion_main!(benches);
