//! Throughput comparison of the data-parallel entry points against plain
//! sequential loops over the same public primitives.
//!
//! With default features the library paths run on rayon; rebuilding with
//! `--no-default-features` turns them sequential, and the group names carry
//! the active mode so the two runs can be compared side by side:
//!
//!   cargo bench -p discriminantal
//!   cargo bench -p discriminantal --no-default-features

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use discriminantal::combin::k_subsets;
use discriminantal::{
    build_discriminantal, discriminantal_normal, enumerate_intersections, Arrangement, IndexSet,
    Matrix, Scalar,
};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn random_generic(seed: u64, n: usize, k: usize) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let normals: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..k)
                    .map(|_| Scalar::from_int(rng.gen_range(-100..=100)))
                    .collect()
            })
            .collect();
        if normals.iter().any(|v| v.iter().all(Scalar::is_zero)) {
            continue;
        }
        let a = Arrangement::new(k, normals, None).unwrap();
        if a.is_generic() {
            return a;
        }
    }
}

fn bench_build(c: &mut Criterion) {
    let a = random_generic(1, 11, 4);
    let mut group = c.benchmark_group("build_discriminantal");
    // library path: parallel across the C(n, k+1) normals when enabled
    group.bench_with_input(BenchmarkId::new(mode(), "11x4"), &a, |b, a| {
        b.iter(|| build_discriminantal(a).unwrap())
    });
    // reference loop: one normal at a time through the public per-set entry
    group.bench_with_input(BenchmarkId::new("per_set_loop", "11x4"), &a, |b, a| {
        b.iter(|| {
            let mut labels = a.labels().to_vec();
            labels.sort_unstable();
            k_subsets(&labels, a.k() + 1)
                .into_iter()
                .map(|s| discriminantal_normal(a, &IndexSet::new(s)).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn bench_genericity(c: &mut Criterion) {
    let a = random_generic(2, 12, 4);
    let mut group = c.benchmark_group("is_generic");
    group.bench_with_input(BenchmarkId::new(mode(), "12x4"), &a, |b, a| {
        b.iter(|| a.is_generic())
    });
    group.bench_with_input(BenchmarkId::new("minor_loop", "12x4"), &a, |b, a| {
        b.iter(|| {
            let idx: Vec<usize> = (0..a.n()).collect();
            k_subsets(&idx, a.k()).into_iter().all(|cols| {
                let m = Matrix::from_rows(
                    cols.iter().map(|&c| a.normals()[c].clone()).collect(),
                )
                .unwrap();
                !m.det().unwrap().is_zero()
            })
        })
    });
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let a = random_generic(3, 8, 5);
    let b85 = build_discriminantal(&a).unwrap();
    let a2 = random_generic(4, 7, 2);
    let b72 = build_discriminantal(&a2).unwrap();
    let mut group = c.benchmark_group("enumerate_intersections");
    group.sample_size(20);
    group.bench_with_input(BenchmarkId::new(mode(), "8x5_rank2"), &b85, |bch, b| {
        bch.iter(|| enumerate_intersections(b, 2))
    });
    group.bench_with_input(BenchmarkId::new(mode(), "7x2_rank3"), &b72, |bch, b| {
        bch.iter(|| enumerate_intersections(b, 3))
    });
    group.finish();
}

criterion_group!(benches, bench_build, bench_genericity, bench_enumeration);
criterion_main!(benches);
