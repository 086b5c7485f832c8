use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gl2_cayley::isometry::{canonicalize, canonicalize_brute_force};
use gl2_cayley::{BitMatrix, IsometrySpec, Transvection};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn samples(n: usize, count: usize) -> Vec<BitMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    (0..count).map(|_| BitMatrix::random(n, &mut rng).unwrap()).collect()
}

fn bench_canonicalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonicalize");
    for n in [4, 6, 8] {
        let ms = samples(n, 64);
        for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
            group.bench_with_input(BenchmarkId::new(spec.to_string(), n), &ms, |b, ms| {
                b.iter(|| ms.iter().map(|m| canonicalize(black_box(m), spec).key.bits()).fold(0, u64::wrapping_add))
            });
        }
    }
    let ms = samples(6, 16);
    group.bench_function("brute-force/6", |b| {
        b.iter(|| ms.iter().map(|m| canonicalize_brute_force(black_box(m), IsometrySpec::SymOnly).orbit_size).sum::<u64>())
    });
    group.finish();
}

fn bench_apply(c: &mut Criterion) {
    let m = samples(8, 1)[0];
    let gens: Vec<Transvection> = Transvection::all(8).collect();
    c.bench_function("apply/8/all-generators", |b| {
        b.iter(|| gens.iter().map(|&t| black_box(m).apply(t).bits()).fold(0, u64::wrapping_add))
    });
    let a = samples(8, 2);
    c.bench_function("multiply/8", |b| b.iter(|| black_box(a[0]).multiply(&a[1]).unwrap()));
}

criterion_group!(benches, bench_canonicalize, bench_apply);
criterion_main!(benches);
