use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use c2x::gen::random_arc_system;
use c2x::{
    estimating_complex, find_coherent_orientation, find_isomorphism, is_combinatorial_sphere,
    make_map, random_sphere, tetrahedron,
};

fn bench_generation(c: &mut Criterion) {
    c.bench_function("random_sphere_100_ops", |b| {
        b.iter(|| random_sphere(black_box(7), black_box(100)))
    });
}

fn bench_recognizers(c: &mut Criterion) {
    let (sphere, _) = random_sphere(3, 200);
    c.bench_function("is_combinatorial_sphere_200_ops", |b| {
        b.iter(|| is_combinatorial_sphere(black_box(sphere.complex())))
    });
    c.bench_function("find_coherent_orientation_200_ops", |b| {
        b.iter(|| find_coherent_orientation(black_box(sphere.complex())).unwrap())
    });
}

fn bench_estimating(c: &mut Criterion) {
    let (sphere, _) = random_sphere(11, 60);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sys = random_arc_system(sphere.complex(), &mut rng);
    c.bench_function("estimating_complex_60_ops", |b| {
        b.iter(|| estimating_complex(black_box(&sys)).unwrap())
    });
}

fn bench_closure_round_trip(c: &mut Criterion) {
    let (sphere, _) = random_sphere(19, 60);
    let removed: BTreeSet<_> = sphere.complex().face_ids().take(3).collect();
    let map = make_map(&sphere, &removed).unwrap();
    c.bench_function("closure_round_trip_60_ops", |b| {
        b.iter(|| {
            let closure = map.spherical_closure().unwrap();
            make_map(&closure.sphere, &closure.improper).unwrap()
        })
    });
}

fn bench_isomorphism(c: &mut Criterion) {
    let t = tetrahedron();
    c.bench_function("find_isomorphism_tetrahedron", |b| {
        b.iter(|| find_isomorphism(black_box(t.complex()), black_box(t.complex())).unwrap())
    });
}

criterion_group!(
    benches,
    bench_generation,
    bench_recognizers,
    bench_estimating,
    bench_closure_round_trip,
    bench_isomorphism
);
criterion_main!(benches);
