//! Benchmarks for the core algorithms on mid-sized media.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use media_core::{
    all_complementary_pairs, all_pairs_shortest_paths, find_closed_orientation,
    permutation_medium, reset_sequence, set_family_oracle, verify, LengthFunction, Medium,
};

fn perm(k: usize) -> Medium {
    permutation_medium(k).expect("permutation medium")
}

fn bench_verify(c: &mut Criterion) {
    let medium = perm(6);
    c.bench_function("verify/perm6", |b| b.iter(|| verify(&medium).passed()));
}

fn bench_reset(c: &mut Criterion) {
    let medium = perm(6);
    c.bench_function("reset_sequence/perm6", |b| {
        b.iter(|| reset_sequence(&medium).unwrap().word.len())
    });
}

fn bench_apsp(c: &mut Criterion) {
    let medium = perm(5);
    let lambda = LengthFunction::unit(medium.tokens());
    c.bench_function("all_pairs_shortest_paths/perm5", |b| {
        b.iter(|| all_pairs_shortest_paths(&medium, &lambda).unwrap().scan_work())
    });
}

fn bench_complements(c: &mut Criterion) {
    let medium = perm(6);
    c.bench_function("all_complementary_pairs/perm6", |b| {
        b.iter(|| all_complementary_pairs(&medium).unwrap().len())
    });
}

fn bench_orient(c: &mut Criterion) {
    let medium = perm(5);
    c.bench_function("find_closed_orientation/perm5", |b| {
        b.iter(|| find_closed_orientation(&medium).is_some())
    });
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate_states/powerset10", |b| {
        b.iter_batched(
            || set_family_oracle(10, |_| true, 0),
            |bb| bb.enumerate_states().count(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_verify,
    bench_reset,
    bench_apsp,
    bench_complements,
    bench_orient,
    bench_enumerate
);
criterion_main!(benches);
