use criterion::{black_box, criterion_group, criterion_main, Criterion};
use semigroup_lab::divisor::{has_divisor, DEFAULT_SEARCH_CAP};
use semigroup_lab::words::{is_isoterm_bounded, satisfies, Identity, Word, DEFAULT_BUDGET};
use semigroup_lab::{constructions, green};
use semigroup_lab_bench::{b21_squared, ic, tn2};

fn construction(c: &mut Criterion) {
    c.bench_function("build IC_4", |b| b.iter(|| ic(black_box(4))));
    c.bench_function("build T_4(2)", |b| b.iter(|| tn2(black_box(4))));
}

fn green_relations(c: &mut Criterion) {
    let s = ic(4);
    c.bench_function("green IC_4", |b| b.iter(|| green(black_box(&s))));
    let t = tn2(3);
    c.bench_function("green T_3(2)", |b| b.iter(|| green(black_box(&t))));
}

fn identities(c: &mut Criterion) {
    let s = ic(4);
    let id: Identity = "x y x z x == x y z x".parse().unwrap();
    c.bench_function("satisfies xyxzx IC_4", |b| {
        b.iter(|| satisfies(&s, black_box(&id), DEFAULT_BUDGET).unwrap())
    });
    let w: Word = "x y z x".parse().unwrap();
    c.bench_function("isoterm xyzx IC_4 L=5", |b| {
        b.iter(|| is_isoterm_bounded(&s, black_box(&w), 5, DEFAULT_BUDGET).unwrap())
    });
}

fn embedding(c: &mut Criterion) {
    let s = ic(4);
    let t = tn2(4);
    c.bench_function("embed IC_4 into T_4(2)", |b| {
        b.iter(|| {
            let f = constructions::tn2_indices(&constructions::embed_ic4()).unwrap();
            constructions::verify_homomorphism(&f, &s, &t).is_ok()
        })
    });
}

fn divisors(c: &mut Criterion) {
    let host = b21_squared();
    let target = constructions::build_b21();
    c.bench_function("B_2^1 divides (B_2^1)^2", |b| {
        b.iter(|| has_divisor(&host, &target, 2, DEFAULT_SEARCH_CAP).unwrap())
    });
}

criterion_group!(
    benches,
    construction,
    green_relations,
    identities,
    embedding,
    divisors
);
criterion_main!(benches);
