use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use reidemeister::chartab::{self, Cyclotomic};
use reidemeister::morphism;
use reidemeister::twisted::{self, ReidemeisterMethod};
use reidemeister::Endomorphism;

use reidemeister_bench::{cyclic27, order32, order32_psi, symmetric4};

fn bench_character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    group.sample_size(20);
    // Fresh group instances per iteration so the global cache never hits.
    group.bench_function("order32", |b| {
        b.iter_batched(
            order32,
            |g| chartab::character_table(black_box(&g)).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("symmetric4", |b| {
        b.iter_batched(
            symmetric4,
            |g| chartab::character_table(black_box(&g)).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("cyclic27", |b| {
        b.iter_batched(
            cyclic27,
            |g| chartab::character_table(black_box(&g)).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_reidemeister_methods(c: &mut Criterion) {
    let g = order32();
    let id = Endomorphism::identity(&g);
    let psi = order32_psi(&g);
    let table = chartab::character_table(&g).unwrap();
    drop(table); // warm the cache so the characters method measures lookups
    let mut group = c.benchmark_group("reidemeister_number");
    for method in ReidemeisterMethod::ALL {
        group.bench_function(format!("{method:?}"), |b| {
            b.iter(|| {
                twisted::reidemeister_number(black_box(&id), black_box(&psi), method).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_twisted_classes(c: &mut Criterion) {
    let g = order32();
    let id = Endomorphism::identity(&g);
    let psi = order32_psi(&g);
    c.bench_function("twisted_classes/order32", |b| {
        b.iter(|| twisted::twisted_classes(black_box(&id), black_box(&psi)).unwrap())
    });
}

fn bench_endomorphism_enumeration(c: &mut Criterion) {
    let s4 = symmetric4();
    c.bench_function("endomorphisms/symmetric4", |b| {
        b.iter(|| morphism::endomorphisms(black_box(&s4)).count())
    });
}

fn bench_cyclotomic_mul(c: &mut Criterion) {
    let a = (0..8).fold(Cyclotomic::zero(24), |acc, j| {
        acc.add(&Cyclotomic::root_of_unity(24, 3 * j + 1))
    });
    let b = Cyclotomic::root_of_unity(24, 7).sub(&Cyclotomic::from_integer(24, 2));
    c.bench_function("cyclotomic_mul/conductor24", |bencher| {
        bencher.iter(|| black_box(&a).mul(black_box(&b)))
    });
}

criterion_group!(
    benches,
    bench_character_tables,
    bench_reidemeister_methods,
    bench_twisted_classes,
    bench_endomorphism_enumeration,
    bench_cyclotomic_mul
);
criterion_main!(benches);
