use criterion::{criterion_group, criterion_main, Criterion};

use auterq_bench::{mid_boundary, mid_complex};
use auterq_core::rank::{rank_fraction_free, rank_mod_p};

fn bench_rank(c: &mut Criterion) {
    let m = mid_boundary();
    c.bench_function("rank over q (fraction-free)", |b| b.iter(|| rank_fraction_free(&m)));
    c.bench_function("rank mod 5", |b| b.iter(|| rank_mod_p(&m, 5)));
}

fn bench_build(c: &mut Criterion) {
    c.bench_function("build cube complex n=3 k=4", |b| b.iter(mid_complex));
}

criterion_group!(benches, bench_rank, bench_build);
criterion_main!(benches);
