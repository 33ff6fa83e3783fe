use criterion::{criterion_group, criterion_main, Criterion};

use auterq_core::canon::canonicalize;
use auterq_core::enumerate::enumerate_graph_classes;
use auterq_core::graph::{Mode, PointedGraph, Special};

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate holomorph n=2 k=3", |b| {
        b.iter(|| enumerate_graph_classes(2, 3, Mode::Holomorph).unwrap())
    });
    c.bench_function("enumerate aut n=4 k=3", |b| {
        b.iter(|| enumerate_graph_classes(4, 3, Mode::Aut).unwrap())
    });
}

fn bench_canonicalize(c: &mut Criterion) {
    let g = PointedGraph::new(
        4,
        vec![(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)],
        0,
        Special::Vertex(1),
    )
    .unwrap();
    let shuffled = g.relabeled(&[3, 0, 2, 1]);
    c.bench_function("canonicalize five-edge graph", |b| {
        b.iter(|| canonicalize(&shuffled).unwrap())
    });
}

criterion_group!(benches, bench_enumeration, bench_canonicalize);
criterion_main!(benches);
