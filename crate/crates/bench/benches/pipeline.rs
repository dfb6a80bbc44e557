use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graphbound::cheeger::beta_exhaustive;
use graphbound::spectral::{assemble, eigdecompose, uncertainty_constant};
use graphbound::{build_voronoi, compute_metric, NormChoice, OperatorSpec};
use graphbound_bench::{combinatorial_graph, every, weighted_graph};
use std::hint::black_box;

fn metric(c: &mut Criterion) {
    let mut group = c.benchmark_group("metric");
    for n in [50, 100, 200] {
        let g = weighted_graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| compute_metric(black_box(g))));
    }
    group.finish();
}

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("dirichlet_eigen");
    for n in [50, 100, 200] {
        let g = weighted_graph(n);
        let omega = every(&g, 5).complement();
        let op = assemble(&g, OperatorSpec::dirichlet(&omega)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &op, |b, op| b.iter(|| eigdecompose(black_box(op))));
    }
    group.finish();
}

fn voronoi(c: &mut Criterion) {
    let g = weighted_graph(200);
    let md = compute_metric(&g).unwrap();
    let centers = every(&g, 10);
    c.bench_function("voronoi/200", |b| b.iter(|| build_voronoi(&g, &md, black_box(&centers))));
}

fn uncertainty(c: &mut Criterion) {
    let g = weighted_graph(80);
    let md = compute_metric(&g).unwrap();
    let centers = every(&g, 4);
    c.bench_function("uncertainty/80", |b| {
        b.iter(|| uncertainty_constant(&g, &md, black_box(&centers), (0.0, 0.05), NormChoice::Computed))
    });
}

fn isoperimetric(c: &mut Criterion) {
    let mut group = c.benchmark_group("beta_exhaustive");
    group.sample_size(10);
    for k in [12, 16, 20] {
        let g = combinatorial_graph(k + 4);
        let omega = graphbound::VertexSet::new(g.len(), 0..k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &omega, |b, omega| {
            b.iter(|| beta_exhaustive(&g, black_box(omega), 22))
        });
    }
    group.finish();
}

criterion_group!(benches, metric, eigen, voronoi, uncertainty, isoperimetric);
criterion_main!(benches);
