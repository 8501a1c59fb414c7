use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use tlkostant::kostant::is_kostant;
use tlkostant::TLDiagram;
use tlkostant_bench::{diagrams, sample_fc};

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for n in [6, 10, 14] {
        let ds = diagrams(&sample_fc(n, 97));
        group.bench_with_input(BenchmarkId::from_parameter(n), &ds, |b, ds| {
            b.iter(|| {
                for x in ds {
                    for y in ds {
                        black_box(x.compose(y).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

fn diagram_of_fc(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagram_of_fc");
    for n in [6, 10, 14] {
        let ws = sample_fc(n, 97);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ws, |b, ws| {
            b.iter(|| ws.iter().for_each(|w| drop(black_box(TLDiagram::of_fc(w).unwrap()))))
        });
    }
    group.finish();
}

fn fc_of_diagram(c: &mut Criterion) {
    let mut group = c.benchmark_group("fc_of_diagram");
    for n in [6, 10, 14] {
        let ds = diagrams(&sample_fc(n, 97));
        group.bench_with_input(BenchmarkId::from_parameter(n), &ds, |b, ds| b.iter(|| ds.iter().for_each(|d| drop(black_box(d.to_fc())))));
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let ws = sample_fc(12, 31);
    c.bench_function("is_kostant/12", |b| b.iter(|| ws.iter().filter(|w| is_kostant(w).unwrap().positive).count()));
}

criterion_group!(benches, compose, diagram_of_fc, fc_of_diagram, classify);
criterion_main!(benches);
