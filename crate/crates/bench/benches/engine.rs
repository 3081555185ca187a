use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use valdim_bench::{GAMMA, LOWER, MIXED, TROP};
use valdim_core::mixedcell::{mixed_cell_decompose, parse_mixed};
use valdim_core::semilinear::{cell_decompose, closure, parse_formula, project};
use valdim_core::trop::{trop_hypersurface, TropPoly};
use valdim_core::{DimPoint, LowerSet2};

fn lowerset(c: &mut Criterion) {
    let mut g = c.benchmark_group("lowerset");
    for (name, maxima) in LOWER {
        let a = LowerSet2::lower_closure(maxima.iter().map(|&p| DimPoint(p)));
        g.bench_with_input(BenchmarkId::new("add", name), &a, |b, a| b.iter(|| a.add(black_box(a))));
        g.bench_with_input(BenchmarkId::new("shift_closure", name), &a, |b, a| b.iter(|| black_box(a).shift_closure()));
    }
    g.finish();
}

fn gamma(c: &mut Criterion) {
    let mut g = c.benchmark_group("gamma");
    for (name, text) in GAMMA {
        let f = parse_formula(text).unwrap();
        g.bench_with_input(BenchmarkId::new("project", name), &f, |b, f| b.iter(|| project(black_box(f), &[0])));
        g.bench_with_input(BenchmarkId::new("cells", name), &f, |b, f| b.iter(|| cell_decompose(black_box(f))));
        g.bench_with_input(BenchmarkId::new("closure", name), &f, |b, f| b.iter(|| closure(black_box(f))));
    }
    g.finish();
}

fn mixed(c: &mut Criterion) {
    let mut g = c.benchmark_group("mixed");
    for (name, text) in MIXED {
        let f = parse_mixed(text).unwrap();
        g.bench_with_input(BenchmarkId::new("cells", name), &f, |b, f| b.iter(|| mixed_cell_decompose(black_box(f))));
    }
    g.finish();
}

fn trop(c: &mut Criterion) {
    let mut g = c.benchmark_group("trop");
    for (name, text) in TROP {
        let p = TropPoly::parse(text).unwrap();
        g.bench_with_input(BenchmarkId::new("hypersurface", name), &p, |b, p| b.iter(|| trop_hypersurface(black_box(p))));
    }
    g.finish();
}

criterion_group!(benches, lowerset, gamma, mixed, trop);
criterion_main!(benches);
