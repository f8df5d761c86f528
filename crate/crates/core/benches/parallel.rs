use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lrh_core::ah::{ah_hh_dims, Window};
use lrh_core::hochschild::Koszul;
use lrh_core::par::Exec;
use lrh_core::pbw::{Algebra, ArrangementSpec};
use lrh_core::poly::UPoly;
use lrh_core::slices::Truncation;
use lrh_core::spectral::e2_table;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn delta_slab(c: &mut Criterion) {
    let k = Koszul::new(Algebra::lines(ArrangementSpec::generic(4).unwrap()));
    let mut g = c.benchmark_group("delta_matrix_q1_i2_N10");
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| b.iter(|| black_box(k.delta_matrix(1, 2, 10, exec).unwrap())));
    }
    g.finish();
}

fn e2(c: &mut Criterion) {
    let mut g = c.benchmark_group("e2_table");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for l in [3, 5] {
        let spec = ArrangementSpec::generic(l).unwrap();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, l), &spec, |b, s| {
                b.iter(|| black_box(e2_table(s, Truncation::starting_at(3, 3), exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn ah(c: &mut Criterion) {
    let h = UPoly::parse("x^3-x").unwrap();
    let mut g = c.benchmark_group("ah_window_8x6");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| b.iter(|| black_box(ah_hh_dims(&h, Window::new(&h, 8, 6), exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, delta_slab, e2, ah);
criterion_main!(benches);
