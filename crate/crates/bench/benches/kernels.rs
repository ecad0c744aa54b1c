use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use superalg::algebras::gl;
use superalg::constructions::odot_g;
use superalg::maxcheck::{run_suite, verify_row, Params, RunOptions};
use superalg::modtools::lie_closure;
use superalg::{super_bracket, SuperDim, Subspace};
use superalg_bench::{sample_matrix, sample_scalars};

fn scalars(c: &mut Criterion) {
    let xs = sample_scalars(64);
    c.bench_function("scalar_mul_64", |b| {
        b.iter(|| xs.windows(2).map(|w| &w[0] * &w[1]).collect::<Vec<_>>())
    });
    c.bench_function("scalar_inv_64", |b| b.iter(|| xs.iter().map(|x| x.inv().unwrap()).collect::<Vec<_>>()));
}

fn matrices(c: &mut Criterion) {
    let d = SuperDim::new(4, 4);
    let (x, y) = (sample_matrix(d, 1), sample_matrix(d, 2));
    c.bench_function("matmul_8x8", |b| b.iter(|| black_box(&x).matmul(black_box(&y)).unwrap()));
    c.bench_function("super_bracket_8x8", |b| b.iter(|| super_bracket(black_box(&x), black_box(&y)).unwrap()));

    let rows: Vec<Vec<superalg::Scalar>> = (0..40).map(|s| sample_matrix(d, s).flatten()).collect();
    c.bench_function("echelon_40_in_64", |b| b.iter(|| Subspace::span(64, black_box(&rows))));
}

fn algebras(c: &mut Criterion) {
    let h = odot_g(&gl(2, 1), &gl(2, 0)).unwrap();
    c.bench_function("lie_closure_gl21_odot_gl20", |b| b.iter(|| lie_closure(black_box(h.basis())).unwrap()));
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("verify_T1R1", |b| b.iter(|| verify_row("T1R1", &Params::new(), RunOptions::default()).unwrap()));
    g.bench_function("suite_signs", |b| b.iter(|| run_suite("signs").unwrap()));
    g.finish();
}

criterion_group!(benches, scalars, matrices, algebras);
criterion_main!(benches);
