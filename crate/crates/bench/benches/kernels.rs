use std::hint::black_box;

use ainf_core::ainfty::{check_ainfty, fixtures};
use ainf_core::c0bound::{verify_all, C0Config, Mollifier, PsiTable};
use ainf_core::cubical::{product, standard_cube, torus};
use ainf_core::exactalg::{smith_normal_form, IntMatrix};
use ainf_core::strata::check_mod2_z;
use criterion::{criterion_group, criterion_main, Criterion};

fn dense(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect()).collect();
    IntMatrix::from_rows(&rows).unwrap()
}

fn exact(c: &mut Criterion) {
    let m = dense(24);
    c.bench_function("snf_24x24", |b| b.iter(|| smith_normal_form(black_box(&m)).unwrap()));
    let x = product(&torus(), &standard_cube(2));
    c.bench_function("cubical_torus_x_square", |b| b.iter(|| x.check_complex().unwrap()));
}

fn ainfty(c: &mut Criterion) {
    let massey = fixtures::massey_dg();
    c.bench_function("check_ainfty_massey_d4", |b| b.iter(|| check_ainfty(black_box(&massey), 4).unwrap()));
    let t = fixtures::transferred_massey(0, 4);
    c.bench_function("check_ainfty_transferred_d4", |b| b.iter(|| check_ainfty(black_box(&t.minimal), 4).unwrap()));
}

fn strata(c: &mut Criterion) {
    c.bench_function("strata_mod2_d4", |b| b.iter(|| check_mod2_z(black_box(4)).unwrap()));
}

fn c0(c: &mut Criterion) {
    c.bench_function("psi_table_build", |b| b.iter(|| PsiTable::new(Mollifier::normalized())));
    let cfg = C0Config::standard(20_000, vec![(-0.5, 0.3), (0.5, 0.7), (1.5, 0.2)]);
    let mut g = c.benchmark_group("c0");
    g.sample_size(10);
    g.bench_function("verify_all_grid_20000", |b| b.iter(|| verify_all(black_box(&cfg)).unwrap()));
    g.finish();
}

criterion_group!(benches, exact, ainfty, strata, c0);
criterion_main!(benches);
