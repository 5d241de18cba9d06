use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flatwitness::hardy::{
    blaschke_factor, hardy_factor, log_modulus, outer_from_modulus, project_onto_bh2, HardyOptions, OuterOptions,
};
use flatwitness::layered::{factor_with, preset_counting, WeightMode};
use flatwitness::seq::{log_grid_windows, olympiad_weighted_sum, tail_profile};
use flatwitness::{principal_generator, synthesize_witness, SynthesisOptions, TailModel};
use flatwitness_bench::{bezout_pair, constant_one, one_minus_z, relation, sequence};
use num_complex::Complex64;

fn tail_sums(c: &mut Criterion) {
    let a = sequence(10_000);
    c.bench_function("tail_profile/10k", |b| b.iter(|| tail_profile(black_box(&a)).unwrap()));
    let p = tail_profile(&a).unwrap();
    let windows = log_grid_windows(a.len(), 24);
    c.bench_function("weighted_sum/log-grid windows", |b| {
        b.iter(|| windows.iter().map(|&(m, n)| olympiad_weighted_sum(&p, m, n).unwrap()).sum::<f64>())
    });
}

fn witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_witness");
    for terms in [2, 5] {
        let rel = relation(terms, 512);
        group.bench_with_input(BenchmarkId::from_parameter(terms), &rel, |b, rel| {
            b.iter(|| synthesize_witness(rel, SynthesisOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn bezout(c: &mut Criterion) {
    let (f, g) = bezout_pair(1000);
    c.bench_function("principal_generator/1k", |b| b.iter(|| principal_generator(&f, &g).unwrap()));
}

fn layered(c: &mut Criterion) {
    let p = preset_counting(64).unwrap();
    let f = p.sample(|x| Complex64::new(2f64.powf(-x / 2.0), 0.0));
    c.bench_function("layered/geometric 64", |b| {
        b.iter(|| factor_with(&f, &p.space, TailModel::Geometric { ratio: 0.5 }, WeightMode::Auto).unwrap())
    });
}

fn hardy(c: &mut Criterion) {
    let mut group = c.benchmark_group("hardy");
    group.sample_size(10);
    let n = 1 << 14;
    let k = log_modulus(&one_minus_z(n));
    group.bench_function("outer/16k", |b| b.iter(|| outer_from_modulus(&k, OuterOptions::default()).unwrap()));
    let one = constant_one(n);
    group.bench_function("factor/16k x 256", |b| b.iter(|| hardy_factor(&one, HardyOptions::default()).unwrap()));
    let bl = blaschke_factor(n, Complex64::new(0.9, 0.0)).unwrap();
    group.bench_function("project/16k", |b| b.iter(|| project_onto_bh2(&one, &bl, 1e-10).unwrap()));
    group.finish();
}

criterion_group!(benches, tail_sums, witness, bezout, layered, hardy);
criterion_main!(benches);
