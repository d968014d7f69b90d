//! Parallel vs sequential throughput for the data-parallel inner loops:
//! batched Hardy Z evaluation, Li sums over a large synthetic table, and a
//! strip of zeta evaluations. Run with `cargo bench -p li-forge-core`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use li_forge_core::complex::ComplexHP;
use li_forge_core::exec::{chunked_sum, ExecMode};
use li_forge_core::{hardy_z, li_by_sum, zeta, PrecisionCtx};
use rug::Float;

fn modes() -> Vec<(&'static str, ExecMode)> {
    vec![
        ("parallel", ExecMode::Parallel),
        ("sequential", ExecMode::Sequential),
    ]
}

/// A plausible synthetic table: ordinates at the smooth-counting predictions.
fn synthetic_table(n: usize) -> li_forge_core::ZeroTable {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut text = String::new();
    let mut t = 14.2f64;
    for _ in 0..n {
        let gap = two_pi / (t / two_pi).ln();
        t += gap;
        text.push_str(&format!("{t:.9}\n"));
    }
    li_forge_core::ingest_zero_table(&text).unwrap()
}

fn bench_chunked_float_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("chunked_float_sum_1e5");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                chunked_sum(
                    100_000,
                    256,
                    mode,
                    || Float::new(192),
                    |mut acc, i| {
                        acc += Float::with_val(192, (i + 1) as f64).ln();
                        acc
                    },
                    |a, b| a + b,
                )
            })
        });
    }
    group.finish();
}

fn bench_li_by_sum(c: &mut Criterion) {
    let ctx = PrecisionCtx::default();
    let table = synthetic_table(10_000);
    let mut group = c.benchmark_group("li_by_sum_n20_10k_zeros");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            li_forge_core::exec::force_sequential(mode == ExecMode::Sequential);
            b.iter(|| li_by_sum(20, &table, &ctx).unwrap());
            li_forge_core::exec::force_sequential(false);
        });
    }
    group.finish();
}

fn bench_hardy_batch(c: &mut Criterion) {
    let ctx = PrecisionCtx::with_digits(25).unwrap();
    let mut group = c.benchmark_group("hardy_z_batch_64pts_t1000");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let vals = li_forge_core::exec::map_indexed(64, mode, |i| {
                    hardy_z(1000.0 + i as f64 * 0.05, &ctx).unwrap().to_f64()
                });
                vals.iter().sum::<f64>()
            })
        });
    }
    group.finish();
}

fn bench_zeta_strip(c: &mut Criterion) {
    let ctx = PrecisionCtx::default();
    let prec = ctx.prec_bits();
    let mut group = c.benchmark_group("zeta_strip_32pts");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let vals = li_forge_core::exec::map_indexed(32, mode, |i| {
                    let z = ComplexHP::from_f64(prec, 0.5, 50.0 + i as f64);
                    zeta(&z, &ctx).unwrap().abs().to_f64()
                });
                vals.iter().sum::<f64>()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_chunked_float_sum,
    bench_hardy_batch,
    bench_zeta_strip,
    bench_li_by_sum
);
criterion_main!(benches);
