use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qubit_antenna::constants::C0;
use qubit_antenna::devices;
use qubit_antenna::geometry::{build_dual_wire_model, dipole};
use qubit_antenna::matching::match_report;
use qubit_antenna::mom::{assemble, impedance_sweep, solve};
use qubit_antenna::{FrequencyGrid, Medium, SolverConfig};

fn assembly(c: &mut Criterion) {
    let f = 1e9;
    let lambda = C0 / f;
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("dipole");
    for spw in [20usize, 40, 80] {
        let model = dipole(0.48 * lambda, lambda / 2000.0, Medium::VACUUM)
            .unwrap()
            .discretize(spw, f)
            .unwrap();
        group.bench_with_input(BenchmarkId::new("assemble", model.segments().len()), &model, |b, m| {
            b.iter(|| assemble(black_box(m), f, &cfg).unwrap())
        });
        let mat = assemble(&model, f, &cfg).unwrap();
        group.bench_with_input(BenchmarkId::new("solve", model.segments().len()), &model, |b, m| {
            b.iter(|| solve(black_box(m), &mat).unwrap())
        });
    }
    group.finish();
}

fn device_sweep(c: &mut Criterion) {
    let dev = devices::xmon_large();
    let model = build_dual_wire_model(&dev.geometry).unwrap();
    let grid = FrequencyGrid::linear(dev.f_start, dev.f_stop, 41).unwrap();
    let cfg = SolverConfig::default();
    let j = devices::reference_junction();
    let mut group = c.benchmark_group("xmon");
    group.sample_size(10);
    group.bench_function("sweep_41_points", |b| {
        b.iter(|| impedance_sweep(black_box(&model), &grid, &cfg).unwrap())
    });
    let sweep = impedance_sweep(&model, &grid, &cfg).unwrap();
    group.bench_function("match_report", |b| b.iter(|| match_report(black_box(&sweep), &j).unwrap()));
    group.finish();
}

criterion_group!(benches, assembly, device_sweep);
criterion_main!(benches);
