use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lightcone_core::evolution::{evolve_time_ordered, StaticSpectrum};
use lightcone_core::hamiltonians::{build_g, build_h_omega, sample_disorder};
use lightcone_core::metrics::{measure_curve, sigma_z, time_grid, Backend, CurveSpec};
use lightcone_core::pauli::{conjugate_by_zz, pauli_mul};
use lightcone_core::{ChainParams, IntegratorOptions, Partition, PauliString};

fn algebra(c: &mut Criterion) {
    let a: PauliString = "X-3 Y-1 Z0 X2 Y4".parse().unwrap();
    let b: PauliString = "Z-3 X-1 Z0 Y1 Y4".parse().unwrap();
    c.bench_function("pauli_mul", |bn| bn.iter(|| pauli_mul(black_box(&a), black_box(&b))));

    let p = ChainParams::new(5, 1.0, 2.0, 4.0);
    let h = build_h_omega(&p, &sample_disorder(4.0, 1, p.n_sites())).unwrap();
    c.bench_function("conjugate_by_zz L=5", |bn| bn.iter(|| conjugate_by_zz(black_box(&h), 0.3, 2.0, 0).unwrap()));
    let part = Partition::magnetization(p.n_sites());
    c.bench_function("to_blocks L=5", |bn| bn.iter(|| h.to_blocks(black_box(&part)).unwrap()));
}

fn dynamics(c: &mut Criterion) {
    let mut g = c.benchmark_group("dynamics");
    g.sample_size(10);
    let p = ChainParams::new(4, 1.0, 1.0, 8.0);
    let d = sample_disorder(8.0, 2, p.n_sites());
    let h = build_h_omega(&p, &d).unwrap();
    g.bench_function("static spectrum L=4", |bn| bn.iter(|| StaticSpectrum::new(black_box(&h)).unwrap()));

    let small = ChainParams::new(3, 1.0, 5.0, 2.0);
    let gen = build_g(&small, &sample_disorder(2.0, 3, small.n_sites())).unwrap();
    g.bench_function("magnus G L=3 t=1", |bn| bn.iter(|| evolve_time_ordered(black_box(&gen), 0.0, 1.0, &IntegratorOptions::default()).unwrap()));

    for (name, params, backend) in [
        ("curve free fermion L=6", ChainParams::new(6, 1.0, 0.0, 8.0), Backend::FreeFermion),
        ("curve sector projector L=4", ChainParams::new(4, 1.0, 1.0, 8.0), Backend::SectorProjector),
    ] {
        let chain = params.chain();
        let spec = CurveSpec {
            a: sigma_z(chain, chain.first()).unwrap(),
            b: sigma_z(chain, chain.last()).unwrap(),
            params,
            times: time_grid(10.0, 21),
            realizations: 2,
            seed: 4,
            backend,
        };
        g.bench_function(name, |bn| bn.iter(|| measure_curve(black_box(&spec)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, algebra, dynamics);
criterion_main!(benches);
