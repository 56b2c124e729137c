use lightcone_core::evolution::{evolve_static, heisenberg};
use lightcone_core::hamiltonians::{build_g, sample_disorder_stream};
use lightcone_core::metrics::{commutator_norm, measure_curve, sigma_z, time_grid, Backend, CurveSpec};
use lightcone_core::{ChainParams, SpinOperator, SupportGeometry};
use proptest::prelude::*;

fn spec(p: ChainParams, a: i32, b: i32, times: Vec<f64>, r: usize, seed: u64) -> CurveSpec {
    let chain = p.chain();
    CurveSpec { a: sigma_z(chain, a).unwrap(), b: sigma_z(chain, b).unwrap(), params: p, times, realizations: r, seed, backend: Backend::Auto }
}

#[test]
fn curves_start_at_the_bare_commutator_and_stay_capped() {
    let p = ChainParams::new(3, 1.0, 2.0, 4.0);
    let chain = p.chain();
    let a = SpinOperator::parse_sum(chain, &[(1.0, "X-1 X0")]).unwrap();
    let b = SpinOperator::parse_sum(chain, &[(1.0, "Z0")]).unwrap();
    let s = CurveSpec { params: p, a, b, times: time_grid(3.0, 7), realizations: 3, seed: 2, backend: Backend::Auto };
    let c = measure_curve(&s).unwrap();
    assert!((c.mean[0] - 2.0).abs() < 1e-12);
    assert!(c.samples.iter().flatten().all(|&v| (0.0..=2.0 + 1e-12).contains(&v)));
}

#[test]
fn zero_delta_matches_unkicked_g_dynamics() {
    let p = ChainParams::new(3, 1.0, 0.0, 5.0);
    let times = time_grid(4.0, 5);
    let c = measure_curve(&spec(p.clone(), -3, 2, times.clone(), 3, 8)).unwrap();
    let chain = p.chain();
    for r in 0..3 {
        // at Delta = 0 the drive freezes: G = E + C1 for all times
        let e = build_g(&p, &sample_disorder_stream(5.0, 8, r as u64, p.n_sites())).unwrap().eval(0.7);
        for (k, &t) in times.iter().enumerate() {
            let at = heisenberg(&sigma_z(chain, -3).unwrap(), &evolve_static(&e, t).unwrap()).unwrap();
            let v = commutator_norm(&at, &sigma_z(chain, 2).unwrap()).unwrap();
            assert!((v - c.samples[r][k]).abs() < 1e-9, "r {r} t {t}: {v} vs {}", c.samples[r][k]);
        }
    }
}

#[test]
fn stderr_scales_with_realizations() {
    let p = ChainParams::new(3, 1.0, 0.0, 4.0);
    let errs: Vec<f64> = [25, 100, 400].iter().map(|&r| measure_curve(&spec(p.clone(), -2, 1, vec![2.0], r, 5)).unwrap().stderr[0]).collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio / 2.0 - 1.0).abs() <= 0.2, "stderr ratio {ratio}");
    }
}

proptest! {
    #[test]
    fn single_bond_geometry(a in -20i32..20, b in -20i32..20, p in -10i32..10) {
        prop_assume!(a != b);
        match SupportGeometry::lemma2(vec![a], vec![b], p) {
            Ok(g) => {
                prop_assert!(2 * g.d + 5 >= g.l);
                prop_assert_eq!(g.l, (a - b).unsigned_abs() as usize);
            }
            Err(_) => {
                let touches = |s: i32| s == p || s == p + 1;
                prop_assert!(touches(a) && touches(b));
            }
        }
    }
}
