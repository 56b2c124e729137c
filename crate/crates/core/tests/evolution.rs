use lightcone_core::evolution::{evolve_time_ordered, fixed_steps, interaction_picture_check, BlockHamiltonian};
use lightcone_core::hamiltonians::{build_g, build_h_omega, sample_disorder, zz_term};
use lightcone_core::linalg::unitarity_defect;
use lightcone_core::{ChainParams, IntegratorOptions, Method, TimeDependentHamiltonian};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn propagators_unitary_and_composable(seed in any::<u64>(), delta in 0.5f64..10.0, s in 0.1f64..0.9) {
        let p = ChainParams::new(2, 1.0, delta, 3.0);
        let g = build_g(&p, &sample_disorder(3.0, seed, p.n_sites())).unwrap();
        let opts = IntegratorOptions::default();
        let full = evolve_time_ordered(&g, 0.0, 1.0, &opts).unwrap();
        prop_assert!(unitarity_defect(&full.matrix()) <= 1e-10);
        let early = evolve_time_ordered(&g, 0.0, s, &opts).unwrap();
        let late = evolve_time_ordered(&g, s, 1.0, &opts).unwrap();
        let composed = late.compose(&early).unwrap();
        prop_assert!(composed.u.diff_norm(&full.u).unwrap() <= 5.0 * opts.tol);
    }
}

#[test]
fn midpoint_self_convergence_order() {
    let p = ChainParams::new(3, 1.0, 10.0, 2.0);
    let g = BlockHamiltonian::new(&build_g(&p, &sample_disorder(2.0, 4, p.n_sites())).unwrap()).unwrap();
    let u: Vec<_> = [128, 256, 512].iter().map(|&n| fixed_steps(&g, 0.0, 1.0, n, Method::MagnusMidpoint).unwrap()).collect();
    let ratio = u[0].diff_norm(&u[1]).unwrap() / u[1].diff_norm(&u[2]).unwrap();
    assert!(ratio >= 3.5, "ratio {ratio}");
}

#[test]
fn interaction_picture_residual_tracks_tolerance() {
    let p = ChainParams::new(2, 1.0, 3.0, 2.0);
    let h = build_h_omega(&p, &sample_disorder(2.0, 9, p.n_sites())).unwrap();
    let alpha = TimeDependentHamiltonian::constant(zz_term(p.chain(), 0, p.delta), "zz");
    let beta = TimeDependentHamiltonian::constant(h, "H");
    let loose = interaction_picture_check(&alpha, &beta, 1.0, &IntegratorOptions::with_tol(1e-5)).unwrap();
    let tight = interaction_picture_check(&alpha, &beta, 1.0, &IntegratorOptions::with_tol(1e-10)).unwrap();
    assert!(tight < loose, "{tight} vs {loose}");
    assert!(tight < 1e-9);
}
