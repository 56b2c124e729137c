use lightcone_core::pauli::{conjugate_by_zz, pauli_commutator, pauli_mul};
use lightcone_core::{Axis, Chain, PauliString, Phase, SpinOperator, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

const N: usize = 6;

fn sigma(a: Option<Axis>) -> [[C64; 2]; 2] {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    match a {
        None => [[o, z], [z, o]],
        Some(Axis::X) => [[z, o], [o, z]],
        Some(Axis::Y) => [[z, -i], [i, z]],
        Some(Axis::Z) => [[o, z], [z, -o]],
    }
}

/// Dense matrix element by element: `<x|P|y> = phase * prod_k sigma_k[x_k][y_k]`.
fn oracle(axes: &[Option<Axis>], phase: u8) -> DMatrix<C64> {
    let n = axes.len();
    let ph = C64::new(0.0, 1.0).powu(phase as u32);
    DMatrix::from_fn(1 << n, 1 << n, |x, y| {
        axes.iter().enumerate().fold(ph, |acc, (k, a)| acc * sigma(*a)[(x >> k) & 1][(y >> k) & 1])
    })
}

fn build(axes: &[Option<Axis>], phase: u8) -> PauliString {
    let pairs: Vec<(i32, Axis)> = axes.iter().enumerate().filter_map(|(k, a)| a.map(|a| (k as i32, a))).collect();
    PauliString::from_pairs(&pairs).with_phase(Phase::from_power(phase))
}

fn dense(s: &PauliString) -> DMatrix<C64> {
    let chain = Chain::new(0, N);
    let mut op = SpinOperator::zero(chain);
    op.add_string(C64::new(1.0, 0.0), s);
    op.to_dense().unwrap()
}

fn axis() -> impl Strategy<Value = Option<Axis>> {
    prop_oneof![Just(None), Just(Some(Axis::X)), Just(Some(Axis::Y)), Just(Some(Axis::Z))]
}

fn string() -> impl Strategy<Value = (Vec<Option<Axis>>, u8)> {
    (prop::collection::vec(axis(), N), 0u8..4)
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn spectral(m: &DMatrix<C64>) -> f64 {
    m.clone().singular_values().max()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn product_matches_dense((a, pa) in string(), (b, pb) in string()) {
        let (sa, sb) = (build(&a, pa), build(&b, pb));
        prop_assert!(max_abs(&(dense(&sa) - oracle(&a, pa))) < 1e-12);
        let want = oracle(&a, pa) * oracle(&b, pb);
        prop_assert!(max_abs(&(dense(&pauli_mul(&sa, &sb)) - want)) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn commutator_antisymmetric((a, pa) in string(), (b, pb) in string()) {
        let chain = Chain::new(0, N);
        let (sa, sb) = (build(&a, pa), build(&b, pb));
        let ab = pauli_commutator(chain, &sa, &sb);
        let ba = pauli_commutator(chain, &sb, &sa);
        prop_assert_eq!(ab.len(), ba.len());
        for (c, s) in ab.terms() {
            prop_assert_eq!(ba.coefficient(&s), -c);
        }
        prop_assert_eq!(sa.commutes_with(&sb), ab.is_empty());
    }

    #[test]
    fn zz_conjugation_periodic_and_isometric(
        (a, pa) in string(), (b, pb) in string(),
        s in -3.0f64..3.0, delta in 0.1f64..20.0, p in 0i32..5,
    ) {
        let chain = Chain::new(0, N);
        let mut op = SpinOperator::zero(chain);
        op.add_string(C64::new(1.0, 0.0), &build(&a, pa));
        op.add_string(C64::new(0.5, -0.25), &build(&b, pb));
        let first = conjugate_by_zz(&op, s, delta, p).unwrap();
        let shifted = conjugate_by_zz(&op, s + std::f64::consts::PI / delta, delta, p).unwrap();
        let diff = &first - &shifted;
        prop_assert!(diff.terms().all(|(c, _)| c.norm() < 1e-12));
        let before = spectral(&op.to_dense().unwrap());
        let after = spectral(&first.to_dense().unwrap());
        prop_assert!((before - after).abs() < 1e-12 * before.max(1.0));
    }
}

#[test]
fn two_local_terms_on_a_bond() {
    let chain = Chain::new(0, 2);
    let mut anticommuting = 0;
    for a in Axis::ALL {
        for g in Axis::ALL {
            for b in Axis::ALL {
                for d in Axis::ALL {
                    let left = SpinOperator::from_string(chain, 1.0, &PauliString::from_pairs(&[(0, a), (1, g)])).unwrap();
                    let right = SpinOperator::from_string(chain, 1.0, &PauliString::from_pairs(&[(0, b), (1, d)])).unwrap();
                    let (x, y) = (left.to_dense().unwrap(), right.to_dense().unwrap());
                    let commute = max_abs(&(&x * &y - &y * &x)) < 1e-14;
                    // an even number of clashing sites commutes
                    assert_eq!(commute, (a == b) == (g == d), "{a:?}{g:?} vs {b:?}{d:?}");
                    if a == g && b == d {
                        assert!(commute);
                    }
                    anticommuting += usize::from(!commute);
                }
            }
        }
    }
    // 81 choices: 9 x 4 pairs with exactly one clashing site
    assert_eq!(anticommuting, 36);
}
