use lightcone_core::bounds::{rhs_appendix_b, rhs_cor3, rhs_cor4, rhs_lemma2, rhs_lemma2_large, rhs_lemma2_small, Lemma2Inputs};
use proptest::prelude::*;

fn inputs() -> impl Strategy<Value = Lemma2Inputs> {
    (0.1f64..10.0, 0.3f64..5.0, 0.5f64..2.0, 0.01f64..100.0, 0.0f64..10.0, 1usize..20, 0usize..10).prop_map(|(k, xi, j, delta, omega, l, d)| Lemma2Inputs {
        k,
        xi,
        j,
        delta,
        omega,
        l: l as f64,
        d: d as f64,
    })
}

proptest! {
    #[test]
    fn lemma2_forms_monotone(x in inputs(), t in 0.0f64..10.0, dt in 0.0f64..5.0) {
        for f in [rhs_lemma2_small, rhs_lemma2_large] {
            let (a, b) = (f(&x, t).unwrap(), f(&x, t + dt).unwrap());
            prop_assert!(a >= 0.0 && b >= a * (1.0 - 1e-12));
            let far = Lemma2Inputs { l: x.l + 1.0, d: x.d + 1.0, ..x };
            prop_assert!(f(&far, t).unwrap() < a);
        }
        let (v, _) = rhs_lemma2(&x, t).unwrap();
        prop_assert!(v <= rhs_lemma2_small(&x, t).unwrap() && v <= rhs_lemma2_large(&x, t).unwrap());
    }

    #[test]
    fn corollary_forms_monotone(x in inputs(), a in 4i32..10, b in 4i32..10, t in 0.0f64..3.0, dt in 0.0f64..1.0) {
        prop_assume!(a > b + 1);
        let (sa, sb) = ([-a + 1], [b]);
        let c3 = rhs_cor3(&x, &sa, &sb, 0, t).unwrap();
        prop_assert!(c3 >= 0.0 && rhs_cor3(&x, &sa, &sb, 0, t + dt).unwrap() >= c3);
        prop_assert!(rhs_cor3(&x, &[-a], &sb, 0, t).unwrap() < c3);
        let c4 = rhs_cor4(x.j, x.delta, &sa, &sb, 0, t).unwrap();
        let later = rhs_cor4(x.j, x.delta, &sa, &sb, 0, t + dt).unwrap();
        prop_assert!(later.direct >= c4.direct && later.inverse >= c4.inverse);
        let further = rhs_cor4(x.j, x.delta, &[-a], &sb, 0, t).unwrap();
        prop_assert!(further.inverse < c4.inverse);
    }

    #[test]
    fn appendix_b_monotone_in_interval(a in 0.1f64..4.0, j in 0.1f64..3.0, dt in 0.0f64..2.0, e in 0.0f64..1.0, order in 1u32..6) {
        prop_assert!(rhs_appendix_b(a, j, dt + e, order) >= rhs_appendix_b(a, j, dt, order));
    }
}

proptest! {
    #[test]
    fn cor3_improves_on_large_delta_form(
        k in 0.1f64..10.0, xi in 0.3f64..5.0, delta in 1.0f64..200.0, omega in 0.0f64..10.0,
        a in 3i32..12, b in 4i32..12, t in 0.0f64..10.0,
    ) {
        prop_assume!(a > b - 1);
        let d = (a - 2) as f64;
        let x = Lemma2Inputs { k, xi, j: 1.0, delta, omega, l: (a + b) as f64, d };
        let c3 = rhs_cor3(&x, &[-a], &[b], 0, t).unwrap();
        prop_assert!(c3 <= rhs_lemma2_large(&x, t).unwrap());
    }
}

#[test]
fn cor3_gain_without_disorder() {
    let x = Lemma2Inputs { k: 1.0, xi: 1.0, j: 1.0, delta: 1e3, omega: 0.0, l: 30.0, d: 8.0 };
    let ratio = rhs_cor3(&x, &[-10], &[8], 0, 10.0).unwrap() / rhs_lemma2_large(&x, 10.0).unwrap();
    assert!((0.4..0.7).contains(&ratio), "{ratio}");
    let disordered = Lemma2Inputs { omega: 8.0, ..x };
    let ratio8 = rhs_cor3(&disordered, &[-10], &[8], 0, 10.0).unwrap() / rhs_lemma2_large(&disordered, 10.0).unwrap();
    assert!(ratio8 < 0.2, "{ratio8}");
}
