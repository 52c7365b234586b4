use proptest::prelude::*;
use vacuum_forces::quadrature::{integrate_exp_weighted, integrate_semi_infinite};
use vacuum_forces::QuadratureSpec;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_moments(n in 0u32..8, a in 0.05f64..20.0) {
        let spec = QuadratureSpec::default();
        let got = integrate_semi_infinite(|x| x.powi(n as i32) * (-a * x).exp(), &spec).unwrap();
        let want = factorial(n) / a.powi(n as i32 + 1);
        prop_assert!((got.value - want).abs() <= 1e-9 * want, "{} vs {}", got.value, want);
        prop_assert!(got.error_estimate <= 1e-8 * want);
    }

    #[test]
    fn lorentzian_tail(k in 0.01f64..100.0) {
        // ∫ k/(k² + u²) du = π/2 for every k: the polarizability kernel's slow tail.
        let got = integrate_semi_infinite(|u| k / (k * k + u * u), &QuadratureSpec::default()).unwrap();
        prop_assert!((got.value - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn exp_weighted_matches_plain(c in 0.1f64..10.0, decay in 0.5f64..4.0) {
        let spec = QuadratureSpec::default();
        let weighted = integrate_exp_weighted(|x| 1.0 / (1.0 + c * x), decay, &spec).unwrap().value;
        let plain = integrate_semi_infinite(|x| (-decay * x).exp() / (1.0 + c * x), &spec).unwrap().value;
        prop_assert!((weighted - plain).abs() <= 1e-9 * plain.abs());
    }

    #[test]
    fn tighter_tolerance_does_not_move_the_answer(a in 0.1f64..5.0) {
        let f = |x: f64| (-a * x).exp() * (1.0 + x).ln();
        let loose = integrate_semi_infinite(f, &QuadratureSpec::with_rel_tol(1e-6)).unwrap();
        let tight = integrate_semi_infinite(f, &QuadratureSpec::with_rel_tol(1e-12)).unwrap();
        prop_assert!((loose.value - tight.value).abs() <= 1e-6 * tight.value.abs() + loose.error_estimate);
    }
}
