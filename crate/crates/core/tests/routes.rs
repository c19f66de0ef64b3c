//! Cross-route properties of Δ⁽ᵐ⁾ on random arguments.

use delta_core::delta::{
    check_complete_monotonicity, delta, delta_deriv, delta_deriv_auto, recurrence_residual, Route,
    SERIES_THRESHOLD,
};
use delta_core::quad::QuadConfig;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrature_routes_track_closed(m in 1u32..=8, x in -0.95f64..60.0) {
        prop_assume!(x.abs() > 1e-3);
        let cfg = QuadConfig::default();
        let closed = delta_deriv(m, x, Route::Closed, &cfg).unwrap();
        let mut routes = vec![Route::Hurwitz, Route::Hyp];
        if x >= 0.0 {
            routes.push(Route::Laplace);
        }
        for r in routes {
            let v = delta_deriv(m, x, r, &cfg).unwrap();
            prop_assert!(v.converged);
            prop_assert!(rel(v.value, closed.value) < 1e-10, "{r} m={m} x={x}: {} vs {}", v.value, closed.value);
            let seen = (v.value - closed.value).abs();
            prop_assert!(seen <= 10.0 * (v.abs_err_est + closed.abs_err_est) + 4.0 * f64::EPSILON * closed.value.abs());
        }
    }

    #[test]
    fn sign_alternates(m in 1u32..=12, x in -0.99f64..1e3) {
        let cfg = QuadConfig::default();
        let v = delta_deriv_auto(m, x, &cfg).unwrap();
        let signed = if m % 2 == 1 { v.value } else { -v.value };
        prop_assert!(signed > -v.abs_err_est, "m={m} x={x}: {}", v.value);
    }

    #[test]
    fn series_and_closed_overlap(m in 1u32..=4, ax in 0.01f64..0.12, neg in any::<bool>()) {
        let x = if neg { -ax } else { ax };
        let cfg = QuadConfig::default();
        let s = delta_deriv(m, x, Route::Series, &cfg).unwrap().value;
        let c = delta_deriv(m, x, Route::Closed, &cfg).unwrap().value;
        prop_assert!(rel(s, c) < 1e-10);
    }

    #[test]
    fn recurrence_holds(m in 2u32..=10, x in -0.9f64..50.0) {
        prop_assume!(x.abs() > 1e-2);
        let r = recurrence_residual(m, x, Route::Closed, &QuadConfig::default()).unwrap();
        prop_assert!(r.pass, "{r:?}");
    }

    #[test]
    fn delta_is_increasing(x in -0.99f64..20.0, dx in 1e-3f64..1.0) {
        // Δ′ > 0 everywhere, so Δ increases
        prop_assert!(delta(x + dx).unwrap() > delta(x).unwrap());
    }
}

#[test]
fn auto_switches_at_threshold() {
    let cfg = QuadConfig::default();
    let below = delta_deriv_auto(2, SERIES_THRESHOLD * 0.999, &cfg).unwrap();
    let above = delta_deriv_auto(2, SERIES_THRESHOLD, &cfg).unwrap();
    assert_eq!(below.route, Route::Series);
    assert_eq!(above.route, Route::Closed);
    assert!(rel(below.value, above.value) < 1e-3);
}

#[test]
fn monotonicity_report_shape() {
    let grid = [-0.5, 0.0, 3.0];
    let rep = check_complete_monotonicity(4, &grid, &QuadConfig::default()).unwrap();
    assert_eq!(rep.n_pass + rep.n_fail, rep.checks.len());
    assert_eq!(rep.checks[0].point, "m=1;x=-0.5");
    assert_eq!(rep.checks[5].point, "m=2;x=0");
}
