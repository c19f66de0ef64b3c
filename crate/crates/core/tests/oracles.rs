//! Values frozen from 40-digit mpmath evaluations of the defining formulas.

use delta_core::delta::{delta, delta_deriv, delta_deriv_at_one, delta_deriv_half_integer, Route};
use delta_core::quad::QuadConfig;
use delta_core::specfun::{gamma_zero, EULER_GAMMA};

const ALL: [Route; 6] = [
    Route::Closed,
    Route::Hurwitz,
    Route::Laplace,
    Route::Hyp,
    Route::Recurrence,
    Route::Series,
];

fn check(m: u32, x: f64, expect: f64, tol: f64) {
    let cfg = QuadConfig::default();
    for r in ALL {
        if !r.supports(x) || (r == Route::Recurrence && x == 0.0) {
            continue;
        }
        let v = delta_deriv(m, x, r, &cfg).unwrap().value;
        assert!(((v - expect) / expect).abs() < tol, "{r} m={m} x={x}: {v} vs {expect}");
    }
}

#[test]
fn derivatives_at_scattered_points() {
    check(2, 0.5, -0.354_831_192_903_177_1, 1e-12);
    check(1, -0.9, 8.800_823_203_254_031, 1e-12);
    check(3, 0.7, 0.322_750_698_552_710_4, 1e-12);
}

#[test]
fn derivatives_at_one() {
    let oracle = [
        (2, -0.200_634_603_348_707_8),
        (3, 0.197_790_003_726_935),
        (4, -0.297_220_612_640_910_7),
        (5, 0.599_836_939_763_675_1),
    ];
    for (m, v) in oracle {
        check(m, 1.0, v, 1e-12);
        assert!(((delta_deriv_at_one(m).unwrap() - v) / v).abs() < 1e-14);
    }
}

#[test]
fn derivatives_at_minus_half() {
    let oracle = [
        (1, 1.637_560_280_344_047),
        (2, -3.319_363_279_713_172),
        (3, 13.741_413_610_189_61),
        (4, -84.886_873_186_488_02),
        (5, 694.079_767_788_454_3),
    ];
    for (m, v) in oracle {
        check(m, -0.5, v, 1e-12);
        assert!(((delta_deriv_half_integer(m).unwrap() - v) / v).abs() < 1e-13);
    }
}

#[test]
fn scalar_values() {
    assert_eq!(delta(0.0).unwrap(), -EULER_GAMMA);
    assert!((delta(-0.5).unwrap() + std::f64::consts::PI.ln()).abs() < 1e-15);
    assert!((gamma_zero(1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-16);
    assert!(((gamma_zero(10.0).unwrap() - 4.156_968_929_685_324e-6) / 4.156_968_929_685_324e-6).abs() < 1e-14);
}
