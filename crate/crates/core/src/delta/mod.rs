//! Δ(x) = ln Γ(x+1)/x on (−1, ∞), Δ(0) = −γ, and its derivatives Δ⁽ᵐ⁾.
//!
//! Every derivative can be computed along several independent routes:
//!
//! | Route | Formula |
//! |-------|---------|
//! | `CLOSED` | Leibniz rule on ψ⁽⁻¹⁾(x+1)·x⁻¹, i.e. Σⱼ C(m,j) ψ⁽ᵐ⁻¹⁻ʲ⁾(x+1) (−1)ʲ j!/xʲ⁺¹, in double-double |
//! | `HURWITZ` | (−1)^(m−1) Δ⁽ᵐ⁾(x) = m! ∫₀¹ uᵐ ζ(m+1, xu+1) du |
//! | `LAPLACE` | (−1)^(m−1) Δ⁽ᵐ⁾(x) = ∫₀^∞ tᵐ/(eᵗ−1) · ∫₀¹ uᵐ e^(−xtu) du dt, x ≥ 0 |
//! | `HYP` | the Hurwitz integral rewritten through two ₂F₁ at x/(x+1) and a P₁ integral |
//! | `RECURRENCE` | one step of the order recurrence from `CLOSED` at order m−1 |
//! | `SERIES` | term-wise derivative of −γ + Σ_{k≥2} (−1)ᵏ ζ(k) x^(k−1)/k, \|x\| ≤ 1/2 |
//! | `ASYMPTOTIC` | leading large-x behaviour plus its first correction, x > 0 |
//!
//! The default (see [`delta_deriv_auto`]) is the exact value at x = 0,
//! `SERIES` for |x| < 1/8 and `CLOSED` elsewhere.

mod checks;
mod integrals;
mod routes;
mod special;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use checks::{check_complete_monotonicity, recurrence_residual};
pub use integrals::{integral_delta, integral_delta_squared};
pub use special::{
    asymptotic_leading, delta_deriv_at_one, delta_deriv_at_one_direct, delta_deriv_half_integer, frac_rep_prop2,
};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::quad::QuadConfig;
use crate::specfun::{factorial, SpecialConstants, EULER_GAMMA};

/// Below this |x| the Taylor series is the default evaluation.
pub const SERIES_THRESHOLD: f64 = 0.125;
/// Largest |x| accepted by the `SERIES` route.
pub const SERIES_MAX_ABS_X: f64 = 0.5;
/// Largest supported derivative order.
pub const M_MAX: u32 = 12;

/// An evaluation route for Δ⁽ᵐ⁾.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Route {
    Closed,
    Hurwitz,
    Laplace,
    Hyp,
    Recurrence,
    Series,
    Asymptotic,
}

impl Route {
    pub const ALL: [Route; 7] = [
        Route::Closed,
        Route::Hurwitz,
        Route::Laplace,
        Route::Hyp,
        Route::Recurrence,
        Route::Series,
        Route::Asymptotic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "CLOSED",
            Route::Hurwitz => "HURWITZ",
            Route::Laplace => "LAPLACE",
            Route::Hyp => "HYP",
            Route::Recurrence => "RECURRENCE",
            Route::Series => "SERIES",
            Route::Asymptotic => "ASYMPTOTIC",
        }
    }

    /// Whether the route accepts `x` (order aside).
    pub fn supports(self, x: f64) -> bool {
        if !(x > -1.0) || !x.is_finite() {
            return false;
        }
        match self {
            Route::Closed | Route::Hurwitz | Route::Hyp => true,
            Route::Laplace => x >= 0.0,
            Route::Recurrence => x != 0.0,
            Route::Series => x.abs() <= SERIES_MAX_ABS_X,
            Route::Asymptotic => x > 0.0,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        Route::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown route {s:?}")))
    }
}

/// A validated derivative order, 1 ≤ m ≤ [`M_MAX`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivOrder(u32);

impl DerivOrder {
    pub fn new(m: u32) -> Result<DerivOrder> {
        if (1..=M_MAX).contains(&m) {
            Ok(DerivOrder(m))
        } else {
            domain("delta_deriv", format!("derivative order must be in 1..={M_MAX}, got {m}"))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A computed value with its error estimate and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub route: Route,
    pub n_evals: usize,
    pub converged: bool,
}

pub(crate) fn check_x(op: &'static str, x: f64) -> Result<()> {
    if !(x > -1.0) || !x.is_finite() {
        return domain(op, format!("need finite x > -1, got x = {x}"));
    }
    Ok(())
}

/// ζ(k) for any integer k ≥ 2.
pub(crate) fn zeta_int(k: u32) -> f64 {
    let c = SpecialConstants::get();
    match c.zeta(k as usize) {
        Some(z) => z,
        None => 1.0 + 2f64.powi(-(k as i32)) + 3f64.powi(-(k as i32)),
    }
}

/// (−1)^(m−1) m! ζ(m+1)/(m+1), the value of Δ⁽ᵐ⁾(0) up to sign.
pub(crate) fn signed_value_at_zero(m: u32) -> f64 {
    factorial(m) * zeta_int(m + 1) / (m as f64 + 1.0)
}

pub(crate) fn sign(m: u32) -> f64 {
    if m % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Δ(x) = ln Γ(x+1)/x, with Δ(0) = −γ.
pub fn delta(x: f64) -> Result<f64> {
    Ok(delta_eval(x)?.value)
}

/// Δ(x) with error estimate; the route is `SERIES` for |x| < 1/8, `CLOSED` otherwise.
pub fn delta_eval(x: f64) -> Result<EvalResult> {
    check_x("delta", x)?;
    if x == 0.0 {
        return Ok(EvalResult {
            value: -EULER_GAMMA,
            abs_err_est: f64::EPSILON * EULER_GAMMA,
            route: Route::Series,
            n_evals: 1,
            converged: true,
        });
    }
    if x.abs() < SERIES_THRESHOLD {
        routes::series(0, x)
    } else {
        let (v, dd_err) = routes::closed_dd(0, Dd::new(x));
        let value = v.to_f64();
        Ok(EvalResult {
            value,
            abs_err_est: 0.5 * f64::EPSILON * value.abs() + dd_err,
            route: Route::Closed,
            n_evals: 1,
            converged: true,
        })
    }
}

/// Δ⁽ᵐ⁾(x) along `route`.
///
/// Every route except `RECURRENCE` accepts x = 0; `CLOSED` there returns the
/// continuous extension (−1)^(m−1) m! ζ(m+1)/(m+1).
pub fn delta_deriv(m: u32, x: f64, route: Route, cfg: &QuadConfig) -> Result<EvalResult> {
    let m = DerivOrder::new(m)?.get();
    check_x("delta_deriv", x)?;
    cfg.validate()?;
    if !route.supports(x) {
        let why = match route {
            Route::Laplace => "LAPLACE needs x >= 0",
            Route::Recurrence => "RECURRENCE needs x != 0",
            Route::Series => "SERIES needs |x| <= 0.5",
            Route::Asymptotic => "ASYMPTOTIC needs x > 0",
            _ => "unsupported argument",
        };
        return domain("delta_deriv", format!("{why}, got x = {x}"));
    }
    match route {
        Route::Closed => Ok(routes::closed(m, x)),
        Route::Series => routes::series(m, x),
        Route::Hurwitz => routes::hurwitz(m, x, cfg),
        Route::Laplace => routes::laplace(m, x, cfg),
        Route::Hyp => routes::hyp(m, x, cfg),
        Route::Recurrence => routes::recurrence(m, x),
        Route::Asymptotic => routes::asymptotic(m, x),
    }
}

/// The default route for `x`: exact at 0, `SERIES` for |x| < 1/8, `CLOSED` otherwise.
pub fn default_route(x: f64) -> Route {
    if x == 0.0 || x.abs() < SERIES_THRESHOLD {
        Route::Series
    } else {
        Route::Closed
    }
}

/// Δ⁽ᵐ⁾(x) along [`default_route`].
pub fn delta_deriv_auto(m: u32, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let m = DerivOrder::new(m)?.get();
    check_x("delta_deriv", x)?;
    if x == 0.0 {
        let value = sign(m) * signed_value_at_zero(m);
        return Ok(EvalResult {
            value,
            abs_err_est: 2.0 * f64::EPSILON * value.abs(),
            route: Route::Series,
            n_evals: 1,
            converged: true,
        });
    }
    delta_deriv(m, x, default_route(x), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{digamma, ln_gamma};
    use std::f64::consts::PI;

    const ONE_MINUS_GAMMA: f64 = 1.0 - EULER_GAMMA;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn delta_special_values() {
        assert_eq!(delta(0.0).unwrap(), -EULER_GAMMA);
        assert_eq!(delta(1.0).unwrap(), 0.0);
        assert!(rel(delta(-0.5).unwrap(), -PI.ln()) < 1e-15);
        assert!(delta(-1.0).is_err());
        assert!(delta(f64::NAN).is_err());
    }

    #[test]
    fn delta_is_continuous_across_threshold() {
        for &t in &[SERIES_THRESHOLD, -SERIES_THRESHOLD] {
            let below = routes::series(0, t).unwrap().value;
            let (v, _) = routes::closed_dd(0, Dd::new(t));
            assert!((below - v.to_f64()).abs() < 1e-13);
        }
    }

    #[test]
    fn delta_matches_ln_gamma() {
        for &x in &[-0.9, -0.3, 0.2, 2.0, 17.5, 1e4] {
            let v = delta(x).unwrap();
            let direct = ln_gamma(x + 1.0).unwrap() / x;
            assert!((v - direct).abs() <= 1e-14 * direct.abs().max(1e-3), "x={x}");
        }
    }

    #[test]
    fn route_names_parse() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
            assert_eq!(r.name().to_lowercase().parse::<Route>().unwrap(), r);
        }
        assert!("AUTO".parse::<Route>().is_err());
        assert_eq!(Route::Hyp.to_string(), "HYP");
    }

    #[test]
    fn order_cap() {
        assert!(DerivOrder::new(0).is_err());
        assert!(DerivOrder::new(13).is_err());
        assert_eq!(DerivOrder::new(12).unwrap().get(), 12);
        let cfg = QuadConfig::default();
        assert!(delta_deriv(13, 1.0, Route::Closed, &cfg).is_err());
    }

    #[test]
    fn route_domains() {
        let cfg = QuadConfig::default();
        assert!(delta_deriv(1, -0.5, Route::Laplace, &cfg).is_err());
        assert!(delta_deriv(1, 0.0, Route::Recurrence, &cfg).is_err());
        assert!(delta_deriv(1, 0.7, Route::Series, &cfg).is_err());
        assert!(delta_deriv(1, 0.0, Route::Asymptotic, &cfg).is_err());
        assert!(delta_deriv(1, -2.0, Route::Closed, &cfg).is_err());
    }

    #[test]
    fn first_derivative_examples() {
        let cfg = QuadConfig::default();
        let at0 = delta_deriv_auto(1, 0.0, &cfg).unwrap().value;
        assert!(rel(at0, PI * PI / 12.0) < 1e-15);
        let at1 = delta_deriv(1, 1.0, Route::Closed, &cfg).unwrap().value;
        assert!(rel(at1, ONE_MINUS_GAMMA) < 1e-15);
        // Δ″(1) = π²/6 − 3 + 2γ
        let d2 = delta_deriv(2, 1.0, Route::Closed, &cfg).unwrap().value;
        assert!(rel(d2, PI * PI / 6.0 - 3.0 + 2.0 * EULER_GAMMA) < 1e-13);
        assert!(rel(d2, -0.200_634_603_348_707_8) < 1e-13);
        // Δ′(−1/2) = −2ψ(1/2) − 4 ln √π
        let d = delta_deriv(1, -0.5, Route::Closed, &cfg).unwrap().value;
        let oracle = -2.0 * digamma(0.5).unwrap() - 2.0 * PI.ln();
        assert!(rel(d, oracle) < 1e-14);
        assert!(rel(d, 1.637_560_280_344_047) < 1e-14);
    }

    #[test]
    fn all_routes_agree_at_a_regular_point() {
        let cfg = QuadConfig::default();
        for m in 1..=6 {
            let reference = delta_deriv(m, 0.4, Route::Closed, &cfg).unwrap();
            for r in [Route::Hurwitz, Route::Laplace, Route::Hyp, Route::Recurrence, Route::Series] {
                let v = delta_deriv(m, 0.4, r, &cfg).unwrap();
                assert!(rel(v.value, reference.value) < 1e-10, "m={m} {r}: {} vs {}", v.value, reference.value);
                assert_eq!(v.route, r);
            }
        }
    }
}
