//! Log-gamma, digamma and polygamma.
//!
//! ln Γ and ψ use the Stirling / asymptotic expansions after shifting the
//! argument up to at least [`SHIFT_TO`], carried out in double-double.

use std::sync::OnceLock;

use super::zeta::{hurwitz_dd, hurwitz_unchecked};
use super::{factorial, BERNOULLI_2J};
use crate::dd::{Dd, PI};
use crate::error::{domain, Result};

const SHIFT_TO: f64 = 20.0;

/// ln √π.
pub(crate) const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;

fn half_ln_two_pi() -> Dd {
    static C: OnceLock<Dd> = OnceLock::new();
    *C.get_or_init(|| PI.mul_f64(2.0).ln().mul_f64(0.5))
}

fn bernoulli_dd(j: usize) -> Dd {
    let (n, d) = BERNOULLI_2J[j];
    Dd::ratio(n, d)
}

/// ln Γ(z) for z > 0 in double-double.
pub(crate) fn ln_gamma_dd(z: Dd) -> Dd {
    if z.hi == 1.0 && z.lo == 0.0 || z.hi == 2.0 && z.lo == 0.0 {
        return Dd::ZERO;
    }
    let mut w = z;
    let mut prod = Dd::ONE;
    while w.hi < SHIFT_TO {
        prod = prod * w;
        w = w + 1.0;
    }
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut series = Dd::ZERO;
    let mut pw = inv;
    for j in 0..BERNOULLI_2J.len() {
        let k = (2 * (j + 1)) as f64;
        series = series + bernoulli_dd(j) * pw / Dd::new(k * (k - 1.0));
        pw = pw * inv2;
    }
    let stirling = (w - Dd::new(0.5)) * w.ln() - w + half_ln_two_pi() + series;
    if prod.hi == 1.0 && prod.lo == 0.0 {
        stirling
    } else {
        stirling - prod.ln()
    }
}

/// ψ(z) for z > 0 in double-double.
pub(crate) fn digamma_dd(z: Dd) -> Dd {
    let mut w = z;
    let mut shift = Dd::ZERO;
    while w.hi < SHIFT_TO {
        shift = shift + w.recip();
        w = w + 1.0;
    }
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut series = Dd::ZERO;
    let mut pw = inv2;
    for j in 0..BERNOULLI_2J.len() {
        let k = (2 * (j + 1)) as f64;
        series = series + bernoulli_dd(j) * pw / Dd::new(k);
        pw = pw * inv2;
    }
    w.ln() - inv.mul_f64(0.5) - series - shift
}

/// ψ⁽ᵏ⁾(z) for k ≥ −1 in double-double (k = −1 is ln Γ).
pub(crate) fn polygamma_dd(k: i32, z: Dd) -> Dd {
    match k {
        -1 => ln_gamma_dd(z),
        0 => digamma_dd(z),
        _ => {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            hurwitz_dd(k as u32 + 1, z).mul_f64(sign * factorial(k as u32))
        }
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain("ln_gamma", format!("need x > 0, got x = {x}"));
    }
    Ok(ln_gamma_dd(Dd::new(x)).to_f64())
}

/// Digamma ψ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain("digamma", format!("need x > 0, got x = {x}"));
    }
    Ok(digamma_dd(Dd::new(x)).to_f64())
}

/// Polygamma ψ⁽ᵒʳᵈᵉʳ⁾(x), with order −1 meaning ln Γ(x).
///
/// For order ≥ 1 this is (−1)^(order+1) · order! · ζ(order+1, x).
pub fn polygamma(order: i32, x: f64) -> Result<f64> {
    if order < -1 {
        return domain("polygamma", format!("order must be >= -1, got {order}"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return domain("polygamma", format!("need x > 0, got x = {x}"));
    }
    Ok(match order {
        -1 => ln_gamma_dd(Dd::new(x)).to_f64(),
        0 => digamma_dd(Dd::new(x)).to_f64(),
        k => {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * factorial(k as u32) * hurwitz_unchecked(k as f64 + 1.0, x)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{riemann_zeta, EULER_GAMMA};
    use std::f64::consts::{LN_2, PI};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ln_gamma_known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        assert!(rel(ln_gamma(0.5).unwrap(), LN_SQRT_PI) < 1e-15);
        assert!(rel(ln_gamma(5.0).unwrap(), 24f64.ln()) < 1e-15);
        // ln Γ(101) = ln 100!
        let ln_fact: f64 = (1..=100).map(|k| (k as f64).ln()).sum();
        assert!(rel(ln_gamma(101.0).unwrap(), ln_fact) < 1e-14);
    }

    #[test]
    fn ln_gamma_near_its_zeros_keeps_relative_accuracy() {
        // ln Γ(1+ε) ≈ −γ ε + ζ(2) ε²/2
        let eps = (1.0 + 1e-9) - 1.0;
        let approx = -EULER_GAMMA * eps + PI * PI / 12.0 * eps * eps;
        assert!(rel(ln_gamma(1.0 + eps).unwrap(), approx) < 1e-8);
        // ln Γ(2+ε) ≈ (1 − γ) ε
        let approx2 = (1.0 - EULER_GAMMA) * eps;
        assert!(rel(ln_gamma(2.0 + eps).unwrap(), approx2) < 1e-8);
    }

    #[test]
    fn ln_gamma_reflection_and_duplication() {
        // Legendre duplication: ln Γ(x) + ln Γ(x+1/2) = (1−2x) ln 2 + ln √π + ln Γ(2x)
        for &x in &[1e-3, 0.07, 0.3, 1.7, 9.5, 44.0, 1234.5, 1e6] {
            let lhs = ln_gamma(x).unwrap() + ln_gamma(x + 0.5).unwrap();
            let rhs = (1.0 - 2.0 * x) * LN_2 + LN_SQRT_PI + ln_gamma(2.0 * x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn digamma_known_values() {
        assert!(rel(digamma(1.0).unwrap(), -EULER_GAMMA) < 1e-15);
        assert!(rel(digamma(0.5).unwrap(), -EULER_GAMMA - 2.0 * LN_2) < 1e-15);
        assert!(rel(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA) < 1e-15);
        assert!(rel(polygamma(0, 1.0).unwrap(), -0.577_215_664_9) < 1e-10);
    }

    #[test]
    fn polygamma_half_argument_identity() {
        // ψ⁽ⁿ⁾(1/2) = (−1)^(n+1) n! (2^(n+1) − 1) ζ(n+1)
        for n in 1..=8 {
            let lhs = polygamma(n, 0.5).unwrap();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let rhs = sign
                * factorial(n as u32)
                * (2f64.powi(n + 1) - 1.0)
                * riemann_zeta(n as f64 + 1.0).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "n={n}");
        }
        assert!(rel(polygamma(1, 0.5).unwrap(), PI * PI / 2.0) < 1e-14);
    }

    #[test]
    fn polygamma_order_minus_one_is_ln_gamma() {
        for &x in &[0.25, 1.5, 7.0] {
            assert_eq!(polygamma(-1, x).unwrap(), ln_gamma(x).unwrap());
        }
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-2.5).is_err());
        assert!(digamma(0.0).is_err());
        assert!(polygamma(-2, 1.0).is_err());
        assert!(polygamma(3, -1.0).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn dd_digamma_matches_functional_equation() {
        let z = Dd::new(0.3);
        let lhs = digamma_dd(z + 1.0) - digamma_dd(z);
        let rhs = z.recip();
        assert!((lhs - rhs).to_f64().abs() < 1e-29);
    }
}
