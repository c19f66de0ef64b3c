//! Gauss hypergeometric ₂F₁(a, b; c; z) on the real line, z ≤ 1.
//!
//! Evaluation strategy:
//!
//! * `|z| ≤ 1/2`: the defining series.
//! * `z < −1/2`: Pfaff, `F(a,b;c;z) = (1−z)^(−a) F(a, c−b; c; z/(z−1))`, with
//!   `a` chosen as 1 when either upper parameter is 1.
//! * `1/2 < z ≤ 0.9`: the defining series.
//! * `0.9 < z < 1`: for `F(1, y; 1+y; z)` and `F(1, y; 2+y; z)` the logarithmic
//!   expansions in powers of `1 − z` ([`log_branch_c1`], [`log_branch_c2`]);
//!   otherwise the defining series with a budget of 10⁵ terms.
//! * `z = 1`: Gauss's summation when `c − a − b > 0`.

mod identities;

pub use identities::{
    derivative_rule_residual, hyp_identity_residual, k_moment, HypIdentity, IDENTITY_TAGS,
};

use crate::error::{domain, Error, Result};
use crate::specfun::{digamma, ln_gamma, KahanSum};

/// Parameters of ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Hyp2F1Params { a, b, c, z }
    }
}

/// The rising factorial `(a)_j = a (a+1) … (a+j−1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer {
    pub base: f64,
    pub length: u32,
    pub value: f64,
}

impl Pochhammer {
    pub fn new(base: f64, length: u32) -> Self {
        Pochhammer {
            base,
            length,
            value: pochhammer(base, length),
        }
    }

    /// `(a)_{j+1} = (a)_j · (a + j)`.
    pub fn next(self) -> Self {
        Pochhammer {
            base: self.base,
            length: self.length + 1,
            value: self.value * (self.base + self.length as f64),
        }
    }
}

pub fn pochhammer(a: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (a + i as f64))
}

const SERIES_MAX_TERMS: usize = 100_000;
const NEAR_ONE: f64 = 0.9;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// ₂F₁(a, b; c; z) for the argument ranges listed in the module docs.
pub fn gauss_2f1(p: &Hyp2F1Params) -> Result<f64> {
    let Hyp2F1Params { a, b, c, z } = *p;
    if ![a, b, c, z].iter().all(|v| v.is_finite()) {
        return domain("gauss_2f1", format!("non-finite parameter in ({a}, {b}; {c}; {z})"));
    }
    if is_nonpositive_integer(c) {
        return domain("gauss_2f1", format!("c = {c} is a non-positive integer"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 1.0 {
        return Err(Error::UnsupportedFamily { a, b, c, z });
    }
    if z == 1.0 {
        return gauss_sum_at_one(a, b, c);
    }
    // Put a parameter equal to 1 first; the families used here all have one.
    let (a, b) = if b == 1.0 && a != 1.0 { (b, a) } else { (a, b) };
    if z < -0.5 {
        let w = z / (z - 1.0);
        let inner = positive_branch(a, c - b, c, w)?;
        return Ok((1.0 - z).powf(-a) * inner);
    }
    if z < 0.0 {
        return Ok(series(a, b, c, z)?.0);
    }
    positive_branch(a, b, c, z)
}

/// Shorthand for [`gauss_2f1`].
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1(&Hyp2F1Params { a, b, c, z })
}

fn positive_branch(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let (a, b) = if b == 1.0 && a != 1.0 { (b, a) } else { (a, b) };
    if z <= NEAR_ONE || a != 1.0 || b <= 0.0 {
        return Ok(series(a, b, c, z)?.0);
    }
    if c - b == 1.0 {
        log_branch_c1(b, z)
    } else if c - b == 2.0 {
        log_branch_c2(b, z)
    } else {
        Ok(series(a, b, c, z)?.0)
    }
}

fn gauss_sum_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    let excess = c - a - b;
    if !(excess > 0.0) {
        return domain("gauss_2f1", format!("z = 1 needs c − a − b > 0, got {excess}"));
    }
    let (ca, cb) = (c - a, c - b);
    if !(c > 0.0 && ca > 0.0 && cb > 0.0) {
        return Err(Error::UnsupportedFamily { a, b, c, z: 1.0 });
    }
    let ln = ln_gamma(c)? + ln_gamma(excess)? - ln_gamma(ca)? - ln_gamma(cb)?;
    Ok(ln.exp())
}

/// The defining series Σ (a)_k (b)_k / ((c)_k k!) z^k, returning the sum and
/// the number of terms used.
pub fn series(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, usize)> {
    if is_nonpositive_integer(c) {
        return domain("gauss_2f1", format!("c = {c} is a non-positive integer"));
    }
    if !(z.abs() < 1.0) {
        return domain("gauss_2f1", format!("series needs |z| < 1, got {z}"));
    }
    let mut sum = KahanSum::default();
    let mut term = 1.0;
    sum.add(term);
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            return Ok((sum.value(), k + 1));
        }
        sum.add(term);
        if ratio.abs() < 1.0 && term.abs() <= 1e-17 * sum.value().abs() {
            quiet += 1;
            if quiet >= 2 {
                return Ok((sum.value(), k + 2));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        op: "gauss_2f1",
        msg: format!("series ({a}, {b}; {c}; {z}) not converged in {SERIES_MAX_TERMS} terms"),
    })
}

/// Sums `Σ_k w_k [ψ(k+1) − ψ(k+s) − ln(1−z)] (1−z)^k` where the weights
/// follow `w_{k+1} = w_k (s+k)/(k+1)`, `w_0 = 1`.
fn log_sum(s: f64, z: f64) -> Result<f64> {
    let q = 1.0 - z;
    let ln_q = q.ln();
    let mut psi_k1 = digamma(1.0)?;
    let mut psi_ks = digamma(s)?;
    let mut weight = 1.0;
    let mut sum = KahanSum::default();
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        let t = weight * (psi_k1 - psi_ks - ln_q);
        sum.add(t);
        if kf > s && t.abs() <= 1e-17 * sum.value().abs() {
            return Ok(sum.value());
        }
        weight *= (s + kf) / (kf + 1.0) * q;
        psi_k1 += 1.0 / (kf + 1.0);
        psi_ks += 1.0 / (kf + s);
    }
    Err(Error::NonConvergence {
        op: "gauss_2f1",
        msg: format!("logarithmic expansion with s = {s}, z = {z}"),
    })
}

/// `F(1, y; 1+y; z) = y Σ_k (y)_k/k! [ψ(k+1) − ψ(k+y) − ln(1−z)] (1−z)^k`, y > 0, 0 < z < 1.
pub fn log_branch_c1(y: f64, z: f64) -> Result<f64> {
    if !(y > 0.0) || !(z > 0.0 && z < 1.0) {
        return domain("gauss_2f1", format!("log branch needs y > 0, 0 < z < 1 (y={y}, z={z})"));
    }
    Ok(y * log_sum(y, z)?)
}

/// `F(1, y; 2+y; z) = y + 1 − y(y+1) Σ_k (y+1)_k/k! [ψ(k+1) − ψ(k+y+1) − ln(1−z)] (1−z)^(k+1)`.
pub fn log_branch_c2(y: f64, z: f64) -> Result<f64> {
    if !(y > 0.0) || !(z > 0.0 && z < 1.0) {
        return domain("gauss_2f1", format!("log branch needs y > 0, 0 < z < 1 (y={y}, z={z})"));
    }
    Ok(y + 1.0 - y * (y + 1.0) * (1.0 - z) * log_sum(y + 1.0, z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_finite, QuadConfig};
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Euler integral Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^(b−1)(1−t)^(c−b−1)(1−zt)^(−a) dt,
    /// for c > b ≥ 1 and c − b ≥ 1 so that the integrand is bounded.
    fn euler_integral(a: f64, b: f64, c: f64, z: f64) -> f64 {
        let cfg = QuadConfig {
            abs_tol: 1e-300,
            ..QuadConfig::default()
        };
        let norm = (ln_gamma(c).unwrap() - ln_gamma(b).unwrap() - ln_gamma(c - b).unwrap()).exp();
        let q = integrate_finite(
            |t| t.powf(b - 1.0) * (1.0 - t).powf(c - b - 1.0) * (1.0 - z * t).powf(-a),
            0.0,
            1.0,
            &cfg,
        )
        .unwrap();
        norm * q.value
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(2.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(3.0, 4), 360.0);
        let p = Pochhammer::new(0.5, 3);
        assert_eq!(p.next().value, pochhammer(0.5, 4));
    }

    #[test]
    fn trivial_and_gauss_sum() {
        assert_eq!(hyp2f1(1.3, -2.2, 4.1, 0.0).unwrap(), 1.0);
        for n in 0..8 {
            let n = n as f64;
            let v = hyp2f1(1.0, n + 1.0, n + 3.0, 1.0).unwrap();
            assert!(rel(v, n + 2.0) < 1e-13, "n={n}");
        }
        assert!(hyp2f1(1.0, 2.0, 3.0, 1.0).is_err());
        assert!(matches!(hyp2f1(1.0, 1.0, 3.0, 1.5), Err(Error::UnsupportedFamily { .. })));
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.3).is_err());
    }

    #[test]
    fn two_two_three_at_minus_one() {
        // F(2,2;3;−1) = 2 ∫₀¹ u/(u+1)² du = 2(ln 2 − 1/2)
        let v = hyp2f1(2.0, 2.0, 3.0, -1.0).unwrap();
        assert!(rel(v, 2.0 * (LN_2 - 0.5)) < 1e-14);
    }

    #[test]
    fn elementary_closed_forms() {
        // F(1,1;2;z) = −ln(1−z)/z
        for &z in &[-40.0, -3.0, -0.7, -0.2, 0.3, 0.8, 0.95, 0.999] {
            let v = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            let exact = -(-z).ln_1p() / z;
            assert!(rel(v, exact) < 1e-13, "z={z}");
        }
        // F(a,b;b;z) = (1−z)^(−a)
        for &z in &[-20.0, -0.6, 0.4, 0.85] {
            let v = hyp2f1(2.5, 3.0, 3.0, z).unwrap();
            assert!(rel(v, (1.0 - z).powf(-2.5)) < 1e-12, "z={z}");
        }
    }

    #[test]
    fn agrees_with_euler_integral() {
        let cases = [
            (1.0, 1.0, 3.0),
            (1.0, 2.0, 5.0),
            (2.0, 2.0, 3.0),
            (4.0, 4.0, 5.0),
            (2.0, 3.0, 6.0),
            (9.0, 10.0, 11.0),
        ];
        for (a, b, c) in cases {
            for &z in &[-50.0, -20.0, -5.0, -1.0, -0.3, 0.2, 0.7, 0.93, 0.99] {
                let v = hyp2f1(a, b, c, z).unwrap();
                let oracle = euler_integral(a, b, c, z);
                assert!(rel(v, oracle) < 1e-11, "({a},{b};{c};{z}): {v} vs {oracle}");
            }
        }
    }

    #[test]
    fn near_one_branch_continuity() {
        for n in 0..=6 {
            let y = n as f64 + 1.0;
            let z = NEAR_ONE;
            let s1 = series(1.0, y, y + 1.0, z).unwrap().0;
            let l1 = log_branch_c1(y, z).unwrap();
            assert!(rel(l1, s1) < 1e-10, "c1 y={y}: {l1} vs {s1}");
            let s2 = series(1.0, y, y + 2.0, z).unwrap().0;
            let l2 = log_branch_c2(y, z).unwrap();
            assert!(rel(l2, s2) < 1e-10, "c2 y={y}: {l2} vs {s2}");
        }
    }

    #[test]
    fn series_budget_is_reported() {
        let r = series(1.5, 2.5, 1.0, 0.99999);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    proptest! {
        #[test]
        fn pochhammer_step(a in -5.0f64..5.0, j in 0u32..12) {
            let lhs = pochhammer(a, j + 1);
            let rhs = pochhammer(a, j) * (a + j as f64);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
        }

        #[test]
        fn pfaff_and_series_agree_in_overlap(a in 0.5f64..3.0, b in 0.5f64..3.0, dc in 0.5f64..3.0, z in -0.5f64..-0.3) {
            let c = a.max(b) + dc;
            let direct = series(a, b, c, z).unwrap().0;
            let w = z / (z - 1.0);
            let pfaff = (1.0 - z).powf(-a) * series(a, c - b, c, w).unwrap().0;
            prop_assert!(rel(pfaff, direct) < 1e-12);
        }
    }
}
