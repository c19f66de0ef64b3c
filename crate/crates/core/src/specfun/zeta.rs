//! Hurwitz and Riemann zeta by Euler–Maclaurin summation.

use std::sync::OnceLock;

use super::BERNOULLI_2J;
use crate::dd::Dd;
use crate::error::{domain, Result};

/// B₂ⱼ/(2j)! for j = 1..=15.
fn bernoulli_over_factorial() -> &'static [f64; 15] {
    static T: OnceLock<[f64; 15]> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = [0.0; 15];
        let mut fact = 1.0;
        for (j, (num, den)) in BERNOULLI_2J.iter().enumerate() {
            let two_j = 2 * (j + 1);
            fact *= ((two_j - 1) * two_j) as f64;
            out[j] = num / den / fact;
        }
        out
    })
}

fn bernoulli_over_factorial_dd() -> &'static [Dd; 15] {
    static T: OnceLock<[Dd; 15]> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = [Dd::ZERO; 15];
        let mut fact = Dd::ONE;
        for (j, (num, den)) in BERNOULLI_2J.iter().enumerate() {
            let two_j = 2 * (j + 1);
            fact = fact.mul_f64(((two_j - 1) * two_j) as f64);
            out[j] = Dd::ratio(*num, *den) / fact;
        }
        out
    })
}

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (a+k)^(−s) for s > 1, a > 0.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return domain("hurwitz_zeta", format!("need s > 1, got s = {s}"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return domain("hurwitz_zeta", format!("need a > 0, got a = {a}"));
    }
    Ok(hurwitz_unchecked(s, a))
}

/// Riemann zeta ζ(s) for s > 1; identical to `hurwitz_zeta(s, 1)`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

pub(crate) fn hurwitz_unchecked(s: f64, a: f64) -> f64 {
    let n = (10.0 + s).ceil().max(10.0) as usize;

    // Direct part, smallest terms first.
    let mut head = 0.0;
    for k in (0..n).rev() {
        head += (a + k as f64).powf(-s);
    }

    let w = a + n as f64;
    let w_s = w.powf(-s);
    let mut tail = w * w_s / (s - 1.0) + 0.5 * w_s;

    let coeffs = bernoulli_over_factorial();
    let inv_w2 = 1.0 / (w * w);
    // s(s+1)…(s+2j−2) · w^(−s−2j+1)
    let mut rising = s * w_s / w;
    for (j, c) in coeffs.iter().enumerate() {
        let t = c * rising;
        tail += t;
        if t.abs() <= 1e-18 * (head + tail).abs() {
            break;
        }
        let j = (j + 1) as f64;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) * inv_w2;
    }
    head + tail
}

/// ζ(s, a) for integer s ≥ 2 in double-double.
pub(crate) fn hurwitz_dd(s: u32, a: Dd) -> Dd {
    debug_assert!(s >= 2 && a.hi > 0.0);
    let n = 25 + s as usize;
    let mut head = Dd::ZERO;
    for k in (0..n).rev() {
        head = head + (a + k as f64).recip().powi(s);
    }
    let w = a + n as f64;
    let inv_w = w.recip();
    let w_s = inv_w.powi(s);
    let mut tail = (w * w_s) / Dd::new((s - 1) as f64) + w_s.mul_f64(0.5);

    let coeffs = bernoulli_over_factorial_dd();
    let inv_w2 = inv_w.sqr();
    let sf = s as f64;
    let mut rising = w_s.mul_f64(sf) * inv_w;
    for (j, c) in coeffs.iter().enumerate() {
        let t = *c * rising;
        tail = tail + t;
        if t.hi.abs() <= 1e-34 * (head + tail).hi.abs() {
            break;
        }
        let j = (j + 1) as f64;
        rising = rising.mul_f64((sf + 2.0 * j - 1.0) * (sf + 2.0 * j)) * inv_w2;
    }
    head + tail
}
