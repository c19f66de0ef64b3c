//! Upper incomplete gamma at integer order, and Γ(0, x).

use super::{factorial, KahanSum, EULER_GAMMA};
use crate::error::{domain, Error, Result};

/// Γ(n+1, x) = n! e^(−x) Σ_{m=0}^{n} x^m / m!, summed in ascending m.
pub fn upper_incomplete_gamma_int(n: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain("upper_incomplete_gamma_int", format!("need x >= 0, got {x}"));
    }
    let mut acc = KahanSum::default();
    if x < 600.0 {
        let e = (-x).exp();
        let mut term = e;
        acc.add(term);
        for m in 1..=n {
            term *= x / m as f64;
            acc.add(term);
        }
    } else {
        // e^(−x) x^m / m! in log form to avoid overflow of x^m
        let lx = x.ln();
        let mut ln_fact = 0.0;
        for m in 0..=n {
            if m > 0 {
                ln_fact += (m as f64).ln();
            }
            acc.add((m as f64 * lx - x - ln_fact).exp());
        }
    }
    Ok(factorial(n) * acc.value())
}

/// Below this the alternating series is used; above, the continued fraction.
const SERIES_LIMIT: f64 = 2.0;

/// Γ(0, x) = E₁(x) = −Ei(−x) for x > 0.
pub fn gamma_zero(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain("gamma_zero", format!("need x > 0, got {x}"));
    }
    if x <= SERIES_LIMIT {
        Ok(-(EULER_GAMMA + x.ln() + gamma_zero_series_tail(x, 1)))
    } else {
        continued_fraction(x)
    }
}

/// Σ_{k≥k0} (−x)^k / (k·k!).
pub(crate) fn gamma_zero_series_tail(x: f64, k0: u32) -> f64 {
    let mut acc = KahanSum::default();
    let mut pow_over_fact = 1.0;
    for k in 1..k0 {
        pow_over_fact *= -x / k as f64;
    }
    for k in k0..400 {
        pow_over_fact *= -x / k as f64;
        let t = pow_over_fact / k as f64;
        acc.add(t);
        if t.abs() <= 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Modified Lentz evaluation of e^(−x) / (x + 1 − 1²/(x + 3 − 2²/(x + 5 − …))).
fn continued_fraction(x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::NonConvergence {
        op: "gamma_zero",
        msg: format!("continued fraction at x = {x}"),
    })
}
