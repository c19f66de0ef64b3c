use super::delta;
use crate::error::Result;
use crate::quad::{integrate_finite, QuadConfig, QuadResult};
use crate::specfun::{gamma_zero, gamma_zero_series_tail, KahanSum, SpecialConstants, EULER_GAMMA, K_MAX};


/// Σ_{k≥0} (−1)ᵏ a_k by the Cohen–Rodriguez Villegas–Zagier weights, using a_0..a_{n−1}.
fn cvz_alternating<F: Fn(usize) -> f64>(a: F, n: usize) -> f64 {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let (kf, nf) = (k as f64, n as f64);
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// Σ_{k≥2} (−1)ᵏ ζ(k)/k², split as Σ (−1)ᵏ/k² + Σ (−1)ᵏ (ζ(k) − 1)/k².
/// The first part is 1 − π²/12; the second converges like 2^(−k).
fn alternating_zeta_over_square() -> f64 {
    let c = SpecialConstants::get();
    let mut acc = KahanSum::default();
    acc.add(1.0 - std::f64::consts::PI.powi(2) / 12.0);
    for k in 2..=K_MAX {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(s * c.zeta_minus_one(k).unwrap() / (k * k) as f64);
    }
    acc.value()
}

/// c_M = Σ_{ℓ=2}^{M−2} ζ(M−ℓ) ζ(ℓ) / ((M−ℓ) ℓ) / (M−1).
fn double_zeta_term(big_m: usize) -> f64 {
    let c = SpecialConstants::get();
    let mut acc = KahanSum::default();
    for l in 2..=big_m - 2 {
        let r = big_m - l;
        acc.add(c.zeta(r).unwrap() * c.zeta(l).unwrap() / (r * l) as f64);
    }
    acc.value() / (big_m - 1) as f64
}

fn quad_delta_power(power: i32, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_finite(|x| delta(x).map_or(f64::NAN, |d| d.powi(power)), 0.0, 1.0, cfg)
}

/// γ + ln t + Γ(0,t) − t, computed without cancellation for small t.
fn ei_numerator(t: f64) -> f64 {
    if t <= 2.0 {
        -gamma_zero_series_tail(t, 2)
    } else {
        EULER_GAMMA + t.ln() + gamma_zero(t).unwrap_or(f64::NAN) - t
    }
}

/// ∫₀¹ Δ(x) dx three ways: adaptive quadrature of Δ, the series
/// −γ + Σ_{k≥2} (−1)ᵏ ζ(k)/k², and −γ − ∫₀^∞ [γ − t + Γ(0,t) + ln t]/(t(eᵗ−1)) dt.
pub fn integral_delta(cfg: &QuadConfig) -> Result<(QuadResult, f64, QuadResult)> {
    cfg.validate()?;
    let quadrature = quad_delta_power(1, cfg)?;
    let series = -EULER_GAMMA + alternating_zeta_over_square();

    let integrand = |t: f64| ei_numerator(t) / (t * t.exp_m1());
    // beyond t = 60 the integrand is below e^(−60)
    let near = integrate_finite(integrand, 0.0, 2.0, cfg)?;
    let far = integrate_finite(integrand, 2.0, 60.0, cfg)?;
    let ei_form = QuadResult {
        value: -EULER_GAMMA - (near.value + far.value),
        abs_err_est: near.abs_err_est + far.abs_err_est + 1e-24,
        n_evals: near.n_evals + far.n_evals,
        converged: near.converged && far.converged,
    };
    Ok((quadrature, series, ei_form))
}

/// ∫₀¹ Δ²(x) dx by quadrature and by the double zeta series.
///
/// The outer alternating sum over M only decays like ln M/M², so it is
/// accelerated with the CVZ weights rather than truncated.
pub fn integral_delta_squared(cfg: &QuadConfig) -> Result<(QuadResult, f64)> {
    cfg.validate()?;
    let quadrature = quad_delta_power(2, cfg)?;
    let s1 = alternating_zeta_over_square();
    let tail = cvz_alternating(|k| double_zeta_term(k + 4), 56);
    let series = EULER_GAMMA * EULER_GAMMA - 2.0 * EULER_GAMMA * s1 + tail;
    Ok((quadrature, series))
}

#[cfg(test)]
mod tests {
    use super::*;

    const INT_DELTA: f64 = -0.256_874_522_388_739;
    const INT_DELTA_SQ: f64 = 0.093_113_994_182_295_38;

    #[test]
    fn cvz_on_log_two() {
        // Σ (−1)ᵏ/(k+1) = ln 2
        let v = cvz_alternating(|k| 1.0 / (k as f64 + 1.0), 40);
        assert!((v - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn three_forms_of_the_integral() {
        let cfg = QuadConfig::default();
        let (q, s, e) = integral_delta(&cfg).unwrap();
        assert!((q.value - INT_DELTA).abs() < 1e-13, "{}", q.value);
        assert!((s - INT_DELTA).abs() < 1e-14, "{s}");
        assert!((e.value - INT_DELTA).abs() < 1e-12, "{}", e.value);
        assert!(q.converged && e.converged);
    }

    #[test]
    fn squared_integral() {
        let cfg = QuadConfig::default();
        let (q, s) = integral_delta_squared(&cfg).unwrap();
        assert!((q.value - INT_DELTA_SQ).abs() < 1e-13, "{}", q.value);
        assert!((s - INT_DELTA_SQ).abs() < 1e-13, "{s}");
        assert!(q.value >= INT_DELTA * INT_DELTA);
    }

    #[test]
    fn partial_sums_bracket_the_limit() {
        let c = SpecialConstants::get();
        let mut partial = -EULER_GAMMA;
        let mut prev_side = 0.0;
        for k in 2..30usize {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            partial += s * c.zeta(k).unwrap() / (k * k) as f64;
            let side = (partial - INT_DELTA).signum();
            assert_ne!(side, prev_side);
            prev_side = side;
        }
    }
}
