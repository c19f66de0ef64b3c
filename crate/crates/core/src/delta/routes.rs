use super::{sign, zeta_int, EvalResult, Route};
use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::hyp2f1::hyp2f1;
use crate::quad::{integrate_finite, integrate_unit_split, p1, ProductDecay, QuadConfig};
use crate::specfun::{
    digamma, factorial, hurwitz_unchecked, polygamma_dd, upper_incomplete_gamma_int, KahanSum, EULER_GAMMA,
};

/// Absolute error of the double-double kernels, measured against 45-digit
/// references: ln Γ loses the size of its Stirling pieces (about 100) when
/// shifted, ψ the size of its shift sum, the Hurwitz kernel only rounding.
fn kernel_err(k: i32, value: Dd) -> f64 {
    let v = value.to_f64().abs();
    match k {
        -1 => 5e-32 * (v + 100.0),
        0 => 5e-32 * (v + 10.0),
        _ => 2e-31 * v,
    }
}

/// Δ⁽ᵐ⁾(x) for m ≥ 0 and x ≠ 0, with a bound on the absolute rounding error.
pub(crate) fn closed_dd(m: u32, x: Dd) -> (Dd, f64) {
    let z = x + Dd::ONE;
    let xi = x.recip();
    let mut pow = xi;
    let mut coeff = 1.0; // m!/(m−j)!
    let mut acc = Dd::ZERO;
    let mut err = 0.0;
    for j in 0..=m {
        let k = m as i32 - 1 - j as i32;
        let psi = polygamma_dd(k, z);
        let weight = pow.mul_f64(coeff);
        let mut term = psi * weight;
        if j % 2 == 1 {
            term = -term;
        }
        err += kernel_err(k, psi) * weight.to_f64().abs() + 1e-31 * term.to_f64().abs();
        acc = acc + term;
        pow = pow * xi;
        coeff *= (m - j) as f64;
    }
    (acc, err)
}

pub(crate) fn closed(m: u32, x: f64) -> EvalResult {
    if x == 0.0 {
        let value = sign(m) * super::signed_value_at_zero(m);
        return EvalResult {
            value,
            abs_err_est: 2.0 * f64::EPSILON * value.abs(),
            route: Route::Closed,
            n_evals: 1,
            converged: true,
        };
    }
    let (v, dd_err) = closed_dd(m, Dd::new(x));
    let value = v.to_f64();
    EvalResult {
        value,
        abs_err_est: 0.5 * f64::EPSILON * value.abs() + dd_err,
        route: Route::Closed,
        n_evals: m as usize + 1,
        converged: true,
    }
}

/// Term-wise m-th derivative of Δ(x) = −γ + Σ_{k≥2} (−1)ᵏ ζ(k) x^(k−1)/k.
pub(crate) fn series(m: u32, x: f64) -> Result<EvalResult> {
    const MAX_TERMS: u32 = 4000;
    let ax = x.abs();
    if ax >= 1.0 {
        return domain("delta_deriv", format!("SERIES diverges at x = {x}"));
    }
    let coeff = |k: u32| -> f64 {
        if k == 1 {
            -EULER_GAMMA
        } else {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * zeta_int(k) / k as f64
        }
    };
    // past this index the terms decrease geometrically with ratio < (1+|x|)/2
    let monotone_from = (m as f64 * (1.0 + ax) / (1.0 - ax)).ceil() as u32 + m + 2;
    let mut acc = KahanSum::default();
    let mut abs_sum = 0.0;
    let mut xpow = 1.0;
    let mut last = 0.0;
    let mut n = 0usize;
    let mut converged = false;
    for k in (m + 1)..(m + 1 + MAX_TERMS) {
        let ff: f64 = (0..m).map(|i| (k - 1 - i) as f64).product();
        let t = coeff(k) * ff * xpow;
        acc.add(t);
        abs_sum += t.abs();
        last = t;
        n += 1;
        if k > monotone_from && t.abs() <= 1e-18 * acc.value().abs() {
            converged = true;
            break;
        }
        if x == 0.0 {
            converged = true;
            break;
        }
        xpow *= x;
    }
    let value = acc.value();
    let tail = if x == 0.0 { 0.0 } else { last.abs() * 2.0 * ax / (1.0 - ax) };
    Ok(EvalResult {
        value,
        abs_err_est: 2.0 * f64::EPSILON * abs_sum + tail,
        route: Route::Series,
        n_evals: n,
        converged,
    })
}

/// A quadrature config whose absolute floors sit below the expected size
/// 1/(m (x+1)ᵐ) of the scaled integral, so small values keep relative accuracy.
fn scaled_cfg(m: u32, x: f64, cfg: &QuadConfig) -> QuadConfig {
    let size = 1.0 / (m as f64 * (x + 1.0).powi(m as i32));
    QuadConfig {
        abs_tol: cfg.abs_tol.min(1e-2 * cfg.rel_tol * size),
        tail_stop: cfg.tail_stop.min(1e-3 * cfg.rel_tol * size),
        ..*cfg
    }
}

fn quad_result(route: Route, value: f64, err: f64, n_evals: usize, converged: bool) -> Result<EvalResult> {
    if !value.is_finite() {
        return Err(Error::NonFinite {
            op: "delta_deriv",
            at: value,
        });
    }
    Ok(EvalResult {
        value,
        abs_err_est: err,
        route,
        n_evals,
        converged,
    })
}

/// m! ∫₀¹ uᵐ ζ(m+1, xu+1) du, signed.
pub(crate) fn hurwitz(m: u32, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let s = (m + 1) as f64;
    let cfg = scaled_cfg(m, x, cfg);
    let q = integrate_finite(|u| u.powi(m as i32) * hurwitz_unchecked(s, x * u + 1.0), 0.0, 1.0, &cfg)?;
    let f = sign(m) * factorial(m);
    let err = (q.abs_err_est + 4.0 * f64::EPSILON * q.value.abs()) * factorial(m);
    quad_result(Route::Hurwitz, f * q.value, err, q.n_evals, q.converged)
}

/// E_m(y) = ∫₀¹ uᵐ e^(−yu) du for y ≥ 0.
fn e_moment(m: u32, y: f64) -> f64 {
    if y == 0.0 {
        return 1.0 / (m as f64 + 1.0);
    }
    if y <= m as f64 + 50.0 {
        // e^(−y) Σ_j y^j / ((m+1)(m+2)…(m+1+j)), all terms positive
        let mut term = 1.0 / (m as f64 + 1.0);
        let mut acc = term;
        let mut j = 1.0;
        loop {
            term *= y / (m as f64 + 1.0 + j);
            acc += term;
            if term <= 1e-17 * acc {
                break;
            }
            j += 1.0;
        }
        acc * (-y).exp()
    } else {
        let gamma_upper = upper_incomplete_gamma_int(m, y).unwrap_or(0.0);
        (factorial(m) - gamma_upper) / y.powi(m as i32 + 1)
    }
}

/// ∫₀^T tᵐ/(eᵗ−1) E_m(xt) dt; the neglected tail is bounded by
/// Γ(m+1,T) · min(1/(m+1), m!/(xT)^(m+1)) / (1 − e^(−T)).
pub(crate) fn laplace(m: u32, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let cut = 2.0 * m as f64 + 70.0;
    let integrand = |t: f64| t.powi(m as i32) / t.exp_m1() * e_moment(m, x * t);
    let cfg = scaled_cfg(m, x, cfg);
    // E_m(xt) turns over near t = 1/x and tᵐ/(eᵗ−1) peaks near t = m
    let mut breaks = vec![0.0];
    if x * m.max(1) as f64 > 1.0 {
        breaks.push(1.0 / x);
    }
    breaks.push(m as f64);
    breaks.push(cut);
    let mut q = 0.0;
    let mut err = 0.0;
    let mut n_evals = 0;
    let mut converged = true;
    for w in breaks.windows(2) {
        let r = integrate_finite(integrand, w[0], w[1], &cfg)?;
        q += r.value;
        err += r.abs_err_est;
        n_evals += r.n_evals;
        converged &= r.converged;
    }
    let mut cap = 1.0 / (m as f64 + 1.0);
    if x > 0.0 {
        cap = cap.min(factorial(m) / (x * cut).powi(m as i32 + 1));
    }
    let tail = upper_incomplete_gamma_int(m, cut)? * cap / (1.0 - (-cut).exp());
    let err = err + tail + 4.0 * f64::EPSILON * q.abs();
    quad_result(Route::Laplace, sign(m) * q, err, n_evals, converged)
}

/// The Hurwitz integral through two ₂F₁ at z = x/(x+1) and a P₁ integral:
///
/// ∫₀¹ u^(n+1) ζ(n+2, xu+1) du = (x+1)^(−n−2)/(2(n+2)) · F(1,n+2;n+3;z)
///   + (x+1)^(−n−1)/((n+1)(n+2)) · F(1,n+1;n+3;z) − ∫₀^∞ P₁(t)/((t+1)(t+x+1)^(n+2)) dt.
pub(crate) fn hyp(m: u32, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let n = (m - 1) as f64;
    let s = x + 1.0;
    let z = x / s;
    let a = s.powf(-(n + 2.0)) / (2.0 * (n + 2.0)) * hyp2f1(1.0, n + 2.0, n + 3.0, z)?;
    let b = s.powf(-(n + 1.0)) / ((n + 1.0) * (n + 2.0)) * hyp2f1(1.0, n + 1.0, n + 3.0, z)?;
    let decay = ProductDecay {
        a: 1.0,
        b: s,
        power: n + 2.0,
    };
    let j = integrate_unit_split(p1, &decay, 0.0, &scaled_cfg(m, x, cfg))?;
    let q = a + b - j.value;
    let f = factorial(m);
    let err = f * (j.abs_err_est + 64.0 * f64::EPSILON * (a.abs() + b.abs()));
    quad_result(Route::Hyp, sign(m) * f * q, err, j.n_evals + 2, j.converged)
}

/// (xΔ)⁽ᵐ⁾ = ψ⁽ᵐ⁻¹⁾(x+1), solved for Δ⁽ᵐ⁾ from Δ⁽ᵐ⁻¹⁾.
pub(crate) fn recurrence(m: u32, x: f64) -> Result<EvalResult> {
    let (prev, prev_err) = closed_dd(m - 1, Dd::new(x));
    let prev = prev.to_f64();
    let psi = if m == 1 {
        digamma(x + 1.0)?
    } else {
        -sign(m) * factorial(m - 1) * hurwitz_unchecked(m as f64, x + 1.0)
    };
    let value = (psi - m as f64 * prev) / x;
    let err = (4.0 * f64::EPSILON * (psi.abs() + m as f64 * prev.abs()) + m as f64 * prev_err) / x.abs()
        + f64::EPSILON * value.abs();
    quad_result(Route::Recurrence, value, err, m as usize + 1, true)
}

pub(crate) fn asymptotic(m: u32, x: f64) -> Result<EvalResult> {
    let lead = super::asymptotic_leading(m, x, false)?;
    let refined = super::asymptotic_leading(m, x, true)?;
    let l = EULER_GAMMA - x.ln() + digamma(m as f64 + 1.0)?;
    let err = (refined - lead).abs() * (l.abs() + 1.0) / x;
    quad_result(Route::Asymptotic, refined, err, 1, true)
}
