use super::{check_x, sign, DerivOrder};
use crate::error::{domain, Result};
use crate::quad::{integrate_finite, integrate_unit_split, PowerDecay, QuadConfig, QuadResult};
use crate::specfun::{digamma, factorial, hurwitz_unchecked, KahanSum, SpecialConstants, EULER_GAMMA, K_MAX, LN_SQRT_PI};

/// Δ⁽ᵐ⁾(1) = (−1)^(m−1) m! [1 − γ − Σ_{j=2}^{m} (ζ(j) − 1)/j].
///
/// Since Σ_{j≥2} (ζ(j) − 1)/j = 1 − γ, the bracket is summed as its tail
/// Σ_{j>m} (ζ(j) − 1)/j; the direct form loses about m bits to cancellation.
pub fn delta_deriv_at_one(m: u32) -> Result<f64> {
    let m = DerivOrder::new(m)?.get();
    let c = SpecialConstants::get();
    let mut acc = KahanSum::default();
    // Σ_{j>K_MAX} (ζ(j) − 1)/j ≈ Σ 2^(−j)/j
    acc.add(2f64.powi(-(K_MAX as i32)) / (K_MAX as f64 + 1.0));
    for j in (m as usize + 1..=K_MAX).rev() {
        acc.add(c.zeta_minus_one(j).expect("within the table") / j as f64);
    }
    Ok(sign(m) * factorial(m) * acc.value())
}

/// The bracket of [`delta_deriv_at_one`] summed left to right as written.
pub fn delta_deriv_at_one_direct(m: u32) -> Result<f64> {
    let m = DerivOrder::new(m)?.get();
    let c = SpecialConstants::get();
    let mut acc = KahanSum::default();
    acc.add(1.0);
    acc.add(-EULER_GAMMA);
    for j in 2..=m as usize {
        acc.add(-c.zeta_minus_one(j).expect("table covers the order cap") / j as f64);
    }
    Ok(sign(m) * factorial(m) * acc.value())
}

/// Δ⁽ᵐ⁾(−1/2) from the finite zeta sum, with n = m − 1:
///
/// Δ⁽ⁿ⁺¹⁾(−½)/(n+1)! = Σ_{j=0}^{n−1} (−1)^(n−j)/(n−j+1) · (2^(n+2) − 2^(j+1)) ζ(n−j+1)
///                     + 2^(n+1)(γ + 2 ln 2) − 2^(n+2) ln √π.
pub fn delta_deriv_half_integer(m: u32) -> Result<f64> {
    let m = DerivOrder::new(m)?.get();
    let c = SpecialConstants::get();
    let n = m as i32 - 1;
    let p2 = |e: i32| 2f64.powi(e);
    let mut acc = KahanSum::default();
    for j in 0..n {
        let s = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
        let zeta = c.zeta((n - j + 1) as usize).expect("table covers the order cap");
        acc.add(s / (n - j + 1) as f64 * (p2(n + 2) - p2(j + 1)) * zeta);
    }
    acc.add(p2(n + 1) * (EULER_GAMMA + 2.0 * std::f64::consts::LN_2));
    acc.add(-p2(n + 2) * LN_SQRT_PI);
    Ok(factorial(m) * acc.value())
}

/// Both sides of the fractional-part representation of the scaled Hurwitz moment:
///
/// ∫₀¹ uᵐ ζ(m+1, ku+1) du = k^(−m−1) [∫₁^∞ {w}ᵐ/w^(m+1) dw + Σ_{j=1}^{k−1} ∫₀^∞ ({x}+j)ᵐ/(x+j+1)^(m+1) dx].
pub fn frac_rep_prop2(m: u32, k: u32, cfg: &QuadConfig) -> Result<(QuadResult, QuadResult)> {
    let m = DerivOrder::new(m)?.get();
    if k == 0 {
        return domain("frac_rep_prop2", "k must be at least 1");
    }
    cfg.validate()?;
    let mi = m as i32;
    let s = (m + 1) as f64;
    let kf = k as f64;
    let lhs = integrate_finite(|u| u.powi(mi) * hurwitz_unchecked(s, kf * u + 1.0), 0.0, 1.0, cfg)?;

    let scale = kf.powi(-(mi + 1));
    let inner = QuadConfig {
        abs_tol: cfg.abs_tol.min(cfg.rel_tol * lhs.value.abs() / (scale * kf)),
        ..*cfg
    };
    let mut parts = vec![integrate_unit_split(
        |f: f64| f.powi(mi),
        &PowerDecay::new(0.0, s),
        1.0,
        &inner,
    )?];
    for j in 1..k {
        let jf = j as f64;
        parts.push(integrate_unit_split(
            move |f: f64| (f + jf).powi(mi),
            &PowerDecay::new(jf + 1.0, s),
            0.0,
            &inner,
        )?);
    }
    let mut acc = KahanSum::default();
    for p in &parts {
        acc.add(p.value);
    }
    let rhs = QuadResult {
        value: acc.value(),
        abs_err_est: parts.iter().map(|p| p.abs_err_est).sum(),
        n_evals: parts.iter().map(|p| p.n_evals).sum(),
        converged: parts.iter().all(|p| p.converged),
    }
    .scaled(scale);
    Ok((lhs, rhs))
}

/// (−1)^(m−1) (m−1)!/(x+1)ᵐ, the x → ∞ form of Δ⁽ᵐ⁾(x).
///
/// With `refined`, the two ₂F₁ factors of the hypergeometric representation are
/// replaced by their expansions to first order in 1/x, which gives
/// (−1)^(m−1) m! [(x+1)^(−m) (1/m + L/x) − (x+1)^(−m−1) L/2], L = γ − ln x + ψ(m+1).
/// Neither form is meant for small x.
pub fn asymptotic_leading(m: u32, x: f64, refined: bool) -> Result<f64> {
    let m = DerivOrder::new(m)?.get();
    check_x("asymptotic_leading", x)?;
    let s = x + 1.0;
    if !refined {
        return Ok(sign(m) * factorial(m - 1) * s.powi(-(m as i32)));
    }
    if !(x > 0.0) {
        return domain("asymptotic_leading", format!("refined form needs x > 0, got {x}"));
    }
    let l = EULER_GAMMA - x.ln() + digamma(m as f64 + 1.0)?;
    let body = s.powi(-(m as i32)) * (1.0 / m as f64 + l / x) - s.powi(-(m as i32 + 1)) * l / 2.0;
    Ok(sign(m) * factorial(m) * body)
}
