use std::time::Instant;

use super::{check_x, delta_deriv, delta_deriv_auto, sign, DerivOrder, Route};
use crate::error::{domain, Result};
use crate::quad::QuadConfig;
use crate::report::{point, IdentityResidual, Tol, VerificationReport};
use crate::specfun::{factorial, hurwitz_unchecked};

/// Residual of the order recurrence
///
/// (−1)^(m−1) Δ⁽ᵐ⁾(x)/m! = (1/x) (−1)ᵐ Δ⁽ᵐ⁻¹⁾(x)/(m−1)! − ζ(m, x+1)/(m x),
///
/// with both derivatives taken along `base`. The tolerance is 1e−9 relative,
/// widened to the propagated error estimates when those are larger.
pub fn recurrence_residual(m: u32, x: f64, base: Route, cfg: &QuadConfig) -> Result<IdentityResidual> {
    let m = DerivOrder::new(m)?.get();
    if m < 2 {
        return domain("recurrence_residual", "order must be at least 2");
    }
    check_x("recurrence_residual", x)?;
    if x == 0.0 {
        return domain("recurrence_residual", "x must be non-zero");
    }
    let hi = delta_deriv(m, x, base, cfg)?;
    let lo = delta_deriv(m - 1, x, base, cfg)?;
    let fm = factorial(m);
    let fm1 = factorial(m - 1);
    let lhs = sign(m) * hi.value / fm;
    let zeta = hurwitz_unchecked(m as f64, x + 1.0);
    let rhs = -sign(m) * lo.value / (fm1 * x) - zeta / (m as f64 * x);
    let propagated = hi.abs_err_est / fm + lo.abs_err_est / (fm1 * x.abs()) + 4.0 * f64::EPSILON * zeta.abs() / (m as f64 * x.abs());
    let tol = Tol::RelAbs { rel: 1e-9, abs: propagated };
    Ok(IdentityResidual::equality(
        format!("recurrence[{base}]"),
        point(&[("m", m as f64), ("x", x)]),
        lhs,
        rhs,
        tol,
    ))
}

/// Checks (−1)^(m−1) Δ⁽ᵐ⁾(x) ≥ −abs_err_est for every grid point and 1 ≤ m ≤ m_max.
pub fn check_complete_monotonicity(m_max: u32, grid: &[f64], cfg: &QuadConfig) -> Result<VerificationReport> {
    DerivOrder::new(m_max)?;
    for &x in grid {
        check_x("check_complete_monotonicity", x)?;
    }
    let start = Instant::now();
    let mut checks = Vec::with_capacity(grid.len() * m_max as usize);
    for &x in grid {
        for m in 1..=m_max {
            let r = delta_deriv_auto(m, x, cfg)?;
            let signed = sign(m) * r.value;
            // a violation is −signed > abs_err_est
            checks.push(IdentityResidual::inequality(
                "complete_monotonicity",
                point(&[("m", m as f64), ("x", x)]),
                -r.abs_err_est,
                signed,
                Tol::Abs(0.0),
            ));
        }
    }
    Ok(VerificationReport::new(
        "monotonicity",
        checks,
        start.elapsed().as_millis() as u64,
    ))
}
