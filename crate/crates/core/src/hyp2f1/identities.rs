//! Residuals of the ₂F₁ identities used by the hypergeometric route.
//!
//! Throughout, `K_a(n, x) = ∫₀¹ u^(n+1) (xu+1)^(−a) du`; in particular
//! `K_{n+2} = F(n+2, n+2; n+3; −x)/(n+2)`.

use std::fmt;
use std::str::FromStr;

use super::hyp2f1;
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_finite, QuadConfig, QuadResult};
use crate::report::{point, IdentityResidual, Tol};

/// Step for the central differences in [`HypIdentity::D25`].
const FD_STEP: f64 = 1e-5;

/// The identities checked by [`hyp_identity_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HypIdentity {
    /// `F(n+2, n+2; n+3; −x) = (1+x)^(−(n+1)) F(1, 1; n+3; −x)`, right side by Euler integral.
    A1,
    /// `K_{n+2} = F(n+2, n+2; n+3; −x)/(n+2)`, left side by quadrature.
    A2,
    /// `K_{n+2} = [(x+1)^(−(n+1)) − K_{n+1}]/(n+1)` with both K from ₂F₁.
    A2R,
    /// The recurrence iterated from `K_{n+2}` down to `K_2`, against the closed form for `K_2`.
    A2I,
    /// `K_2 = 1/(1+x) − (n+1)/(n+2) · F(1, n+2; n+3; −x)`, left side by quadrature.
    A4,
    /// `K_2` through `ln(x+1)` and `∫₀^x (1−vⁿ)/(v+1) dv`; needs `x > 0`.
    A5,
    /// `∫₀^x (1−vⁿ)/(v+1) dv ≤ ∫₀^x (1−vⁿ) dv` on `[0, 1]`.
    A6,
    /// `∫₀^x (1−vⁿ) dv ≤ x` on `[0, 1]`.
    A6B,
    /// `F(1, n+2; n+3; x/(x+1)) = (x+1) F(1, 1; n+3; −x)`, right side by Euler integral.
    T26,
    /// `d/dx F(a,b;c;−x) = −(ab/c) F(a+1,b+1;c+1;−x)` for `(a,b,c) = (n+2, n+2, n+3)`,
    /// left side by central difference.
    D25,
}

pub const IDENTITY_TAGS: [HypIdentity; 10] = [
    HypIdentity::A1,
    HypIdentity::A2,
    HypIdentity::A2R,
    HypIdentity::A2I,
    HypIdentity::A4,
    HypIdentity::A5,
    HypIdentity::A6,
    HypIdentity::A6B,
    HypIdentity::T26,
    HypIdentity::D25,
];

impl HypIdentity {
    pub fn tag(self) -> &'static str {
        match self {
            HypIdentity::A1 => "A1",
            HypIdentity::A2 => "A2",
            HypIdentity::A2R => "A2R",
            HypIdentity::A2I => "A2I",
            HypIdentity::A4 => "A4",
            HypIdentity::A5 => "A5",
            HypIdentity::A6 => "A6",
            HypIdentity::A6B => "A6B",
            HypIdentity::T26 => "T26",
            HypIdentity::D25 => "D25",
        }
    }

    fn default_tol(self) -> Tol {
        match self {
            HypIdentity::A2I => Tol::Rel(1e-9),
            HypIdentity::D25 => Tol::Rel(1e-6),
            HypIdentity::A6 | HypIdentity::A6B => Tol::Abs(1e-14),
            _ => Tol::Rel(1e-10),
        }
    }
}

impl fmt::Display for HypIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for HypIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IDENTITY_TAGS
            .iter()
            .copied()
            .find(|t| t.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown identity tag {s:?}")))
    }
}

/// `K_a(n, x) = ∫₀¹ u^(n+1) (xu+1)^(−a) du` by quadrature.
pub fn k_moment(n: u32, x: f64, a: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let e = n as i32 + 1;
    integrate_finite(|u| u.powi(e) * (x * u + 1.0).powf(-a), 0.0, 1.0, cfg)
}

/// `F(1, 1; n+3; −x) = (n+2) ∫₀¹ (1−t)^(n+1) / (1+xt) dt`.
fn f11_euler(n: u32, x: f64, cfg: &QuadConfig) -> Result<f64> {
    let e = n as i32 + 1;
    let q = integrate_finite(|t| (1.0 - t).powi(e) / (1.0 + x * t), 0.0, 1.0, cfg)?;
    Ok((n as f64 + 2.0) * q.value)
}

/// Closed form of `K_2` from the `F(1, n+2; n+3; −x)` representation.
fn k2_closed(n: u32, x: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(1.0 / (1.0 + x) - (nf + 1.0) / (nf + 2.0) * hyp2f1(1.0, nf + 2.0, nf + 3.0, -x)?)
}

/// Evaluates both sides of the identity `id` at `(n, x)`.
pub fn hyp_identity_residual(id: HypIdentity, n: u32, x: f64) -> Result<IdentityResidual> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain("hyp_identity_residual", format!("need x >= 0, got {x}"));
    }
    // Several of these integrals are far below 1e−13 for large n and x.
    let cfg = QuadConfig {
        abs_tol: 1e-300,
        ..QuadConfig::default()
    };
    let nf = n as f64;
    let pt = point(&[("n", nf), ("x", x)]);
    let tol = id.default_tol();
    let (lhs, rhs) = match id {
        HypIdentity::A1 => {
            let lhs = hyp2f1(nf + 2.0, nf + 2.0, nf + 3.0, -x)?;
            let rhs = (1.0 + x).powf(-(nf + 1.0)) * f11_euler(n, x, &cfg)?;
            (lhs, rhs)
        }
        HypIdentity::A2 => {
            let lhs = k_moment(n, x, nf + 2.0, &cfg)?.value;
            let rhs = hyp2f1(nf + 2.0, nf + 2.0, nf + 3.0, -x)? / (nf + 2.0);
            (lhs, rhs)
        }
        HypIdentity::A2R => {
            let lhs = hyp2f1(nf + 2.0, nf + 2.0, nf + 3.0, -x)? / (nf + 2.0);
            let k_prev = hyp2f1(nf + 1.0, nf + 2.0, nf + 3.0, -x)? / (nf + 2.0);
            let rhs = ((x + 1.0).powf(-(nf + 1.0)) - k_prev) / (nf + 1.0);
            (lhs, rhs)
        }
        HypIdentity::A2I => {
            // K_{a−1} = [(x+1)^(1−a) − (a−1) K_a] / (n+3−a), a = n+2 … 3
            let mut k = hyp2f1(nf + 2.0, nf + 2.0, nf + 3.0, -x)? / (nf + 2.0);
            for a in (3..=n + 2).rev() {
                let af = a as f64;
                k = ((x + 1.0).powf(1.0 - af) - (af - 1.0) * k) / (nf + 3.0 - af);
            }
            (k, k2_closed(n, x)?)
        }
        HypIdentity::A4 => (k_moment(n, x, 2.0, &cfg)?.value, k2_closed(n, x)?),
        HypIdentity::A5 => {
            if x == 0.0 {
                return domain("hyp_identity_residual", "A5 has a removable singularity at x = 0");
            }
            let ni = n as i32;
            let inner = integrate_finite(|v| (1.0 - v.powi(ni)) / (v + 1.0), 0.0, x, &cfg)?.value;
            let rhs = ((nf + 1.0) / x.powf(nf + 1.0) * (x.ln_1p() - inner) - 1.0 / (x + 1.0)) / x;
            (k_moment(n, x, 2.0, &cfg)?.value, rhs)
        }
        HypIdentity::A6 | HypIdentity::A6B => {
            if x > 1.0 {
                return domain("hyp_identity_residual", format!("A6 needs 0 <= x <= 1, got {x}"));
            }
            let ni = n as i32;
            let i1 = integrate_finite(|v| (1.0 - v.powi(ni)) / (v + 1.0), 0.0, x, &cfg)?.value;
            let i2 = x - x.powi(ni + 1) / (nf + 1.0);
            let r = if id == HypIdentity::A6 {
                IdentityResidual::inequality(id.tag(), pt, i1, i2, tol)
            } else {
                IdentityResidual::inequality(id.tag(), pt, i2, x, tol)
            };
            return Ok(r);
        }
        HypIdentity::T26 => {
            let lhs = hyp2f1(1.0, nf + 2.0, nf + 3.0, x / (x + 1.0))?;
            let rhs = (x + 1.0) * f11_euler(n, x, &cfg)?;
            (lhs, rhs)
        }
        HypIdentity::D25 => {
            let r = derivative_rule_residual(nf + 2.0, nf + 2.0, nf + 3.0, x)?;
            return Ok(IdentityResidual::equality(id.tag(), pt, r.lhs, r.rhs, tol));
        }
    };
    Ok(IdentityResidual::equality(id.tag(), pt, lhs, rhs, tol))
}

/// Central difference of `F(a, b; c; −x)` in `x` against `−(ab/c) F(a+1, b+1; c+1; −x)`.
///
/// The differences at steps `h` and `h/2` are combined by one Richardson step,
/// which removes the O(h²) term (about 1e−8 relative for the larger parameters).
pub fn derivative_rule_residual(a: f64, b: f64, c: f64, x: f64) -> Result<IdentityResidual> {
    let central = |h: f64| -> Result<f64> {
        Ok((hyp2f1(a, b, c, -(x + h))? - hyp2f1(a, b, c, -(x - h))?) / (2.0 * h))
    };
    let d1 = central(FD_STEP)?;
    let d2 = central(0.5 * FD_STEP)?;
    let fd = (4.0 * d2 - d1) / 3.0;
    let exact = -(a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, -x)?;
    Ok(IdentityResidual::equality(
        "D25",
        point(&[("a", a), ("b", b), ("c", c), ("x", x)]),
        fd,
        exact,
        Tol::Rel(1e-6),
    ))
}
