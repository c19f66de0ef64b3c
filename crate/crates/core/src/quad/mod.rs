//! Quadrature engines and fractional-part integral transforms.
//!
//! [`integrate_finite`] is a globally adaptive Gauss–Kronrod 7/15 scheme.
//! Semi-infinite integrals whose integrand is a periodic factor times a
//! smooth decaying factor, `p({x/b}) · g(x)`, go through
//! [`integrate_periodic_split`]: one quadrature per period, then an
//! Euler–Maclaurin estimate of the remainder with a rigorous bound on what
//! that estimate leaves out.

mod kronrod;
mod periodic;

pub use kronrod::integrate_finite;
pub use periodic::{
    integrate_periodic_split, integrate_unit_split, lemma2_direct, lemma2_transform, Decay,
    PowerDecay, ProductDecay,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerances and work budget for the quadrature engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panels held by [`integrate_finite`].
    pub max_subdivisions: usize,
    /// Maximum number of periods summed before a semi-infinite integral gives up.
    pub tail_intervals_max: usize,
    /// Floor on the remainder bound at which period summation stops.
    pub tail_stop: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_subdivisions: 2000,
            tail_intervals_max: 1_000_000,
            tail_stop: 1e-14,
        }
    }
}

impl QuadConfig {
    /// Default configuration with a different relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadConfig {
            rel_tol,
            ..QuadConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::Config(format!(
                "tolerances must be positive (rel_tol={}, abs_tol={})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        if self.tail_intervals_max < 1 {
            return Err(Error::Config("tail_intervals_max must be at least 1".into()));
        }
        if !(self.tail_stop >= 0.0) {
            return Err(Error::Config(format!(
                "tail_stop must be non-negative, got {}",
                self.tail_stop
            )));
        }
        Ok(())
    }

    /// Tolerance target for a result of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of a definite integral with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl QuadResult {
    /// `factor · self`, with the error estimate scaled accordingly.
    pub fn scaled(self, factor: f64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            abs_err_est: self.abs_err_est * factor.abs(),
            ..self
        }
    }
}

/// Fractional part `{x}` and the periodic Bernoulli function `P₁(x) = {x} − 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracPart {
    pub frac: f64,
    pub p1: f64,
}

impl FracPart {
    pub fn of(x: f64) -> FracPart {
        let f = frac(x);
        FracPart { frac: f, p1: f - 0.5 }
    }
}

const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// `x − ⌊x⌋`, always in `[0, 1)`.
///
/// For tiny negative `x` the exact difference rounds to 1; the result is then
/// clamped to the largest double below 1.
pub fn frac(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        BELOW_ONE
    } else {
        r
    }
}

/// `P₁(x) = {x} − 1/2`.
pub fn p1(x: f64) -> f64 {
    frac(x) - 0.5
}
