//! Identity residuals and verification reports.

use serde::{Deserialize, Serialize};

/// How a check's tolerance scales with the values being compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tol {
    /// `rel · max(|lhs|, |rhs|)`.
    Rel(f64),
    /// A fixed absolute tolerance.
    Abs(f64),
    /// `max(rel · max(|lhs|, |rhs|), abs)`.
    RelAbs { rel: f64, abs: f64 },
}

impl Tol {
    fn resolve(self, scale: f64) -> f64 {
        match self {
            Tol::Rel(r) => r * scale,
            Tol::Abs(a) => a,
            Tol::RelAbs { rel, abs } => (rel * scale).max(abs),
        }
    }
}

/// One evaluated identity or inequality.
///
/// For equalities `residual = lhs − rhs`. For inequalities `lhs ≤ rhs` the
/// residual is `min(0, rhs − lhs)`, so a satisfied inequality has residual 0.
/// In both cases `pass ⇔ |residual| ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub identity: String,
    pub point: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip)]
    relative: bool,
}

/// Formats a parameter record as `k1=v1;k2=v2` using shortest round-trip numbers.
pub fn point(fields: &[(&str, f64)]) -> String {
    fields
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

impl IdentityResidual {
    pub fn equality(identity: impl Into<String>, point: String, lhs: f64, rhs: f64, tol: Tol) -> Self {
        Self::build(identity.into(), point, lhs, rhs, lhs - rhs, tol)
    }

    /// Checks `lhs ≤ rhs`.
    pub fn inequality(identity: impl Into<String>, point: String, lhs: f64, rhs: f64, tol: Tol) -> Self {
        let slack = rhs - lhs;
        let residual = if slack.is_nan() { f64::NAN } else { slack.min(0.0) };
        Self::build(identity.into(), point, lhs, rhs, residual, tol)
    }

    fn build(identity: String, point: String, lhs: f64, rhs: f64, residual: f64, tol: Tol) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        let tolerance = tol.resolve(scale);
        IdentityResidual {
            identity,
            point,
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual.abs() <= tolerance,
            relative: !matches!(tol, Tol::Abs(_)),
        }
    }

    /// Replaces the tolerance by `tol`, read as relative for checks that were
    /// relative and absolute otherwise, and re-evaluates `pass`.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = if self.relative {
            tol * self.lhs.abs().max(self.rhs.abs())
        } else {
            tol
        };
        self.pass = self.residual.abs() <= self.tolerance;
        self
    }

    /// `|residual| / max(|lhs|, |rhs|)`, or the absolute residual when both sides vanish.
    pub fn relative_residual(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale > 0.0 {
            self.residual.abs() / scale
        } else {
            self.residual.abs()
        }
    }
}

/// An ordered collection of checks with pass/fail counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<IdentityResidual>,
    pub n_pass: usize,
    pub n_fail: usize,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<IdentityResidual>, wall_time_ms: u64) -> Self {
        let n_pass = checks.iter().filter(|c| c.pass).count();
        let n_fail = checks.len() - n_pass;
        VerificationReport {
            suite: suite.into(),
            checks,
            n_pass,
            n_fail,
            wall_time_ms,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.n_fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResidual> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Applies [`IdentityResidual::with_tolerance`] to every check.
    pub fn with_tolerance(self, tol: f64) -> Self {
        let checks = self.checks.into_iter().map(|c| c.with_tolerance(tol)).collect();
        VerificationReport::new(self.suite, checks, self.wall_time_ms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
