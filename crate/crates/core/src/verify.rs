//! Named verification suites.
//!
//! Each suite evaluates a fixed grid of identity residuals and returns a
//! [`VerificationReport`] with the checks in grid order. Default tolerances
//! are built into every check; [`run_suite`] can override them uniformly.

use std::time::Instant;

use crate::delta::{
    asymptotic_leading, delta, delta_deriv, delta_deriv_at_one, delta_deriv_at_one_direct,
    delta_deriv_half_integer, frac_rep_prop2, integral_delta, integral_delta_squared, recurrence_residual, Route,
};
use crate::error::{Error, Result};
use crate::hyp2f1::{
    derivative_rule_residual, hyp_identity_residual, log_branch_c1, log_branch_c2, series, HypIdentity,
};
use crate::quad::{integrate_unit_split, p1, PowerDecay, QuadConfig};
use crate::report::{point, IdentityResidual, Tol, VerificationReport};
use crate::specfun::{factorial, hurwitz_zeta, polygamma, riemann_zeta, EULER_GAMMA};

pub const SUITES: [&str; 8] = [
    "routes",
    "recurrence",
    "prop2",
    "prop4",
    "appendix",
    "asymptotic",
    "halfint",
    "specfun",
];

/// The x grid shared by the route-agreement and recurrence suites.
pub const ROUTE_GRID: [f64; 9] = [-0.9, -0.5, -0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0];

/// Runs the suite `name`; `tol`, when given, replaces every check's tolerance
/// (relative for relative checks, absolute otherwise).
pub fn run_suite(name: &str, tol: Option<f64>) -> Result<VerificationReport> {
    let start = Instant::now();
    let cfg = QuadConfig::default();
    let checks = match name {
        "routes" => routes(&cfg)?,
        "recurrence" => recurrence(&cfg)?,
        "prop2" => prop2(&cfg)?,
        "prop4" => prop4(&cfg)?,
        "appendix" => appendix()?,
        "asymptotic" => asymptotic(&cfg)?,
        "halfint" => halfint(&cfg)?,
        "specfun" => specfun(&cfg)?,
        _ => {
            return Err(Error::Config(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let report = VerificationReport::new(name, checks, start.elapsed().as_millis() as u64);
    Ok(match tol {
        Some(t) => report.with_tolerance(t),
        None => report,
    })
}

fn mx(m: u32, x: f64) -> String {
    point(&[("m", m as f64), ("x", x)])
}

/// Routes that apply at `x`, excluding the approximate asymptotic form.
pub fn applicable_routes(x: f64) -> Vec<Route> {
    Route::ALL
        .iter()
        .copied()
        .filter(|r| *r != Route::Asymptotic && r.supports(x))
        .collect()
}

fn routes(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    let agree = Tol::RelAbs { rel: 1e-8, abs: 1e-10 };
    for m in 1..=8 {
        for &x in &ROUTE_GRID {
            let results = applicable_routes(x)
                .into_iter()
                .map(|r| delta_deriv(m, x, r, cfg))
                .collect::<Result<Vec<_>>>()?;
            for (i, a) in results.iter().enumerate() {
                for b in &results[i + 1..] {
                    out.push(IdentityResidual::equality(
                        format!("agree[{}~{}]", a.route, b.route),
                        mx(m, x),
                        a.value,
                        b.value,
                        agree,
                    ));
                }
            }
            // error estimates must cover the observed deviation from CLOSED to within a factor 10
            let closed = results[0];
            for r in &results[1..] {
                let seen = (r.value - closed.value).abs();
                let claimed = 10.0 * (r.abs_err_est + closed.abs_err_est) + 4.0 * f64::EPSILON * closed.value.abs();
                out.push(IdentityResidual::inequality(
                    format!("err_est[{}]", r.route),
                    mx(m, x),
                    seen,
                    claimed,
                    Tol::Abs(0.0),
                ));
            }
        }
    }

    out.push(IdentityResidual::equality(
        "delta_at_zero",
        point(&[("x", 0.0)]),
        delta(0.0)?,
        -EULER_GAMMA,
        Tol::Rel(1e-11),
    ));
    for m in 1..=8 {
        let exact = if m % 2 == 1 { 1.0 } else { -1.0 } * factorial(m) * riemann_zeta(m as f64 + 1.0)? / (m as f64 + 1.0);
        for r in [Route::Closed, Route::Hurwitz, Route::Hyp, Route::Series, Route::Laplace] {
            let v = delta_deriv(m, 0.0, r, cfg)?;
            out.push(IdentityResidual::equality(
                format!("at_zero[{r}]"),
                mx(m, 0.0),
                v.value,
                exact,
                Tol::Rel(1e-11),
            ));
        }
    }
    let pi2 = std::f64::consts::PI.powi(2);
    out.push(IdentityResidual::equality(
        "first_at_one",
        mx(1, 1.0),
        delta_deriv(1, 1.0, Route::Closed, cfg)?.value,
        1.0 - EULER_GAMMA,
        Tol::Rel(1e-11),
    ));
    out.push(IdentityResidual::equality(
        "second_at_one",
        mx(2, 1.0),
        delta_deriv(2, 1.0, Route::Closed, cfg)?.value,
        pi2 / 6.0 - 3.0 + 2.0 * EULER_GAMMA,
        Tol::Rel(1e-11),
    ));

    let h = 1e-5;
    for m in 1..=4 {
        for &x in &[0.5, 1.0, 3.0] {
            let up = delta_deriv(m, x + h, Route::Closed, cfg)?.value;
            let down = delta_deriv(m, x - h, Route::Closed, cfg)?.value;
            out.push(IdentityResidual::equality(
                "chain",
                mx(m, x),
                (up - down) / (2.0 * h),
                delta_deriv(m + 1, x, Route::Closed, cfg)?.value,
                Tol::Rel(1e-5),
            ));
        }
    }

    for m in 1..=4 {
        for i in 0..=11 {
            let ax = 0.01 + 0.01 * i as f64;
            for x in [-ax, ax] {
                out.push(IdentityResidual::equality(
                    "taylor",
                    mx(m, x),
                    delta_deriv(m, x, Route::Series, cfg)?.value,
                    delta_deriv(m, x, Route::Closed, cfg)?.value,
                    Tol::Rel(1e-10),
                ));
            }
        }
    }
    Ok(out)
}

fn recurrence(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for m in 2..=10 {
        for &x in &ROUTE_GRID {
            out.push(recurrence_residual(m, x, Route::Closed, cfg)?);
        }
    }
    for (m, x) in [(5, 3.0), (3, 0.5), (8, -0.5)] {
        out.push(recurrence_residual(m, x, Route::Hurwitz, cfg)?);
        out.push(recurrence_residual(m, x, Route::Hyp, cfg)?);
    }
    Ok(out)
}

fn prop2(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for m in 1..=4 {
        for k in 1..=5 {
            let (l, r) = frac_rep_prop2(m, k, cfg)?;
            let combined = l.abs_err_est + r.abs_err_est;
            let pt = point(&[("m", m as f64), ("k", k as f64)]);
            out.push(IdentityResidual::equality("frac_rep", pt.clone(), l.value, r.value, Tol::Abs(combined)));
            out.push(IdentityResidual::inequality(
                "frac_rep_err_est",
                pt,
                combined,
                1e-6,
                Tol::Abs(0.0),
            ));
        }
    }
    for m in 1..=8 {
        let closed = delta_deriv(m, 1.0, Route::Closed, cfg)?.value;
        out.push(IdentityResidual::equality(
            "at_one",
            mx(m, 1.0),
            delta_deriv_at_one(m)?,
            closed,
            Tol::Rel(1e-11),
        ));
        out.push(IdentityResidual::equality(
            "at_one_direct",
            mx(m, 1.0),
            delta_deriv_at_one_direct(m)?,
            closed,
            Tol::Rel(1e-11),
        ));
    }
    Ok(out)
}

fn prop4(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let (q, s, e) = integral_delta(cfg)?;
    let (q2, s2) = integral_delta_squared(cfg)?;
    let tol = Tol::Abs(1e-8);
    Ok(vec![
        IdentityResidual::equality("int_delta[quad~series]", String::new(), q.value, s, tol),
        IdentityResidual::equality("int_delta[quad~ei]", String::new(), q.value, e.value, tol),
        IdentityResidual::equality("int_delta[series~ei]", String::new(), s, e.value, tol),
        IdentityResidual::equality("int_delta_sq[quad~series]", String::new(), q2.value, s2, tol),
        IdentityResidual::inequality("cauchy_schwarz", String::new(), q.value * q.value, q2.value, Tol::Abs(0.0)),
    ])
}

fn appendix() -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    let xs: Vec<f64> = (0..9).map(|i| 2.5 * i as f64).collect();
    for id in [
        HypIdentity::A1,
        HypIdentity::A2,
        HypIdentity::A2R,
        HypIdentity::A2I,
        HypIdentity::A4,
        HypIdentity::A5,
        HypIdentity::T26,
        HypIdentity::D25,
    ] {
        for n in 0..=8 {
            for &x in &xs {
                if id == HypIdentity::A5 && x == 0.0 {
                    continue;
                }
                out.push(hyp_identity_residual(id, n, x)?);
            }
        }
    }
    for id in [HypIdentity::A6, HypIdentity::A6B] {
        for n in 0..=6 {
            for i in 0..=10 {
                out.push(hyp_identity_residual(id, n, i as f64 / 10.0)?);
            }
        }
    }
    for (a, b, c) in [(1.0, 2.0, 5.0), (2.0, 2.0, 3.0), (1.0, 4.0, 6.0)] {
        for x in [0.5, 2.0] {
            out.push(derivative_rule_residual(a, b, c, x)?);
        }
    }
    // the series and the logarithmic expansions meet at z = 0.9
    for n in 0..=6 {
        let y = n as f64 + 1.0;
        let z = 0.9;
        let pt = point(&[("y", y), ("z", z)]);
        out.push(IdentityResidual::equality(
            "near_one[c-b=1]",
            pt.clone(),
            series(1.0, y, y + 1.0, z)?.0,
            log_branch_c1(y, z)?,
            Tol::Rel(1e-10),
        ));
        out.push(IdentityResidual::equality(
            "near_one[c-b=2]",
            pt,
            series(1.0, y, y + 2.0, z)?.0,
            log_branch_c2(y, z)?,
            Tol::Rel(1e-10),
        ));
    }
    Ok(out)
}

fn asymptotic(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for m in 1..=4 {
        let mut prev: Option<f64> = None;
        for &x in &[1e2, 1e3, 1e4] {
            let exact = delta_deriv(m, x, Route::Closed, cfg)?.value;
            let gap = (exact / asymptotic_leading(m, x, false)? - 1.0).abs();
            if let Some(p) = prev {
                out.push(IdentityResidual::inequality("gap_shrinks", mx(m, x), gap, p, Tol::Abs(0.0)));
            }
            prev = Some(gap);
            let refined_gap = (exact / asymptotic_leading(m, x, true)? - 1.0).abs();
            out.push(IdentityResidual::inequality("refined_closer", mx(m, x), refined_gap, gap, Tol::Abs(0.0)));
        }
        out.push(IdentityResidual::inequality(
            "gap_at_1e4",
            mx(m, 1e4),
            prev.unwrap_or(f64::NAN),
            5e-3,
            Tol::Abs(0.0),
        ));
    }
    Ok(out)
}

fn halfint(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    (1..=10)
        .map(|m| {
            Ok(IdentityResidual::equality(
                "half_integer",
                mx(m, -0.5),
                delta_deriv_half_integer(m)?,
                delta_deriv(m, -0.5, Route::Closed, cfg)?.value,
                Tol::Rel(1e-10),
            ))
        })
        .collect()
}

fn specfun(cfg: &QuadConfig) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for s in [1.5, 2.0, 3.25, 10.0] {
        for a in [0.1, 0.5, 1.0, 2.5, 7.0] {
            let z = hurwitz_zeta(s, a)?;
            out.push(IdentityResidual::equality(
                "telescoping",
                point(&[("s", s), ("a", a)]),
                z - hurwitz_zeta(s, a + 1.0)?,
                a.powf(-s),
                Tol::Abs(1e-13 * z.abs()),
            ));
        }
    }
    for j in 0..=6 {
        for x in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let up = polygamma(j, x + 1.0)?;
            let here = polygamma(j, x)?;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let jump = sign * factorial(j as u32) / x.powi(j + 1);
            let scale = up.abs().max(here.abs()).max(jump.abs());
            out.push(IdentityResidual::equality(
                "functional",
                point(&[("j", j as f64), ("x", x)]),
                up - here,
                jump,
                Tol::Abs(1e-12 * scale),
            ));
        }
    }
    for n in 1..=8 {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let rhs = sign * factorial(n) * (2f64.powi(n as i32 + 1) - 1.0) * riemann_zeta(n as f64 + 1.0)?;
        out.push(IdentityResidual::equality(
            "half_argument",
            point(&[("n", n as f64)]),
            polygamma(n as i32, 0.5)?,
            rhs,
            Tol::Rel(1e-12),
        ));
    }
    let h = 1e-5;
    for j in 0..=4 {
        for x in [0.5, 1.0, 2.0] {
            let fd = (polygamma(j, x + h)? - polygamma(j, x - h)?) / (2.0 * h);
            out.push(IdentityResidual::equality(
                "polygamma_chain",
                point(&[("j", j as f64), ("x", x)]),
                fd,
                polygamma(j + 1, x)?,
                Tol::Rel(1e-6),
            ));
        }
    }
    for s in [2.0, 3.0, 5.0] {
        for a in [1.0, 1.5, 3.0] {
            let q = integrate_unit_split(p1, &PowerDecay::new(a, s + 1.0), 0.0, cfg)?;
            let rep = a.powf(-s) / 2.0 + a.powf(1.0 - s) / (s - 1.0) - s * q.value;
            out.push(IdentityResidual::equality(
                "p1_representation",
                point(&[("s", s), ("a", a)]),
                rep,
                hurwitz_zeta(s, a)?,
                Tol::Abs(1e-9),
            ));
        }
        let q = integrate_unit_split(p1, &PowerDecay::new(0.0, s + 1.0), 1.0, cfg)?;
        out.push(IdentityResidual::equality(
            "p1_riemann",
            point(&[("s", s)]),
            1.0 / (s - 1.0) + 0.5 - s * q.value,
            riemann_zeta(s)?,
            Tol::Abs(1e-9),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(run_suite("nosuch", None), Err(Error::Config(_))));
    }

    #[test]
    fn applicable_routes_follow_domains() {
        assert_eq!(applicable_routes(-0.5).len(), 5);
        assert!(!applicable_routes(-0.5).contains(&Route::Laplace));
        assert!(applicable_routes(0.0).contains(&Route::Laplace));
        assert!(!applicable_routes(0.0).contains(&Route::Recurrence));
        assert!(!applicable_routes(2.0).contains(&Route::Series));
    }

    #[test]
    fn small_suites_pass() {
        for name in ["halfint", "prop4", "asymptotic"] {
            let r = run_suite(name, None).unwrap();
            assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
            assert_eq!(r.suite, name);
        }
    }

    #[test]
    fn override_rescales_tolerances() {
        let r = run_suite("halfint", Some(1e-30)).unwrap();
        for c in &r.checks {
            assert_eq!(c.tolerance, 1e-30 * c.lhs.abs().max(c.rhs.abs()));
        }
        assert!(r.n_fail > 0);
    }
}
