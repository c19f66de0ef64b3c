//! Semi-infinite integrals of `p({x/b}) · g(x)` split at multiples of the period.

use super::{integrate_finite, QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::specfun::{hurwitz_unchecked, KahanSum};

/// A smooth, positive, convex factor decaying to zero at +∞.
///
/// The remainder bound used after truncation needs `|g′|` at the cut and,
/// when the periodic factor has non-zero mean, `∫_X^∞ g`.
pub trait Decay {
    fn value(&self, x: f64) -> f64;
    /// `|g′(x)|`.
    fn slope(&self, x: f64) -> f64;
    /// `∫_x^∞ g`, when available in closed form.
    fn tail_integral(&self, x: f64) -> Option<f64>;
}

/// `g(x) = scale · (x + shift)^(−power)` with `power > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDecay {
    pub scale: f64,
    pub shift: f64,
    pub power: f64,
}

impl PowerDecay {
    pub fn new(shift: f64, power: f64) -> Self {
        PowerDecay {
            scale: 1.0,
            shift,
            power,
        }
    }
}

impl Decay for PowerDecay {
    fn value(&self, x: f64) -> f64 {
        self.scale * (x + self.shift).powf(-self.power)
    }
    fn slope(&self, x: f64) -> f64 {
        (self.power * self.scale * (x + self.shift).powf(-self.power - 1.0)).abs()
    }
    fn tail_integral(&self, x: f64) -> Option<f64> {
        Some(self.scale * (x + self.shift).powf(1.0 - self.power) / (self.power - 1.0))
    }
}

/// `g(x) = (x + a)^(−1) · (x + b)^(−power)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductDecay {
    pub a: f64,
    pub b: f64,
    pub power: f64,
}

impl Decay for ProductDecay {
    fn value(&self, x: f64) -> f64 {
        1.0 / ((x + self.a) * (x + self.b).powf(self.power))
    }
    fn slope(&self, x: f64) -> f64 {
        self.value(x) * (1.0 / (x + self.a) + self.power / (x + self.b))
    }
    fn tail_integral(&self, _x: f64) -> Option<f64> {
        None
    }
}

/// Moments of the periodic factor over one period (in the unit variable).
struct PeriodStats {
    /// μ = ∫₀¹ p
    mean: f64,
    /// ∫₀¹ (1 − t)(p(t) − μ) dt
    h_bar: f64,
    /// Upper bound on sup |p − μ|, from sampling with a safety margin.
    dev: f64,
    n_evals: usize,
}

fn period_stats<P: Fn(f64) -> f64>(p: &P, cfg: &QuadConfig) -> Result<PeriodStats> {
    let tight = QuadConfig {
        rel_tol: 1e-14,
        abs_tol: 1e-16,
        ..*cfg
    };
    let mean = integrate_finite(p, 0.0, 1.0, &tight)?;
    let first = integrate_finite(|t| t * p(t), 0.0, 1.0, &tight)?;
    let mu = mean.value;
    let h_bar = 0.5 * mu - first.value;
    let mut dev: f64 = 0.0;
    const SAMPLES: usize = 256;
    for i in 0..=SAMPLES {
        let t = (i as f64 / SAMPLES as f64).min(1.0 - f64::EPSILON);
        dev = dev.max((p(t) - mu).abs());
    }
    Ok(PeriodStats {
        mean: mu,
        h_bar,
        dev: 1.25 * dev,
        n_evals: mean.n_evals + first.n_evals + SAMPLES + 1,
    })
}

/// `∫_start^∞ p({x/period}) · g(x) dx`.
///
/// Each period is integrated separately, so `p` may jump at multiples of the
/// period. After period ℓ the remainder from `X = (ℓ+1)·period` is estimated
/// as `μ ∫_X^∞ g + period · H̄ · g(X)` and bounded by `period² · D · |g′(X)|`,
/// where `D` bounds `|p − μ|`. Summation stops once that bound falls below
/// `max(tail_stop, tolerance/10)`.
pub fn integrate_periodic_split<P, D>(
    p: P,
    decay: &D,
    start: f64,
    period: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    P: Fn(f64) -> f64,
    D: Decay + ?Sized,
{
    cfg.validate()?;
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::Config(format!("period must be positive, got {period}")));
    }
    if !start.is_finite() {
        return Err(Error::Config(format!("start must be finite, got {start}")));
    }
    let stats = period_stats(&p, cfg)?;
    let mean_is_zero = stats.mean.abs() <= 1e-14 * stats.dev.max(f64::MIN_POSITIVE);
    if !mean_is_zero && decay.tail_integral(start).is_none() {
        return Err(Error::Config(
            "periodic factor has non-zero mean but the decay has no closed-form tail".into(),
        ));
    }
    let tail_estimate = |x: f64| -> f64 {
        let bulk = if mean_is_zero {
            0.0
        } else {
            stats.mean * decay.tail_integral(x).unwrap_or(0.0)
        };
        bulk + period * stats.h_bar * decay.value(x)
    };
    let tail_bound = |x: f64| period * period * stats.dev * decay.slope(x);

    let piece_cfg = QuadConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    };

    let first_cell = (start / period).floor();
    let mut ell = first_cell;
    let mut y0 = ((start / period) - first_cell).max(0.0);
    let mut acc = KahanSum::default();
    let mut err = KahanSum::default();
    let mut n_evals = stats.n_evals;
    let mut pieces = 0usize;
    let mut capped = false;

    let (tail, bound) = loop {
        let base = ell;
        let piece = integrate_finite(
            |y| p(y) * decay.value(period * (base + y)) * period,
            y0,
            1.0,
            &piece_cfg,
        )?;
        acc.add(piece.value);
        err.add(piece.abs_err_est);
        n_evals += piece.n_evals;
        pieces += 1;
        y0 = 0.0;
        ell += 1.0;

        let x_cut = period * ell;
        let est = tail_estimate(x_cut);
        let bound = tail_bound(x_cut);
        if !est.is_finite() || !bound.is_finite() {
            return Err(Error::NonFinite {
                op: "integrate_periodic_split",
                at: x_cut,
            });
        }
        let target = cfg.tail_stop.max(0.1 * cfg.target(acc.value() + est));
        if bound <= target {
            break (est, bound);
        }
        if pieces >= cfg.tail_intervals_max {
            capped = true;
            break (est, bound);
        }
    };

    let value = acc.value() + tail;
    let abs_err_est = err.value() + bound + f64::EPSILON * tail.abs();
    Ok(QuadResult {
        value,
        abs_err_est,
        n_evals,
        converged: !capped && abs_err_est <= cfg.target(value),
    })
}

/// `∫_start^∞ p({x}) · g(x) dx`, one unit interval at a time.
pub fn integrate_unit_split<P, D>(p: P, decay: &D, start: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    P: Fn(f64) -> f64,
    D: Decay + ?Sized,
{
    integrate_periodic_split(p, decay, start, 1.0, cfg)
}

fn check_lemma2_args(b: f64, c: f64, lambda: f64) -> Result<()> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Config(format!("need b > 0, got {b}")));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::Config(format!("need c >= 0, got {c}")));
    }
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::Config(format!("need lambda > 1, got {lambda}")));
    }
    Ok(())
}

/// Both sides of
/// `∫₀^∞ f({x/b}) (x+c)^(−λ) dx = b^(1−λ) ∫₀¹ f(y) ζ(λ, y + c/b) dy`.
///
/// The left side is computed after substituting `x = b·v`, which turns it
/// into a unit-period integral; the right side by finite quadrature.
pub fn lemma2_transform<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    c: f64,
    lambda: f64,
    cfg: &QuadConfig,
) -> Result<(QuadResult, QuadResult)> {
    check_lemma2_args(b, c, lambda)?;
    let scale = b.powf(1.0 - lambda);
    let shift = c / b;
    let lhs = integrate_unit_split(
        &f,
        &PowerDecay {
            scale,
            shift,
            power: lambda,
        },
        0.0,
        cfg,
    )?;
    let rhs = integrate_finite(
        |y| scale * f(y) * hurwitz_unchecked(lambda, y + shift),
        0.0,
        1.0,
        cfg,
    )?;
    Ok((lhs, rhs))
}

/// The left side of [`lemma2_transform`] evaluated without substitution,
/// splitting `[0, ∞)` at multiples of `b`.
pub fn lemma2_direct<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    c: f64,
    lambda: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_lemma2_args(b, c, lambda)?;
    integrate_periodic_split(f, &PowerDecay::new(c, lambda), 0.0, b, cfg)
}
