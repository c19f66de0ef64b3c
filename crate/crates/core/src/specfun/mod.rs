//! Double-precision special-function primitives.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`ln_gamma`] | ln Γ(x), x > 0 |
//! | [`digamma`] | ψ(x) = Γ′(x)/Γ(x) |
//! | [`polygamma`] | ψ⁽ᵏ⁾(x) for k ≥ −1 (k = −1 is ln Γ) |
//! | [`hurwitz_zeta`] | ζ(s, a) = Σ (a+k)^(−s), s > 1 |
//! | [`riemann_zeta`] | ζ(s) = ζ(s, 1) |
//! | [`upper_incomplete_gamma_int`] | Γ(n+1, x) for integer n |
//! | [`gamma_zero`] | Γ(0, x) = E₁(x) = −Ei(−x) |
//!
//! Log-gamma and digamma are evaluated internally in double-double and
//! rounded, so relative accuracy holds right up to the zeros of ln Γ.

mod gamma;
mod incgamma;
mod zeta;

use std::sync::OnceLock;

pub use gamma::{digamma, ln_gamma, polygamma};
pub use incgamma::{gamma_zero, upper_incomplete_gamma_int};
pub use zeta::{hurwitz_zeta, riemann_zeta};

pub(crate) use gamma::{polygamma_dd, LN_SQRT_PI};
pub(crate) use incgamma::gamma_zero_series_tail;
pub(crate) use zeta::hurwitz_unchecked;

/// Euler's constant γ = −ψ(1).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest k held in the ζ(k) table.
pub const K_MAX: usize = 64;

/// Bernoulli numbers B₂ … B₃₀ as exact rationals (numerator, denominator).
pub(crate) const BERNOULLI_2J: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Precomputed constants shared by the evaluation routines.
#[derive(Debug, Clone)]
pub struct SpecialConstants {
    pub euler_gamma: f64,
    pub ln_pi: f64,
    pub ln_2: f64,
    zeta: [f64; K_MAX + 1],
    zeta_minus_one: [f64; K_MAX + 1],
}

impl SpecialConstants {
    /// The process-wide table, built on first use.
    pub fn get() -> &'static SpecialConstants {
        static TABLE: OnceLock<SpecialConstants> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut zeta = [f64::NAN; K_MAX + 1];
            let mut zeta_minus_one = [f64::NAN; K_MAX + 1];
            for k in 2..=K_MAX {
                zeta[k] = hurwitz_unchecked(k as f64, 1.0);
                // ζ(k, 2) is ζ(k) − 1 without the cancellation.
                zeta_minus_one[k] = hurwitz_unchecked(k as f64, 2.0);
            }
            SpecialConstants {
                euler_gamma: EULER_GAMMA,
                ln_pi: std::f64::consts::PI.ln(),
                ln_2: std::f64::consts::LN_2,
                zeta,
                zeta_minus_one,
            }
        })
    }

    /// ζ(k) for 2 ≤ k ≤ K_MAX.
    pub fn zeta(&self, k: usize) -> Option<f64> {
        (2..=K_MAX).contains(&k).then(|| self.zeta[k])
    }

    /// ζ(k) − 1 for 2 ≤ k ≤ K_MAX, accurate to full relative precision.
    pub fn zeta_minus_one(&self, k: usize) -> Option<f64> {
        (2..=K_MAX).contains(&k).then(|| self.zeta_minus_one[k])
    }
}

/// n! as f64 (exact up to 22!).
pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_agree_with_digamma_and_zeta() {
        let c = SpecialConstants::get();
        assert!((c.euler_gamma + digamma(1.0).unwrap()).abs() <= 1e-14);
        for k in 2..=K_MAX {
            let z = riemann_zeta(k as f64).unwrap();
            assert!(((c.zeta(k).unwrap() - z) / z).abs() <= 1e-14, "k={k}");
            let zm1 = c.zeta_minus_one(k).unwrap();
            assert!((zm1 - (z - 1.0)).abs() <= 1e-15, "k={k}");
        }
        assert!(c.zeta(1).is_none());
        assert!(c.zeta(K_MAX + 1).is_none());
    }

    #[test]
    fn table_is_shared_across_threads() {
        let ptrs: Vec<usize> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..8)
                .map(|_| s.spawn(|| SpecialConstants::get() as *const _ as usize))
                .collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(ptrs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn kahan_sum_recovers_small_terms() {
        let mut s = KahanSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-13).abs() < 1e-24);
    }
}
