//! Reference values of `log Γ`, `ψ` and `ψ₁` for `Re s > 0`.
//!
//! Upward recurrence moves the argument to `|s + n| >= min_modulus`, then the
//! Stirling series (and its first two derivatives) is summed. This path is
//! independent of the truncated Binet formulas in the parent module.

use num_complex::Complex;

use super::ComplexPoint;
use crate::error::{Error, Result};
use crate::real::Real;

/// Bernoulli numbers `B_2, B_4, …, B_32`.
const BERNOULLI_EVEN: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
];

/// Knobs for the reference evaluation.
#[derive(Clone, Debug)]
pub struct ReferenceConfig {
    /// Shift the argument until `|s + n|` reaches this modulus.
    pub min_modulus: f64,
    /// Number of Stirling terms (at most 15: one Bernoulli number is kept
    /// back for the truncation estimate).
    pub terms: usize,
    /// Largest shift tried before giving up on the precision target.
    pub max_modulus: f64,
}

impl Default for ReferenceConfig {
    fn default() -> Self {
        Self {
            min_modulus: 20.0,
            terms: 15,
            max_modulus: 1e4,
        }
    }
}

fn cx<T: Real>(s: ComplexPoint<T>) -> Complex<T> {
    Complex::new(s.sigma, s.t)
}

struct Shifted<T> {
    z: Complex<T>,
    steps: usize,
}

/// Smallest shift with `|s + n| >= modulus`, growing the modulus while the
/// truncation estimate misses the target.
fn plan<T: Real>(
    op: &'static str,
    s: ComplexPoint<T>,
    target: T,
    cfg: &ReferenceConfig,
    truncation: impl Fn(T, usize) -> T,
) -> Result<Shifted<T>> {
    if !(s.sigma > T::zero()) {
        return Err(Error::domain(op, format!("requires Re s > 0, got {}", s.sigma)));
    }
    if !(target > T::zero()) {
        return Err(Error::domain(op, "precision target must be positive"));
    }
    let terms = cfg.terms.min(BERNOULLI_EVEN.len() - 1).max(1);
    let mut modulus = T::lit(cfg.min_modulus);
    loop {
        let mut z = cx(s);
        let mut steps = 0usize;
        while z.norm() < modulus {
            z = z + T::one();
            steps += 1;
        }
        // Re z > 0, so sec(arg z / 2)^(2K+2) <= 2^(K+1).
        let err = truncation(z.norm(), terms);
        let lnz = z.norm().ln().max(T::one());
        let rounding = T::lit(2.0)
            * T::epsilon()
            * (T::lit(steps as f64) * (T::one() + lnz) + z.norm() * (lnz + T::one()));
        if err <= target && rounding <= target {
            return Ok(Shifted { z, steps });
        }
        if rounding > target || modulus.as_f64() >= cfg.max_modulus {
            return Err(Error::Budget {
                op,
                target: target.as_f64(),
                achieved: err.max(rounding).as_f64(),
                budget: terms,
            });
        }
        modulus = modulus * T::lit(2.0);
    }
}

fn bern<T: Real>(k: usize) -> T {
    T::lit(BERNOULLI_EVEN[k - 1])
}

fn sec_factor<T: Real>(terms: usize) -> T {
    T::lit(2.0).powi(terms as i32 + 1)
}

/// `log Γ(s)` to absolute accuracy `precision_target`.
pub fn reference_log_gamma<T: Real>(
    s: ComplexPoint<T>,
    precision_target: T,
    cfg: &ReferenceConfig,
) -> Result<Complex<T>> {
    let terms = cfg.terms.min(BERNOULLI_EVEN.len() - 1).max(1);
    let sh = plan("reference_log_gamma", s, precision_target, cfg, |r, k| {
        let k1 = (k + 1) as f64;
        bern::<T>(k + 1).abs() / (T::lit(2.0 * k1 * (2.0 * k1 - 1.0)) * r.powi(2 * k as i32 + 1))
            * sec_factor::<T>(k)
    })?;
    let z = sh.z;
    let half = T::lit(0.5);
    let ln_2pi = (T::lit(2.0) * T::PI()).ln();
    let mut acc = (z - half) * z.ln() - z + ln_2pi * half;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for k in 1..=terms {
        let kk = k as f64;
        acc = acc + pow * (bern::<T>(k) / T::lit(2.0 * kk * (2.0 * kk - 1.0)));
        pow = pow * inv2;
    }
    let mut w = cx(s);
    for _ in 0..sh.steps {
        acc = acc - w.ln();
        w = w + T::one();
    }
    Ok(acc)
}

/// `ψ(s)` to absolute accuracy `precision_target`.
pub fn reference_digamma<T: Real>(
    s: ComplexPoint<T>,
    precision_target: T,
    cfg: &ReferenceConfig,
) -> Result<Complex<T>> {
    let terms = cfg.terms.min(BERNOULLI_EVEN.len() - 1).max(1);
    let sh = plan("reference_digamma", s, precision_target, cfg, |r, k| {
        let k1 = (k + 1) as f64;
        bern::<T>(k + 1).abs() / (T::lit(2.0 * k1) * r.powi(2 * k as i32 + 2)) * sec_factor::<T>(k + 1)
    })?;
    let z = sh.z;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut acc = z.ln() - inv * T::lit(0.5);
    let mut pow = inv2;
    for k in 1..=terms {
        acc = acc - pow * (bern::<T>(k) / T::lit(2.0 * k as f64));
        pow = pow * inv2;
    }
    let mut w = cx(s);
    for _ in 0..sh.steps {
        acc = acc - w.inv();
        w = w + T::one();
    }
    Ok(acc)
}

/// `ψ₁(s)` to absolute accuracy `precision_target`.
pub fn reference_trigamma<T: Real>(
    s: ComplexPoint<T>,
    precision_target: T,
    cfg: &ReferenceConfig,
) -> Result<Complex<T>> {
    let terms = cfg.terms.min(BERNOULLI_EVEN.len() - 1).max(1);
    let sh = plan("reference_trigamma", s, precision_target, cfg, |r, k| {
        bern::<T>(k + 1).abs() / r.powi(2 * k as i32 + 3) * sec_factor::<T>(k + 2)
    })?;
    let z = sh.z;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut acc = inv + inv2 * T::lit(0.5);
    let mut pow = inv2 * inv;
    for k in 1..=terms {
        acc = acc + pow * bern::<T>(k);
        pow = pow * inv2;
    }
    let mut w = cx(s);
    for _ in 0..sh.steps {
        acc = acc + (w * w).inv();
        w = w + T::one();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(sigma: f64, t: f64) -> ComplexPoint<f64> {
        ComplexPoint::new(sigma, t)
    }

    #[test]
    fn gamma_one_and_two() {
        let cfg = ReferenceConfig::default();
        for s in [1.0, 2.0] {
            let z = reference_log_gamma(p(s, 0.0), 1e-13, &cfg).unwrap();
            assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-13);
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn frozen_high_precision_values() {
        let cfg = ReferenceConfig::default();
        let z = reference_log_gamma(p(0.5, 20.0), 1e-12, &cfg).unwrap();
        assert_abs_diff_eq!(z.re, -30.496_988_002_693_26, epsilon = 1e-11);
        assert_abs_diff_eq!(z.im, 39.916_729_108_473_33, epsilon = 1e-11);
        let z = reference_trigamma(p(0.611, 0.5), 1e-13, &cfg).unwrap();
        assert_abs_diff_eq!(z.re, 1.049_628_107_916_674_6, epsilon = 1e-12);
        assert_abs_diff_eq!(z.im, -1.873_060_851_363_580_6, epsilon = 1e-12);
        let z = reference_digamma(p(1.222, 5.0), 1e-13, &cfg).unwrap();
        assert_abs_diff_eq!(z.re, 1.618_180_897_425_315_6, epsilon = 1e-12);
    }

    #[test]
    fn unreachable_target_fails() {
        let cfg = ReferenceConfig::default();
        assert!(matches!(
            reference_log_gamma(p(1.0, 1.0), 1e-30, &cfg),
            Err(Error::Budget { .. })
        ));
        assert!(reference_log_gamma(p(-0.5, 1.0), 1e-10, &cfg).is_err());
        assert!(reference_log_gamma(p(0.5, 1.0), 0.0, &cfg).is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = ReferenceConfig::default();
        let a = reference_log_gamma(p(0.7, 3.3), 1e-12, &cfg).unwrap();
        let b = reference_log_gamma(p(0.7, 3.3), 1e-12, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
