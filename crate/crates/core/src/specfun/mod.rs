//! Certified approximations of `Im log Γ`, `Re ψ` and `ψ₁` in the right
//! half-plane.
//!
//! Each approximation is the truncated Binet expansion together with an
//! explicit remainder radius; the true value lies in
//! `[value - remainder_radius, value + remainder_radius]` for every `s` with
//! `Re s > 0`. The [`reference`] submodule is an independent high-precision
//! route (recurrence plus Stirling series) used to check those radii.

mod binet;
mod grid;
mod reference;

pub use binet::{binet_kernel_checks, BinetCheck, BinetKernel, BinetReport};
pub use grid::{
    certify_grid, check_point, lemma_sigmas, linear_heights, GridCheck, SpecFunction, REFERENCE_PRECISION,
};
pub use reference::{
    reference_digamma, reference_log_gamma, reference_trigamma, ReferenceConfig,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{within_radius, Real};

/// A point `s = sigma + i t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint<T> {
    pub sigma: T,
    pub t: T,
}

impl<T: Real> ComplexPoint<T> {
    pub fn new(sigma: T, t: T) -> Self {
        Self { sigma, t }
    }

    /// `|s|²`
    #[inline]
    pub fn norm_sqr(&self) -> T {
        self.sigma * self.sigma + self.t * self.t
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.sigma.hypot(self.t)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.sigma, -self.t)
    }

    fn check(&self, op: &'static str) -> Result<()> {
        if self.sigma > T::zero() && self.t.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(
                op,
                format!("requires Re s > 0, got s = {} + {}i", self.sigma, self.t),
            ))
        }
    }
}

/// Approximate value with a certified remainder radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecFunResult<T> {
    pub value: T,
    pub remainder_radius: T,
}

impl<T: Real> SpecFunResult<T> {
    pub fn lower(&self) -> T {
        self.value - self.remainder_radius
    }

    pub fn upper(&self) -> T {
        self.value + self.remainder_radius
    }

    /// Whether `exact` falls inside the certified enclosure (with rounding slack).
    pub fn encloses(&self, exact: T) -> bool {
        within_radius(self.value, exact, self.remainder_radius)
    }
}

/// Remainder radius of [`im_log_gamma`]: `1/(360|s|³) + 1/(1022 σ |s|³)`.
pub fn log_gamma_radius<T: Real>(s: ComplexPoint<T>) -> T {
    let n3 = s.norm().powi(3);
    T::one() / (T::lit(360.0) * n3) + T::one() / (T::lit(1022.0) * s.sigma * n3)
}

/// Remainder radius of [`re_digamma`]: `1/(120 σ |s|³)`.
pub fn digamma_radius<T: Real>(s: ComplexPoint<T>) -> T {
    T::one() / (T::lit(120.0) * s.sigma * s.norm().powi(3))
}

/// Remainder radius shared by both parts of [`trigamma`]:
/// `1/(6|s|³) + 1/(23 σ |s|³)`.
pub fn trigamma_radius<T: Real>(s: ComplexPoint<T>) -> T {
    let n3 = s.norm().powi(3);
    T::one() / (T::lit(6.0) * n3) + T::one() / (T::lit(23.0) * s.sigma * n3)
}

/// `Im log Γ(s)` on the continuous branch that vanishes on the positive real
/// axis.
pub fn im_log_gamma<T: Real>(s: ComplexPoint<T>) -> Result<SpecFunResult<T>> {
    s.check("im_log_gamma")?;
    let (sigma, t) = (s.sigma, s.t);
    let r2 = s.norm_sqr();
    let half = T::lit(0.5);
    let value = half * t * r2.ln() + (sigma - half) * t.atan2(sigma)
        - t
        - t / (T::lit(12.0) * r2);
    Ok(SpecFunResult {
        value,
        remainder_radius: log_gamma_radius(s),
    })
}

/// `Re ψ(s)`.
pub fn re_digamma<T: Real>(s: ComplexPoint<T>) -> Result<SpecFunResult<T>> {
    s.check("re_digamma")?;
    let (sigma, t) = (s.sigma, s.t);
    let r2 = s.norm_sqr();
    let half = T::lit(0.5);
    let value = half * r2.ln()
        - sigma / (T::lit(2.0) * r2)
        - (sigma * sigma - t * t) / (T::lit(12.0) * r2 * r2);
    Ok(SpecFunResult {
        value,
        remainder_radius: digamma_radius(s),
    })
}

/// `(Re ψ₁(s), Im ψ₁(s))`, from `ψ₁(s) ≈ 1/s + 1/(2s²)`.
pub fn trigamma<T: Real>(s: ComplexPoint<T>) -> Result<(SpecFunResult<T>, SpecFunResult<T>)> {
    s.check("trigamma")?;
    let (sigma, t) = (s.sigma, s.t);
    let r2 = s.norm_sqr();
    let r4 = r2 * r2;
    let radius = trigamma_radius(s);
    let re = sigma / r2 + (sigma * sigma - t * t) / (T::lit(2.0) * r4);
    // Im(1/s) = -t/|s|², Im(1/(2s²)) = -σt/|s|⁴
    let im = -t / r2 - sigma * t / r4;
    Ok((
        SpecFunResult {
            value: re,
            remainder_radius: radius,
        },
        SpecFunResult {
            value: im,
            remainder_radius: radius,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn p(sigma: f64, t: f64) -> ComplexPoint<f64> {
        ComplexPoint::new(sigma, t)
    }

    #[test]
    fn real_axis_values() {
        let r = im_log_gamma(p(3.0, 0.0)).unwrap();
        assert_eq!(r.value, 0.0);
        let (_, im) = trigamma(p(2.5, 0.0)).unwrap();
        assert_eq!(im.value, 0.0);
    }

    #[test]
    fn known_values_inside_radius() {
        // log Γ(1+i) = -0.650923199301856 - 0.301640320467533i
        let r = im_log_gamma(p(1.0, 1.0)).unwrap();
        assert!(r.encloses(-0.301_640_320_467_533_2));
        assert_abs_diff_eq!(r.value, -0.30164, epsilon = 5e-3);

        // ψ(1) = -γ
        let r = re_digamma(p(1.0, 0.0)).unwrap();
        assert!(r.encloses(-0.577_215_664_901_532_9));

        // ψ₁(1) = π²/6
        let (re, _) = trigamma(p(1.0, 0.0)).unwrap();
        assert!(re.encloses(std::f64::consts::PI.powi(2) / 6.0));
    }

    #[test]
    fn trigamma_at_1222_plus_5i() {
        // ψ₁(1.222 + 5i) = 0.028565761452482 - 0.196509185977209i
        let (re, im) = trigamma(p(1.222, 5.0)).unwrap();
        assert!(re.encloses(0.028_565_761_452_482_32));
        assert!(im.encloses(-0.196_509_185_977_209_3));
        assert!(im.value < 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(im_log_gamma(p(0.0, 1.0)), Err(Error::Domain { .. })));
        assert!(re_digamma(p(-1.0, 0.0)).is_err());
        assert!(trigamma(p(0.0, 0.0)).is_err());
    }

    #[test]
    fn im_log_gamma_is_odd() {
        for &(s, t) in &[(0.611, 0.5), (1.222, 3.0), (0.972, 40.0)] {
            let a = im_log_gamma(p(s, t)).unwrap().value;
            let b = im_log_gamma(p(s, -t)).unwrap().value;
            assert_eq!(a, -b);
        }
    }

    #[test]
    fn f32_agrees_with_f64() {
        let a = im_log_gamma(ComplexPoint::new(1.0f32, 1.0f32)).unwrap();
        let b = im_log_gamma(p(1.0, 1.0)).unwrap();
        assert!((a.value as f64 - b.value).abs() < 1e-5);
    }

    #[test]
    fn reference_matches_frozen_values() {
        let cfg = ReferenceConfig::default();
        let z = reference_log_gamma(p(1.0, 1.0), 1e-13, &cfg).unwrap();
        assert_abs_diff_eq!(z.re, -0.650_923_199_301_856_3, epsilon = 1e-13);
        assert_abs_diff_eq!(z.im, -0.301_640_320_467_533_2, epsilon = 1e-13);
        let z = reference_digamma(p(3.0, 7.0), 1e-13, &cfg).unwrap();
        assert!((z - Complex64::new(2.005_350_183_640_952, 1.227_292_283_668_212)).norm() < 1e-13);
    }
}
