//! The arctan kernel `f(b, t, d)` and its rational majorant.
//!
//! For a zero `β + iω` and height `T`, write `b = 1/2 - β` and `t = T - ω`.
//! The kernel
//!
//! ```text
//! f(b,t,d) = 2 atan((b+d)/t) + 2 atan((d-b)/t) - atan((b+2d)/t) - atan((2d-b)/t)
//! ```
//!
//! is bounded above by `(π/4)[d a1 P1 + d² a2 P2 + a3 P3]`, where with
//! `x ∈ {d+b, d-b}` and `r = x² + t²`
//!
//! ```text
//! P1 = Σ x/r,   P2 = Σ (x² - t²)/r²,   P3 = Σ 2xt/r².
//! ```
//!
//! `H = f - majorant` is harmonic in `b + it` away from the poles, so the
//! inequality `H <= 0` on the strip follows from its boundary values; see
//! [`verify_lemma21`].

mod lemma21;
pub mod poly;
mod roots;
mod search;

pub use lemma21::{tail_cutoff, verify_lemma21, verify_lemma21_with, Lemma21Certificate, TailCoefficients, VerifyConfig};
pub use roots::{find_h_prime_roots, find_h_prime_roots_with, h_prime_numerator, RootConfig, H_PRIME_DEGREE};
pub use search::{minimal_a1, search_params, SearchBox, SearchConfig, SearchOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Kernel parameters `(d, a1, a2, a3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params<T> {
    pub d: T,
    pub a1: T,
    pub a2: T,
    pub a3: T,
}

impl<T: Real> Params<T> {
    pub fn new(d: T, a1: T, a2: T, a3: T) -> Self {
        Self { d, a1, a2, a3 }
    }

    /// `d = 0.722, a1 = 1.07, a2 = 0.93, a3 = 0.365`.
    pub fn paper() -> Self {
        Self::new(T::lit(0.722), T::lit(1.07), T::lit(0.93), T::lit(0.365))
    }

    /// The quantity the envelope scales with.
    pub fn d_a1(&self) -> T {
        self.d * self.a1
    }

    /// Necessary conditions for admissibility. Returns the first one that
    /// fails.
    pub fn check(&self) -> std::result::Result<(), String> {
        let half = T::lit(0.5);
        if !(self.d > half) {
            return Err(format!("d = {} must exceed 1/2", self.d));
        }
        if !(self.a1 > T::zero() && self.a2 > T::zero() && self.a3 > T::zero()) {
            return Err("a1, a2, a3 must be positive".into());
        }
        if !(self.a1 > self.a2) {
            return Err(format!(
                "asymptotic sign needs a1 > a2 (a1 = {}, a2 = {})",
                self.a1, self.a2
            ));
        }
        // a1 + a2 >= 2 up to rounding of the inputs
        if self.a1 + self.a2 < T::lit(2.0) - T::lit(crate::real::CERT_SLACK) {
            return Err(format!(
                "t -> 0+ limit at b = 0 is positive: a1 + a2 = {} < 2",
                self.a1 + self.a2
            ));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> Params<f64> {
        Params::new(self.d.as_f64(), self.a1.as_f64(), self.a2.as_f64(), self.a3.as_f64())
    }
}

impl Params<f64> {
    /// Parse `"d,a1,a2,a3"`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match v.as_slice() {
            &[d, a1, a2, a3] => Ok(Self::new(d, a1, a2, a3)),
            _ => Err(format!("expected 4 comma-separated values, got {}", v.len())),
        }
    }
}

impl<T: Real> Default for Params<T> {
    fn default() -> Self {
        Self::paper()
    }
}

/// A point `(b, t)` with `|b| <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint<T> {
    pub b: T,
    pub t: T,
}

impl<T: Real> KernelPoint<T> {
    pub fn new(b: T, t: T) -> Self {
        Self { b, t }
    }

    fn check(&self, op: &'static str) -> Result<()> {
        if self.t == T::zero() || !self.t.is_finite() {
            return Err(Error::domain(op, format!("t must be finite and nonzero, got {}", self.t)));
        }
        if !(self.b.abs() <= T::lit(0.5)) {
            return Err(Error::domain(op, format!("|b| must be at most 1/2, got {}", self.b)));
        }
        Ok(())
    }
}

fn raw_f<T: Real>(b: T, t: T, d: T) -> T {
    let two = T::lit(2.0);
    two * ((b + d) / t).atan() + two * ((d - b) / t).atan()
        - ((b + two * d) / t).atan()
        - ((two * d - b) / t).atan()
}

/// Bracketed sum of the majorant, without the `π/4` factor.
fn raw_majorant_sum<T: Real>(b: T, t: T, p: &Params<T>) -> T {
    let mut s = T::zero();
    let t2 = t * t;
    for x in [p.d + b, p.d - b] {
        let r = x * x + t2;
        s = s
            + p.d * p.a1 * x / r
            + p.d * p.d * p.a2 * (x * x - t2) / (r * r)
            + p.a3 * T::lit(2.0) * x * t / (r * r);
    }
    s
}

/// `f(b, t, d)`.
pub fn eval_f<T: Real>(p: KernelPoint<T>, d: T) -> Result<T> {
    p.check("eval_f")?;
    if !(d > T::lit(0.5)) {
        return Err(Error::domain("eval_f", format!("d must exceed 1/2, got {d}")));
    }
    Ok(raw_f(p.b, p.t, d))
}

/// Upper majorant of `f`.
pub fn eval_majorant<T: Real>(p: KernelPoint<T>, params: &Params<T>) -> Result<T> {
    p.check("eval_majorant")?;
    Ok(T::FRAC_PI_4() * raw_majorant_sum(p.b, p.t, params))
}

/// `m` with `f(b, t, d) >= -m(b, t)`: the upper majorant at `(b, -t)`.
pub fn eval_majorant_lower<T: Real>(p: KernelPoint<T>, params: &Params<T>) -> Result<T> {
    p.check("eval_majorant_lower")?;
    Ok(T::FRAC_PI_4() * raw_majorant_sum(p.b, -p.t, params))
}

/// `H(b, t) = f(b, t, d) - majorant(b, t)`.
#[allow(non_snake_case)]
pub fn eval_H<T: Real>(p: KernelPoint<T>, params: &Params<T>) -> Result<T> {
    p.check("eval_H")?;
    Ok(unchecked_h(p.b, p.t, params))
}

#[inline]
pub(crate) fn unchecked_h<T: Real>(b: T, t: T, params: &Params<T>) -> T {
    raw_f(b, t, params.d) - T::FRAC_PI_4() * raw_majorant_sum(b, t, params)
}

/// `h(t) = H(1/2, t)`.
pub fn h<T: Real>(t: T, params: &Params<T>) -> T {
    unchecked_h(T::lit(0.5), t, params)
}

/// `h'(t)`, differentiated by hand.
pub fn h_prime<T: Real>(t: T, params: &Params<T>) -> T {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let d = params.d;
    let t2 = t * t;
    let mut df = T::zero();
    for (c, x) in [(two, d + half), (two, d - half), (-T::one(), two * d + half), (-T::one(), two * d - half)] {
        df = df - c * x / (x * x + t2);
    }
    let mut dm = T::zero();
    for x in [d + half, d - half] {
        let r = x * x + t2;
        let r2 = r * r;
        let r3 = r2 * r;
        dm = dm + d * params.a1 * (-two * x * t / r2)
            + d * d * params.a2 * (-two * t * (three * x * x - t2) / r3)
            + params.a3 * two * x * (x * x - three * t2) / r3;
    }
    df - T::FRAC_PI_4() * dm
}

/// `lim_{t -> 0+} H(b, t)`. The `t -> 0-` limit is this minus `2π`.
pub fn limit_at_zero_plus<T: Real>(b: T, params: &Params<T>) -> T {
    let (xp, xm) = (params.d + b, params.d - b);
    let d = params.d;
    T::PI()
        - T::FRAC_PI_4()
            * (d * params.a1 * (xp.recip() + xm.recip())
                + d * d * params.a2 * ((xp * xp).recip() + (xm * xm).recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(b: f64, t: f64) -> KernelPoint<f64> {
        KernelPoint::new(b, t)
    }

    #[test]
    fn f_reference_value() {
        // 2·atan(0.722)·2 - 2·atan(1.444), evaluated at 30 digits
        assert_abs_diff_eq!(eval_f(pt(0.0, 1.0), 0.722).unwrap(), 0.571_140_654_372_998, epsilon = 1e-14);
        assert_eq!(eval_f(pt(0.0, -1.0), 0.722).unwrap(), -eval_f(pt(0.0, 1.0), 0.722).unwrap());
    }

    #[test]
    fn t_times_f_vanishes() {
        let v = eval_f(pt(0.3, 1e4), 0.722).unwrap();
        assert!((v * 1e4).abs() < 1e-7);
    }

    #[test]
    fn domain_errors() {
        assert!(eval_f(pt(0.0, 0.0), 0.722).is_err());
        assert!(eval_f(pt(0.6, 1.0), 0.722).is_err());
        assert!(eval_f(pt(0.0, 1.0), 0.5).is_err());
        assert!(eval_H(pt(0.0, 0.0), &Params::paper()).is_err());
    }

    #[test]
    fn majorant_limit_at_origin() {
        let p = Params::<f64>::paper();
        let m = eval_majorant(pt(0.0, 1e-9), &p).unwrap();
        assert_abs_diff_eq!(m, std::f64::consts::PI, epsilon = 1e-7);
        assert_abs_diff_eq!(limit_at_zero_plus(0.0, &p), 0.0, epsilon = 1e-12);
        assert!(limit_at_zero_plus(0.3, &p) < 0.0);
    }

    #[test]
    fn h_at_documented_points() {
        let p = Params::<f64>::paper();
        assert!(eval_H(pt(0.5, 1.0), &p).unwrap() < 0.0);
        assert_abs_diff_eq!(h(0.909_110_093_7, &p), -0.000_224_58, epsilon = 1e-7);
        assert_abs_diff_eq!(h(-0.345_961_321_1, &p), -0.000_191_60, epsilon = 1e-7);
        assert_abs_diff_eq!(h(2.749_948_513_6, &p), -0.000_152_47, epsilon = 1e-7);
    }

    #[test]
    fn h_prime_matches_difference_quotient() {
        let p = Params::<f64>::paper();
        for &t in &[-3.0, -0.7, 0.2, 0.9, 4.0, 20.0] {
            let e = 1e-6;
            let fd = (h(t + e, &p) - h(t - e, &p)) / (2.0 * e);
            assert_abs_diff_eq!(h_prime(t, &p), fd, epsilon = 1e-6);
        }
    }

    #[test]
    fn params_checks() {
        assert!(Params::<f64>::paper().check().is_ok());
        assert!(Params::new(0.722, 1.0, 1.0, 0.365).check().unwrap_err().contains("a1 > a2"));
        assert!(Params::new(0.722, 1.0, 0.9, 0.365).check().is_err());
        assert!(Params::new(0.5, 1.07, 0.93, 0.365).check().is_err());
        assert_eq!(Params::parse("0.722, 1.07,0.93,0.365").unwrap(), Params::paper());
        assert!(Params::parse("1,2,3").is_err());
    }

    #[test]
    fn f32_tracks_f64() {
        let p32 = Params::<f32>::paper();
        let p64 = Params::<f64>::paper();
        let a = eval_H(KernelPoint::new(0.25f32, 1.5f32), &p32).unwrap() as f64;
        let b = eval_H(pt(0.25, 1.5), &p64).unwrap();
        assert!((a - b).abs() < 1e-5);
    }
}
