//! Estimates for the factors of the completed zeta function other than `ζ_K`.
//!
//! Every estimate is an [`EnvelopeTerm`]: the upper operator `E_u` and the
//! lower operator `E_l` applied to one factor at height `T`. Both are additive
//! over products, so the pieces are summed in [`crate::theorem`].

mod gamma;

pub use gamma::{
    e_gamma1, e_gamma2, e_gamma_k, gamma1_residual, gamma2_residual, gamma_k_lemma_bound, gamma_lemma_constants,
    scan_gamma_residuals, tail_enclosure, Expansion, GammaConstants, GammaScan, ResidualForm, ResidualRow,
    ScanConfig, TailEnclosure,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Params;
use crate::real::Real;

/// Degree, real and complex places, and `log |d_K|` of a number field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSignature {
    pub n_k: u32,
    pub r1: u32,
    pub r2: u32,
    pub log_dk: f64,
}

impl FieldSignature {
    pub fn new(r1: u32, r2: u32, log_dk: f64) -> Result<Self> {
        if !(log_dk >= 0.0) || !log_dk.is_finite() {
            return Err(Error::domain("FieldSignature", format!("log d_K must be finite and >= 0, got {log_dk}")));
        }
        if r1 + r2 == 0 {
            return Err(Error::domain("FieldSignature", "a number field has at least one place"));
        }
        Ok(Self {
            n_k: r1 + 2 * r2,
            r1,
            r2,
            log_dk,
        })
    }

    /// Checked constructor from all four fields.
    pub fn with_degree(n_k: u32, r1: u32, r2: u32, log_dk: f64) -> Result<Self> {
        let s = Self::new(r1, r2, log_dk)?;
        if s.n_k != n_k {
            return Err(Error::domain(
                "FieldSignature",
                format!("n_K = {n_k} but r1 + 2 r2 = {}", s.n_k),
            ));
        }
        Ok(s)
    }

    /// `K = ℚ`.
    pub fn rational() -> Self {
        Self {
            n_k: 1,
            r1: 1,
            r2: 0,
            log_dk: 0.0,
        }
    }
}

/// Upper and lower estimate for one factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeTerm<T> {
    pub upper: T,
    pub lower: T,
}

impl<T: Real> EnvelopeTerm<T> {
    pub fn new(upper: T, lower: T) -> Self {
        Self { upper, lower }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.upper * k, self.lower * k)
    }
}

impl<T: Real> std::ops::Add for EnvelopeTerm<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(self.upper + other.upper, self.lower + other.lower)
    }
}

fn check_height<T: Real>(op: &'static str, t: T) -> Result<()> {
    if t >= T::one() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("requires finite T >= 1, got {t}")))
    }
}

/// `E_u` and `E_l` of `s(s - 1)`.
///
/// With `x ∈ {d + 1/2, d - 1/2}`, `y ∈ {2d + 1/2, 2d - 1/2}`, `r = x² + T²`:
///
/// ```text
/// (4/π) Σ atan(T/x) - (2/π) Σ atan(T/y)
///     + Σ [ ±(d a1/2) x/r ∓ (d² a2/2)(x² - T²)/r² + a3 x T/r² ]
/// ```
///
/// with the upper signs for `E_u`.
pub fn e_s_squared<T: Real>(t: T, params: &Params<T>) -> Result<EnvelopeTerm<T>> {
    check_height("e_s_squared", t)?;
    let (d, half, two) = (params.d, T::lit(0.5), T::lit(2.0));
    let pi = T::PI();
    let xs = [d + half, d - half];
    let ys = [two * d + half, two * d - half];
    let mut common = T::zero();
    let mut signed = T::zero();
    for (x, y) in xs.into_iter().zip(ys) {
        common = common + T::lit(4.0) / pi * (t / x).atan() - two / pi * (t / y).atan();
        let r = x * x + t * t;
        common = common + params.a3 * x * t / (r * r);
        signed = signed + d * params.a1 / two * x / r - d * d * params.a2 / two * (x * x - t * t) / (r * r);
    }
    Ok(EnvelopeTerm::new(common + signed, common - signed))
}

/// `E_u` and `E_l` of `d_K^{s/2}`: `(T/π ± d a1/4) log d_K`.
pub fn e_discriminant<T: Real>(t: T, log_dk: T, params: &Params<T>) -> Result<EnvelopeTerm<T>> {
    check_height("e_discriminant", t)?;
    if !(log_dk >= T::zero()) {
        return Err(Error::domain("e_discriminant", format!("log d_K must be >= 0, got {log_dk}")));
    }
    let main = t / T::PI();
    let shift = params.d_a1() / T::lit(4.0);
    Ok(EnvelopeTerm::new((main + shift) * log_dk, (main - shift) * log_dk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn s_squared_at_one_and_infinity() {
        let p = Params::<f64>::paper();
        let e = e_s_squared(1.0, &p).unwrap();
        assert_abs_diff_eq!(e.upper, 2.380_733_7, epsilon = 1e-6);
        assert_abs_diff_eq!(e.lower, 1.458_497_5, epsilon = 1e-6);
        let far = e_s_squared(1e6, &p).unwrap();
        assert_abs_diff_eq!(far.upper, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(far.lower, 2.0, epsilon = 1e-6);
        assert!(e_s_squared(0.5, &p).is_err());
    }

    #[test]
    fn discriminant_term() {
        let p = Params::<f64>::paper();
        let e = e_discriminant(std::f64::consts::PI, 1.0, &p).unwrap();
        assert_abs_diff_eq!(e.upper, 1.193_135, epsilon = 1e-12);
        assert_eq!(e_discriminant(5.0, 0.0, &p).unwrap(), EnvelopeTerm::new(0.0, 0.0));
        let e = e_discriminant(7.0, 3.2, &p).unwrap();
        assert_abs_diff_eq!(e.upper - e.lower, 0.5 * p.d_a1() * 3.2, epsilon = 1e-12);
        assert!(e_discriminant(7.0, -1.0, &p).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(FieldSignature::new(2, 1, 1.0).unwrap().n_k, 4);
        assert!(FieldSignature::with_degree(3, 1, 0, 0.0).is_err());
        assert!(FieldSignature::new(1, 0, -0.1).is_err());
        assert!(FieldSignature::new(0, 0, 0.0).is_err());
    }
}
