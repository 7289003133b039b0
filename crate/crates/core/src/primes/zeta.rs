//! `ζ`, `ζ'`, `ζ''` on the real axis `σ > 1` by Euler-Maclaurin summation,
//! carried as second-order jets in `s`.

use crate::error::{Error, Result};

/// Bernoulli numbers `B_2, B_4, ..., B_26`.
const BERNOULLI: [f64; 13] = [
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
];

/// Correction terms used; the next one is the error estimate.
const EM_TERMS: usize = 12;

/// `(f, f', f'')` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Jet([f64; 3]);

impl Jet {
    fn constant(c: f64) -> Self {
        Self([c, 0.0, 0.0])
    }

    /// `s + k` at `s = σ`.
    fn linear(sigma: f64, k: f64) -> Self {
        Self([sigma + k, 1.0, 0.0])
    }

    /// `n^{a - s}` at `s = σ`.
    fn power(n: f64, a: f64, sigma: f64) -> Self {
        let l = n.ln();
        let e = n.powf(a - sigma);
        Self([e, -l * e, l * l * e])
    }

    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self([a[0] * b[0], a[1] * b[0] + a[0] * b[1], a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2]])
    }

    fn scale(self, k: f64) -> Self {
        Self([k * self.0[0], k * self.0[1], k * self.0[2]])
    }

    fn recip(self) -> Self {
        let [f, f1, f2] = self.0;
        Self([1.0 / f, -f1 / (f * f), 2.0 * f1 * f1 / (f * f * f) - f2 / (f * f)])
    }

    fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Euler-Maclaurin at cut `n`: returns the jet and the size of the first
/// omitted correction.
fn euler_maclaurin(sigma: f64, n: usize) -> (Jet, f64) {
    let nf = n as f64;
    let mut sum = Jet::constant(0.0);
    for k in 1..n {
        sum = sum.add(Jet::power(k as f64, 0.0, sigma));
    }
    sum = sum.add(Jet::power(nf, 1.0, sigma).mul(Jet::linear(sigma, -1.0).recip()));
    sum = sum.add(Jet::power(nf, 0.0, sigma).scale(0.5));
    // rising product s(s+1)...(s+2k-2), extended two factors per term
    let mut rising = Jet::linear(sigma, 0.0);
    let mut fact = 2.0;
    let mut estimate = 0.0;
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let j = k + 1;
        let term = rising
            .mul(Jet::power(nf, 1.0 - 2.0 * j as f64, sigma))
            .scale(b / fact);
        if k == EM_TERMS {
            estimate = term.max_abs();
            break;
        }
        sum = sum.add(term);
        rising = rising
            .mul(Jet::linear(sigma, 2.0 * j as f64 - 1.0))
            .mul(Jet::linear(sigma, 2.0 * j as f64));
        fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
    }
    (sum, estimate)
}

/// `(ζ(σ), ζ'(σ), ζ''(σ))` and an error estimate for each component.
pub fn zeta_jet(sigma: f64, tolerance: f64) -> Result<([f64; 3], f64)> {
    if !(sigma > 1.0 && sigma.is_finite()) {
        return Err(Error::domain("zeta_jet", format!("requires finite sigma > 1, got {sigma}")));
    }
    const BUDGET: usize = 4096;
    let mut n = 16;
    loop {
        let (jet, est) = euler_maclaurin(sigma, n);
        // the remainder is at most a small multiple of the first omitted term
        let err = 4.0 * est;
        if err <= tolerance || n >= BUDGET {
            if err > tolerance {
                return Err(Error::Budget {
                    op: "zeta_jet",
                    target: tolerance,
                    achieved: err,
                    budget: BUDGET,
                });
            }
            return Ok((jet.0, err));
        }
        n *= 2;
    }
}

/// `(log ζ)''(σ) = ζ''/ζ - (ζ'/ζ)² = Σ_{n>=2} Λ(n) log(n) n^{-σ}`.
pub fn zeta_log_derivative2(sigma: f64, tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0) {
        return Err(Error::domain("zeta_log_derivative2", "tolerance must be positive"));
    }
    let ([z, z1, z2], err) = zeta_jet(sigma, tolerance * 1e-3)?;
    let g = z1 / z;
    let d = z2 / z - g * g;
    let propagated = (err + 2.0 * g.abs() * err + (z2 / z).abs() * err + 2.0 * g * g * err) / z;
    if propagated > tolerance {
        return Err(Error::Budget {
            op: "zeta_log_derivative2",
            target: tolerance,
            achieved: propagated,
            budget: 0,
        });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zeta_values() {
        let ([z, _, _], _) = zeta_jet(2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(z, std::f64::consts::PI.powi(2) / 6.0, epsilon = 1e-14);
        let ([z, z1, z2], _) = zeta_jet(1.222, 1e-13).unwrap();
        assert_abs_diff_eq!(z, 5.097_642_983_726_73, epsilon = 1e-12);
        // ζ'(2) = -0.9375482543158437
        let ([_, z1_2, _], _) = zeta_jet(2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(z1_2, -0.937_548_254_315_843_7, epsilon = 1e-13);
        assert!(z1 < 0.0 && z2 > 0.0);
    }

    #[test]
    fn log_derivative2_values() {
        assert_abs_diff_eq!(zeta_log_derivative2(1.222, 1e-10).unwrap(), 20.123_965_133_685_3, epsilon = 1e-10);
        assert_abs_diff_eq!(zeta_log_derivative2(3.0, 1e-12).unwrap(), 0.172_280_711_506, epsilon = 1e-11);
        assert!(zeta_log_derivative2(1.0, 1e-6).is_err());
    }

    #[test]
    fn jet_arithmetic() {
        // d/ds and d²/ds² of 1/(s-1) at s = 3
        let j = Jet::linear(3.0, -1.0).recip();
        assert_eq!(j.0, [0.5, -0.25, 0.25]);
    }
}
