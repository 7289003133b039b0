//! Real roots of `h'(t)` through its cleared-denominator numerator.
//!
//! With `x1 = d + 1/2`, `x2 = d - 1/2`, `x3 = 2d + 1/2`, `x4 = 2d - 1/2` and
//! `r_i = x_i² + t²`, multiplying `h'` by `r1³ r2³ r3 r4` leaves a polynomial
//! `P(t) + π Q(t)` with rational coefficients. `P` comes from the arctan part
//! and is even of degree at most 12; `Q` has leading term `d²(a1 - a2) t^13`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::{h_prime, Params};
use crate::error::{Error, Result};

/// Degree of the numerator whenever `a1 != a2`.
pub const H_PRIME_DEGREE: usize = 13;

/// π to 20 decimals, used only for the exact root count.
const PI_NUM: &str = "314159265358979323846";
const PI_DEN: &str = "100000000000000000000";

#[derive(Clone, Debug)]
pub struct RootConfig {
    /// Geometric bracketing points on each side of zero.
    pub points_per_side: usize,
    /// Smallest `|t|` on the bracketing grid.
    pub min_abs: f64,
    /// Relative perturbation applied to every grid point.
    pub grid_shift: f64,
    /// Bisection stops once the bracket is this wide (relative to `max(|t|, 1)`).
    pub tolerance: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            points_per_side: 4000,
            min_abs: 1e-6,
            grid_shift: 0.0,
            tolerance: 1e-14,
        }
    }
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite parameter")
}

/// Exact `(P, Q)` with `numerator = P + π Q`.
pub fn h_prime_numerator(params: &Params<f64>) -> (Poly<BigRational>, Poly<BigRational>) {
    let half = BigRational::new(1.into(), 2.into());
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let (d, a1, a2, a3) = (rat(params.d), rat(params.a1), rat(params.a2), rat(params.a3));

    let xs = [&d + &half, &d - &half, &two * &d + &half, &two * &d - &half];
    let r: Vec<Poly<BigRational>> = xs
        .iter()
        .map(|x| Poly::new(vec![x * x, BigRational::zero(), BigRational::one()]))
        .collect();
    // r1^e1 r2^e2 r3^e3 r4^e4
    let prod = |e: [u32; 4]| -> Poly<BigRational> {
        (0..4).fold(Poly::constant(BigRational::one()), |acc, i| acc.mul(&r[i].pow(e[i])))
    };
    let t = Poly::new(vec![BigRational::zero(), BigRational::one()]);
    let t2 = t.mul(&t);

    let cs = [two.clone(), two.clone(), -BigRational::one(), -BigRational::one()];
    let mut p = Poly::zero();
    for i in 0..4 {
        let mut e = [3, 3, 1, 1];
        e[i] -= 1;
        p = p.sub(&prod(e).scale(&(&cs[i] * &xs[i])));
    }

    let mut bracket = Poly::zero();
    for i in 0..2 {
        let x = &xs[i];
        let x2 = Poly::constant(x * x);
        let mut e2 = [3, 3, 1, 1];
        e2[i] -= 2;
        let mut e3 = [3, 3, 1, 1];
        e3[i] -= 3;
        let over_r2 = prod(e2);
        let over_r3 = prod(e3);
        // d a1 · (-2 x t) / r²
        bracket = bracket.add(&t.mul(&over_r2).scale(&(-&two * x * &d * &a1)));
        // d² a2 · (-2t (3x² - t²)) / r³
        let num2 = t.mul(&x2.scale(&three).sub(&t2)).scale(&(-&two * &d * &d * &a2));
        bracket = bracket.add(&num2.mul(&over_r3));
        // a3 · 2x (x² - 3t²) / r³
        let num3 = x2.sub(&t2.scale(&three)).scale(&(&two * x * &a3));
        bracket = bracket.add(&num3.mul(&over_r3));
    }
    let q = bracket.scale(&-quarter);
    (p, q)
}

fn pi_rational() -> BigRational {
    BigRational::new(PI_NUM.parse().unwrap(), PI_DEN.parse().unwrap())
}

/// Ascending real roots of `h'` for the given parameters.
pub fn find_h_prime_roots(params: &Params<f64>) -> Result<Vec<f64>> {
    find_h_prime_roots_with(params, &RootConfig::default())
}

pub fn find_h_prime_roots_with(params: &Params<f64>, cfg: &RootConfig) -> Result<Vec<f64>> {
    let (p, q) = h_prime_numerator(params);
    let exact = p.add(&q.scale(&pi_rational()));
    let found = exact.degree().unwrap_or(0);
    if found != H_PRIME_DEGREE {
        return Err(Error::PolynomialDegree {
            expected: H_PRIME_DEGREE,
            found,
        });
    }
    let pi = std::f64::consts::PI;
    let (pf, qf) = (p.to_f64(), q.to_f64());
    let n = pf.coeffs().len().max(qf.coeffs().len());
    let coeff = |v: &Poly<f64>, i: usize| v.coeffs().get(i).copied().unwrap_or(0.0);
    let num = Poly::new((0..n).map(|i| coeff(&pf, i) + pi * coeff(&qf, i)).collect());

    let expected = exact.count_real_roots();
    let bound = num.root_bound();
    let mut per_side = cfg.points_per_side.max(16);
    for _ in 0..4 {
        let roots = bracket_and_bisect(&num, bound, per_side, cfg);
        if roots.len() == expected {
            return Ok(roots);
        }
        per_side *= 4;
    }
    Err(Error::RootStall { lo: -bound, hi: bound })
}

fn bracket_and_bisect(num: &Poly<f64>, bound: f64, per_side: usize, cfg: &RootConfig) -> Vec<f64> {
    let ratio = (bound / cfg.min_abs).powf(1.0 / per_side as f64);
    let shift = 1.0 + cfg.grid_shift;
    let mut grid: Vec<f64> = Vec::with_capacity(2 * per_side + 3);
    let mut a = cfg.min_abs * shift;
    let mut pos = Vec::with_capacity(per_side + 1);
    for _ in 0..=per_side {
        pos.push(a.min(bound));
        a *= ratio;
    }
    grid.extend(pos.iter().rev().map(|v| -v));
    grid.push(0.0);
    grid.extend(pos.iter().copied());

    let mut roots = Vec::new();
    let mut prev = (grid[0], num.eval(&grid[0]));
    for &x in &grid[1..] {
        let v = num.eval(&x);
        if v == 0.0 {
            roots.push(x);
        } else if prev.1 != 0.0 && (v > 0.0) != (prev.1 > 0.0) {
            roots.push(bisect(num, prev.0, x, prev.1, cfg.tolerance));
        }
        prev = (x, v);
    }
    roots
}

fn bisect(num: &Poly<f64>, mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let neg_lo = flo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * mid.abs().max(1.0) || mid == lo || mid == hi {
            break;
        }
        let v = num.eval(&mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Residual check used by the certificate: `|h'(r)|` at each root.
pub(crate) fn max_residual(roots: &[f64], params: &Params<f64>) -> f64 {
    roots
        .iter()
        .map(|&r| h_prime(r, params).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PUBLISHED_ROOTS: [f64; 7] = [
        -0.791_179_404_6,
        -0.345_961_321_1,
        0.052_030_792_8,
        0.909_110_093_7,
        1.335_121_235_5,
        2.749_948_513_6,
        5.863_458_832_8,
    ];

    #[test]
    fn numerator_shape() {
        let (p, q) = h_prime_numerator(&Params::paper());
        assert!(p.degree().unwrap() <= 12);
        assert_eq!(q.degree(), Some(13));
        // P is even
        assert!(p.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero()));
    }

    #[test]
    fn numerator_matches_direct_derivative() {
        let params = Params::paper();
        let (p, q) = h_prime_numerator(&params);
        let (pf, qf) = (p.to_f64(), q.to_f64());
        let d = params.d;
        for &t in &[-2.0, -0.4, 0.3, 1.1, 7.0] {
            let r = |x: f64| x * x + t * t;
            let den = r(d + 0.5).powi(3) * r(d - 0.5).powi(3) * r(2.0 * d + 0.5) * r(2.0 * d - 0.5);
            let via = (pf.eval(&t) + std::f64::consts::PI * qf.eval(&t)) / den;
            let direct = h_prime(t, &params);
            assert!((via - direct).abs() < 1e-10 * direct.abs().max(1.0), "{t}: {via} vs {direct}");
        }
    }

    #[test]
    fn published_roots() {
        let params = Params::paper();
        let roots = find_h_prime_roots(&params).unwrap();
        assert_eq!(roots.len(), 7);
        for (r, e) in roots.iter().zip(PUBLISHED_ROOTS) {
            assert!((r - e).abs() < 1e-8, "{r} vs {e}");
        }
        assert!(max_residual(&roots, &params) <= 1e-8);
    }

    #[test]
    fn equal_a_drops_degree() {
        let params = Params::new(0.722, 1.0, 1.0, 0.365);
        assert!(matches!(
            find_h_prime_roots(&params),
            Err(Error::PolynomialDegree { found: 12, .. })
        ));
    }
}
