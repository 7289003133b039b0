//! Euler-product estimate for `E_u(ζ_K)` and `E_l(ζ_K)`.
//!
//! Splitting `log ζ_K` over prime ideals, each ideal of norm `α` contributes
//! the phase function `q1(α, φ) = f1 + f2` at `φ = T log α`. By the
//! fundamental identity there are at most `n_K` ideals above each rational
//! prime, so everything reduces to sums over rational primes:
//!
//! * the head `Σ_{p <= M} max_φ q1(p, φ)`,
//! * the tail `c Σ_{p > M} (log p)² p^σ/(1 - p^σ)²` with `σ = 1/2 + d`,
//!   written as `c (log ζ)''(σ)` minus the head primes.
//!
//! Prime powers are absorbed into their prime by
//! [`verify_prime_power_reduction`].

mod zeta;

pub use zeta::{zeta_jet, zeta_log_derivative2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{EnvelopeTerm, FieldSignature};
use crate::kernel::Params;
use crate::real::{certified_le, Real};

/// Default cutoff: the 22nd prime.
pub const DEFAULT_CUTOFF: u64 = 79;

/// Golden-section seeds per period in [`max_over_phase`].
pub const PHASE_SEEDS: usize = 64;

/// Primes up to `n` (Eratosthenes).
pub fn sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `Λ(k)` for `k = 0..=n`.
pub fn von_mangoldt(n: u64) -> Vec<f64> {
    let mut lam = vec![0.0; n as usize + 1];
    for p in sieve(n) {
        let l = (p as f64).ln();
        let mut q = p;
        while q <= n {
            lam[q as usize] = l;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    lam
}

/// Norm `α` of a prime ideal (or a power) and the phase `φ = T log α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint<T> {
    pub alpha: T,
    pub phi: T,
}

impl<T: Real> PhasePoint<T> {
    pub fn new(alpha: T, phi: T) -> Result<Self> {
        if alpha >= T::lit(2.0) && alpha.is_finite() && phi.is_finite() {
            Ok(Self { alpha, phi })
        } else {
            Err(Error::domain("PhasePoint", format!("need finite alpha >= 2, got alpha = {alpha}, phi = {phi}")))
        }
    }
}

struct Phase<T> {
    a: T,
    b: T,
    log: T,
    cos: T,
    sin: T,
    den: T,
}

impl<T: Real> Phase<T> {
    fn new(p: PhasePoint<T>, d: T) -> Self {
        let half = T::lit(0.5);
        let a = p.alpha.powf(half + d);
        let b = p.alpha.powf(half + d + d);
        let (sin, cos) = p.phi.sin_cos();
        Self {
            a,
            b,
            log: p.alpha.ln(),
            cos,
            sin,
            den: T::one() - T::lit(2.0) * a * cos + a * a,
        }
    }
}

fn arctan_part<T: Real>(ph: &Phase<T>) -> T {
    let pi = T::PI();
    // atan2 keeps the branch continuous in φ (the second argument is positive)
    T::lit(4.0) / pi * ph.sin.atan2(ph.a - ph.cos) - T::lit(2.0) / pi * ph.sin.atan2(ph.b - ph.cos)
}

/// Arctan part and the `ζ'/ζ` part of `q1`.
pub fn f1<T: Real>(p: PhasePoint<T>, params: &Params<T>) -> T {
    let ph = Phase::new(p, params.d);
    arctan_part(&ph) + params.d_a1() / T::lit(2.0) * ph.log * (T::one() - ph.a * ph.cos) / ph.den
}

/// `(log ζ)''` part of `q1`.
pub fn f2<T: Real>(p: PhasePoint<T>, params: &Params<T>) -> T {
    let ph = Phase::new(p, params.d);
    let two = T::lit(2.0);
    let d = params.d;
    let w = ph.log * ph.log * ph.a / (ph.den * ph.den);
    w * (d * d * params.a2 / two * ((T::one() + ph.a * ph.a) * ph.cos - two * ph.a)
        + params.a3 / two * (T::one() - ph.a * ph.a) * ph.sin)
}

pub fn q1<T: Real>(p: PhasePoint<T>, params: &Params<T>) -> T {
    f1(p, params) + f2(p, params)
}

/// `q1` with the arctan part taken from `Im log ζ(σ + iT)` itself, which is
/// `-Σ arg(1 - α^{-σ} e^{-iφ})` and so enters with the opposite sign.
///
/// Not used by the envelope; reported next to the head sum as a cross-check.
pub fn q1_direct<T: Real>(p: PhasePoint<T>, params: &Params<T>) -> T {
    let ph = Phase::new(p, params.d);
    q1(p, params) - T::lit(2.0) * arctan_part(&ph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseFunction {
    Q1,
    F2,
    Q1Direct,
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `(φ*, max_φ g(α, φ))` over one period.
///
/// Golden section runs on the bracket around every seed that is a sampled
/// local maximum, to `1e-10` in `φ`.
pub fn max_over_phase(alpha: f64, params: &Params<f64>, which: PhaseFunction) -> Result<(f64, f64)> {
    PhasePoint::new(alpha, 0.0)?;
    let g = |phi: f64| {
        let p = PhasePoint { alpha, phi };
        match which {
            PhaseFunction::Q1 => q1(p, params),
            PhaseFunction::F2 => f2(p, params),
            PhaseFunction::Q1Direct => q1_direct(p, params),
        }
    };
    let step = std::f64::consts::TAU / PHASE_SEEDS as f64;
    let vals: Vec<f64> = (0..PHASE_SEEDS).map(|i| g(i as f64 * step)).collect();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..PHASE_SEEDS {
        let prev = vals[(i + PHASE_SEEDS - 1) % PHASE_SEEDS];
        let next = vals[(i + 1) % PHASE_SEEDS];
        if vals[i] > best.1 {
            best = (i as f64 * step, vals[i]);
        }
        if vals[i] >= prev && vals[i] >= next {
            let c = i as f64 * step;
            let (x, v) = golden_max(&g, c - step, c + step, 1e-10);
            if v > best.1 {
                best = (x.rem_euclid(std::f64::consts::TAU), v);
            }
        }
    }
    Ok(best)
}

/// `c = max_{|z|=1} (d² a2/2) Re z + (a3/2) Im z`.
pub fn c_constant<T: Real>(params: &Params<T>) -> T {
    let two = T::lit(2.0);
    (params.d * params.d * params.a2 / two).hypot(params.a3 / two)
}

/// `(log α)² α^σ/(1 - α^σ)²`, the modulus bound for the `(log ζ)''` term.
pub fn prime_weight(alpha: f64, sigma: f64) -> f64 {
    let a = alpha.powf(sigma);
    alpha.ln().powi(2) * a / (1.0 - a).powi(2)
}

/// One summand of the head sum.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub phi: f64,
    pub value: f64,
}

pub fn head_rows(cutoff: u64, params: &Params<f64>) -> Result<Vec<PrimeRow>> {
    sieve(cutoff)
        .into_par_iter()
        .map(|p| {
            let (phi, value) = max_over_phase(p as f64, params, PhaseFunction::Q1)?;
            Ok(PrimeRow { p, phi, value })
        })
        .collect()
}

/// `Σ_{p <= M} max_φ q1(p, φ)`.
pub fn head_sum(cutoff: u64, params: &Params<f64>) -> Result<f64> {
    Ok(head_rows(cutoff, params)?.iter().map(|r| r.value).sum())
}

/// Accuracy requested from [`zeta_log_derivative2`] by [`tail_bound`].
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// `c (log ζ)''(σ) - c Σ_{p <= M} (log p)² p^σ/(1 - p^σ)²`, `σ = 1/2 + d`,
/// padded by the evaluation tolerance.
pub fn tail_bound(cutoff: u64, params: &Params<f64>) -> Result<f64> {
    params.check().map_err(|e| Error::domain("tail_bound", e))?;
    let sigma = 0.5 + params.d;
    let full = zeta_log_derivative2(sigma, TAIL_TOLERANCE)?;
    let head: f64 = sieve(cutoff).iter().map(|&p| prime_weight(p as f64, sigma)).sum();
    Ok(c_constant(params) * (full - head + TAIL_TOLERANCE))
}

/// `Σ_{n <= N} Λ(n) log(n) n^{-σ}` and `Σ_{p <= N} (log p)² p^σ/(1 - p^σ)²`.
///
/// The two differ only by the prime powers above `N`; used as a cross-check
/// of the series behind [`tail_bound`].
pub fn truncated_log_derivative2(n: u64, sigma: f64) -> (f64, f64) {
    let lam = von_mangoldt(n);
    let weighted = lam
        .iter()
        .enumerate()
        .skip(2)
        .filter(|(_, &l)| l > 0.0)
        .map(|(k, &l)| l * (k as f64).ln() * (k as f64).powf(-sigma))
        .sum();
    let prime_form = sieve(n).iter().map(|&p| prime_weight(p as f64, sigma)).sum();
    (weighted, prime_form)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeSumReport {
    pub cutoff: u64,
    pub head: f64,
    pub tail: f64,
    pub total_per_degree: f64,
    pub c: f64,
    pub log_derivative2: f64,
    pub rows: Vec<PrimeRow>,
    /// Head sum of [`q1_direct`]; informational.
    pub head_direct: f64,
}

pub fn prime_sum_report(cutoff: u64, params: &Params<f64>) -> Result<PrimeSumReport> {
    if cutoff < 2 {
        return Err(Error::domain("prime_sum_report", "cutoff must be at least 2"));
    }
    let rows = head_rows(cutoff, params)?;
    let head = rows.iter().map(|r| r.value).sum();
    let tail = tail_bound(cutoff, params)?;
    Ok(PrimeSumReport {
        cutoff,
        head,
        tail,
        total_per_degree: head + tail,
        c: c_constant(params),
        log_derivative2: zeta_log_derivative2(0.5 + params.d, TAIL_TOLERANCE)?,
        rows,
        head_direct: sieve(cutoff)
            .par_iter()
            .map(|&p| Ok(max_over_phase(p as f64, params, PhaseFunction::Q1Direct)?.1))
            .collect::<Result<Vec<f64>>>()?
            .iter()
            .sum(),
    })
}

/// `E_u(ζ_K) <= n_K (head + tail)` and `E_l(ζ_K) >= -n_K (head + tail)`.
pub fn e_zeta_k(sig: &FieldSignature, params: &Params<f64>, cutoff: u64) -> Result<EnvelopeTerm<f64>> {
    if sig.n_k == 0 {
        return Ok(EnvelopeTerm::zero());
    }
    let total = head_sum(cutoff, params)? + tail_bound(cutoff, params)?;
    let upper = sig.n_k as f64 * total;
    Ok(EnvelopeTerm::new(upper, -upper))
}

/// A failed instance of the prime-power reduction or one of its crossovers.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReductionViolation {
    pub alpha: f64,
    pub m: u32,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionReport {
    pub checked: usize,
    /// Smallest `rhs - lhs` over the reduction grid.
    pub reduction_margin: f64,
    /// Smallest margin of `2c(log α)² α^{1+2d}/(1-α^{1+2d})² <= q1(α, π/2)` on `[2, 6]`.
    pub crossover_low_margin: f64,
    /// Same against `q1(α, 0)` on `[7, 10⁴]`.
    pub crossover_high_margin: f64,
    /// The `α >= 10⁴` range follows from monotonicity.
    pub crossover_tail_holds: bool,
    /// `m ↦ m c (log α)² α^{mσ}/(1 - α^{mσ})²` decreases on `m = 1..m_max` at `α = 2`.
    pub bound_decreasing_in_m: bool,
    pub violations: Vec<ReductionViolation>,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.crossover_tail_holds && self.bound_decreasing_in_m
    }
}

/// Default `α` grid: `2, 2.5, ..., 100`.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=196).map(|i| 2.0 + 0.5 * i as f64).collect()
}

fn crossover_lhs(alpha: f64, params: &Params<f64>) -> f64 {
    2.0 * c_constant(params) * prime_weight(alpha, 1.0 + 2.0 * params.d)
}

/// Check `(1/m) max q1(α^m) <= max q1(α)` on the grid for `m = 2..=m_max`,
/// plus the two crossover inequalities.
pub fn verify_prime_power_reduction(alpha_grid: &[f64], m_max: u32, params: &Params<f64>) -> Result<ReductionReport> {
    if m_max < 2 {
        return Err(Error::domain("verify_prime_power_reduction", "m_max must be at least 2"));
    }
    if let Some(a) = alpha_grid.iter().find(|a| !(**a >= 2.0)) {
        return Err(Error::domain("verify_prime_power_reduction", format!("alpha grid must lie in [2, inf), got {a}")));
    }
    params.check().map_err(|e| Error::domain("verify_prime_power_reduction", e))?;
    let mut violations = Vec::new();

    let per_alpha: Vec<Vec<ReductionViolation>> = alpha_grid
        .par_iter()
        .map(|&alpha| {
            let rhs = max_over_phase(alpha, params, PhaseFunction::Q1)?.1;
            (2..=m_max)
                .map(|m| {
                    let am = alpha.powi(m as i32);
                    let lhs = max_over_phase(am, params, PhaseFunction::Q1)?.1 / m as f64;
                    Ok(ReductionViolation { alpha, m, lhs, rhs })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut reduction_margin = f64::INFINITY;
    let mut checked = 0;
    for row in per_alpha.into_iter().flatten() {
        checked += 1;
        reduction_margin = reduction_margin.min(row.rhs - row.lhs);
        if !certified_le(row.lhs, row.rhs) {
            violations.push(row);
        }
    }

    let mut low = f64::INFINITY;
    for i in 0..=4000 {
        let alpha = 2.0 + 4.0 * i as f64 / 4000.0;
        let lhs = crossover_lhs(alpha, params);
        let rhs = q1(PhasePoint { alpha, phi: std::f64::consts::FRAC_PI_2 }, params);
        low = low.min(rhs - lhs);
        if !certified_le(lhs, rhs) {
            violations.push(ReductionViolation { alpha, m: 2, lhs, rhs });
        }
    }
    let mut high = f64::INFINITY;
    let mut alpha: f64 = 7.0;
    while alpha <= 1e4 {
        let lhs = crossover_lhs(alpha, params);
        let rhs = q1(PhasePoint { alpha, phi: 0.0 }, params);
        high = high.min(rhs - lhs);
        if !certified_le(lhs, rhs) {
            violations.push(ReductionViolation { alpha, m: 2, lhs, rhs });
        }
        alpha = if alpha < 1e3 { alpha + 0.25 } else { alpha + 1.0 };
    }

    let sigma = 0.5 + params.d;
    let c = c_constant(params);
    let bound_m = |m: u32| m as f64 * c * 2f64.ln().powi(2) * {
        let a = 2f64.powf(m as f64 * sigma);
        a / (1.0 - a).powi(2)
    };
    let bound_decreasing_in_m = (1..m_max).all(|m| bound_m(m + 1) < bound_m(m));

    Ok(ReductionReport {
        checked,
        reduction_margin,
        crossover_low_margin: low,
        crossover_high_margin: high,
        crossover_tail_holds: crossover_tail(1e4, params),
        bound_decreasing_in_m,
        violations,
    })
}

/// Sufficient condition for `2c L² A²/(A² - 1)² <= q1(α, 0)` for all
/// `α >= α0`, with `A = α^σ`, `L = log α`.
///
/// Multiplying by `(A - 1)/L`, the right side is at least
/// `(d² a2/2) L - d a1/2` (increasing in `α`) and the left at most
/// `2cL/(A(1 - A^{-2}))` (decreasing once `α > e^{1/σ}`); so it suffices to
/// compare them at `α0`.
fn crossover_tail(alpha0: f64, params: &Params<f64>) -> bool {
    let sigma = 0.5 + params.d;
    if alpha0 <= (1.0 / sigma).exp() {
        return false;
    }
    let l = alpha0.ln();
    let a = alpha0.powf(sigma);
    let right = params.d * params.d * params.a2 / 2.0 * l - params.d_a1() / 2.0;
    let left = 2.0 * c_constant(params) * l / (a * (1.0 - 1.0 / (a * a)));
    left <= right
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sieve_and_lambda() {
        let p = sieve(79);
        assert_eq!(p.len(), 22);
        assert_eq!(*p.last().unwrap(), 79);
        assert!(sieve(1).is_empty());
        let lam = von_mangoldt(16);
        assert_abs_diff_eq!(lam[16], 2f64.ln());
        assert_eq!(lam[12], 0.0);
        assert_abs_diff_eq!(lam[9], 3f64.ln());
    }

    #[test]
    fn c_value() {
        let p = Params::<f64>::paper();
        assert_abs_diff_eq!(c_constant(&p), 0.303_418_168, epsilon = 1e-9);
        let q = Params::new(0.722, 1.07, 0.93, 0.0);
        assert_abs_diff_eq!(c_constant(&q), 0.722 * 0.722 * 0.93 / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn head_and_tail() {
        let p = Params::<f64>::paper();
        assert_abs_diff_eq!(head_sum(79, &p).unwrap(), 1.108_340_76, epsilon = 1e-7);
        assert_abs_diff_eq!(tail_bound(79, &p).unwrap(), 4.515_624_4, epsilon = 1e-6);
        assert_eq!(head_sum(1, &p).unwrap(), 0.0);
    }

    #[test]
    fn crossover_tail_from_ten_thousand() {
        assert!(crossover_tail(1e4, &Params::paper()));
        assert!(!crossover_tail(2.0, &Params::paper()));
    }
}
