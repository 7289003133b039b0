//! Archimedean factors `γ₁(s) = π^{-s/2} Γ(s/2)` and `γ₂(s) = (2π)^{-s} Γ(s)`.
//!
//! `E(γ₁)` is split as the main term `(T/π) log(T/2πe) ± (d a1/4) log(T/2π)`
//! plus a residual; `E(γ₂)` has twice that main term. Two routes to the
//! residual are provided:
//!
//! * [`ResidualForm::Published`] is the closed form in `T` built from the
//!   truncated Binet approximations, plus the envelope of their remainders.
//!   The lemma constants are taken from this form.
//! * [`ResidualForm::Certified`] applies the operator directly to the
//!   certified special-function values and widens by their radii. It is a
//!   cross-check only.
//!
//! Beyond the scanned range the published residual is enclosed by a
//! first-order expansion `c0 + c1/T` with an explicit `O(T^-2)` remainder,
//! see [`tail_enclosure`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_height, EnvelopeTerm, FieldSignature};
use crate::error::{Error, Result};
use crate::kernel::Params;
use crate::real::{round_down, round_up, Real};
use crate::specfun::{im_log_gamma, re_digamma, trigamma, ComplexPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidualForm {
    Published,
    Certified,
}

/// Which archimedean factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Real,
    Complex,
}

fn main_terms<T: Real>(t: T, params: &Params<T>, factor: Factor) -> (T, T) {
    let pi = T::PI();
    let two_pi = T::lit(2.0) * pi;
    let m = t / pi * (t / (two_pi * T::lit(std::f64::consts::E))).ln();
    let l = params.d_a1() / T::lit(4.0) * (t / two_pi).ln();
    match factor {
        Factor::Real => (m, l),
        Factor::Complex => (m + m, l + l),
    }
}

struct Shape<T> {
    x: T,
    y: T,
    r: T,
    q: T,
    l: T,
    l4: T,
}

impl<T: Real> Shape<T> {
    fn new(t: T, d: T) -> Self {
        let half = T::lit(0.5);
        let x = half + d;
        let y = half + d + d;
        Self {
            x,
            y,
            r: x * x + t * t,
            q: y * y + t * t,
            l: (x * x / (t * t)).ln_1p(),
            l4: (y * y / (t * t)).ln_1p(),
        }
    }
}

fn published_u<T: Real>(t: T, p: &Params<T>, sg: T, factor: Factor) -> T {
    let Shape { x, y, r, q, l, l4 } = Shape::new(t, p.d);
    let (d, pi) = (p.d, T::PI());
    let (one, two, three) = (T::one(), T::lit(2.0), T::lit(3.0));
    let da1 = p.d_a1();
    let (d2a2, a3) = (d * d * p.a2, p.a3);
    let w = x * x - t * t;
    match factor {
        Factor::Real => {
            t / pi * l - t / (two * pi) * l4 + sg * da1 / T::lit(8.0) * l
                + (two * d - one) / pi * (t / x).atan()
                - (T::lit(4.0) * d - one) / (two * pi) * (t / y).atan()
                - two * t / (three * pi * r)
                + t / (three * pi * q)
                - sg * da1 / T::lit(4.0) * (x / r + w / (three * r * r))
                + sg * d2a2 / T::lit(4.0) * (x / r + w / (r * r))
                + a3 / T::lit(4.0) * (t / r - two * x * t / (r * r))
        }
        Factor::Complex => {
            two * t / pi * l - t / pi * l4 + sg * da1 / T::lit(4.0) * l
                + T::lit(4.0) * d / pi * ((t / x).atan() - (t / y).atan())
                - t / (three * pi * r)
                + t / (T::lit(6.0) * pi * q)
                - sg * da1 / T::lit(4.0) * (x / r + w / (T::lit(6.0) * r * r))
                + sg * d2a2 / two * (x / r + w / (two * r * r))
                + a3 / two * (t / r - x * t / (r * r))
        }
    }
}

fn remainder_envelope<T: Real>(t: T, p: &Params<T>, factor: Factor) -> T {
    let (d, pi) = (p.d, T::PI());
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let x = half + d;
    let y = x + d;
    let r = x * x + t * t;
    let lg = |sigma: T| T::one() / T::lit(360.0) + T::one() / (T::lit(1022.0) * sigma);
    let tg = |sigma: T| T::one() / T::lit(6.0) + T::one() / (T::lit(23.0) * sigma);
    let p15 = |v: T| v * v.sqrt();
    let da1 = p.d_a1();
    let k = d * d * p.a2 + p.a3;
    match factor {
        Factor::Real => {
            let s1 = quarter + d / T::lit(2.0);
            let s2 = quarter + d;
            let w = s1 * s1 + t * t / T::lit(4.0);
            T::lit(4.0) / pi * lg(x) / p15(r)
                + T::lit(2.0) / pi * lg(s2) / p15(s2 * s2 + t * t / T::lit(4.0))
                + da1 / T::lit(4.0) / (T::lit(120.0) * p15(w))
                + k / T::lit(8.0) * tg(s1) / p15(w)
        }
        Factor::Complex => {
            T::lit(4.0) / pi * lg(x) / p15(r)
                + T::lit(2.0) / pi * lg(y) / p15(y * y + t * t)
                + da1 / T::lit(2.0) / (T::lit(120.0) * p15(r))
                + k / T::lit(2.0) * tg(x) / p15(r)
        }
    }
}

fn certified_residual<T: Real>(t: T, p: &Params<T>, factor: Factor) -> Result<EnvelopeTerm<T>> {
    let (d, pi) = (p.d, T::PI());
    let (half, two) = (T::lit(0.5), T::lit(2.0));
    let (s1, s2, scale, shift, lin) = match factor {
        Factor::Real => (
            ComplexPoint::new((half + d) / two, t / two),
            ComplexPoint::new((half + d + d) / two, t / two),
            half,
            -half * pi.ln(),
            -t / two * pi.ln(),
        ),
        Factor::Complex => {
            let l2pi = (two * pi).ln();
            (
                ComplexPoint::new(half + d, t),
                ComplexPoint::new(half + d + d, t),
                T::one(),
                -l2pi,
                -t * l2pi,
            )
        }
    };
    let g1 = im_log_gamma(s1)?;
    let g2 = im_log_gamma(s2)?;
    let dg = re_digamma(s1)?;
    let (tr, ti) = trigamma(s1)?;
    // f'/f = shift + scale ψ, (log f)'' = scale² ψ₁
    let sc2 = scale * scale;
    let e1 = two / pi * (lin + two * g1.value - g2.value);
    let r1 = two / pi * (two * g1.remainder_radius + g2.remainder_radius);
    let da1h = p.d_a1() / two;
    let d2a2h = d * d * p.a2 / two;
    let e2 = da1h * (shift + scale * dg.value) + d2a2h * sc2 * tr.value;
    let r2 = da1h * scale * dg.remainder_radius + d2a2h * sc2 * tr.remainder_radius;
    let e3 = p.a3 / two * sc2 * ti.value;
    let r3 = p.a3 / two * sc2 * ti.remainder_radius;
    let (m, l) = main_terms(t, p, factor);
    let radius = r1 + r2 + r3;
    Ok(EnvelopeTerm::new(
        e1 + e2 + e3 - m - l + radius,
        e1 - e2 + e3 - m + l - radius,
    ))
}

fn residual<T: Real>(t: T, p: &Params<T>, form: ResidualForm, factor: Factor) -> Result<EnvelopeTerm<T>> {
    check_height("gamma residual", t)?;
    p.check().map_err(|e| Error::domain("gamma residual", e))?;
    match form {
        ResidualForm::Published => {
            let ub = remainder_envelope(t, p, factor);
            Ok(EnvelopeTerm::new(
                published_u(t, p, T::one(), factor) + ub,
                published_u(t, p, -T::one(), factor) - ub,
            ))
        }
        ResidualForm::Certified => certified_residual(t, p, factor),
    }
}

/// Upper and lower residual of `E(γ₁)` after removing the main term.
pub fn gamma1_residual<T: Real>(t: T, params: &Params<T>, form: ResidualForm) -> Result<EnvelopeTerm<T>> {
    residual(t, params, form, Factor::Real)
}

/// Upper and lower residual of `E(γ₂)` after removing twice the main term.
pub fn gamma2_residual<T: Real>(t: T, params: &Params<T>, form: ResidualForm) -> Result<EnvelopeTerm<T>> {
    residual(t, params, form, Factor::Complex)
}

fn with_main<T: Real>(t: T, p: &Params<T>, form: ResidualForm, factor: Factor) -> Result<EnvelopeTerm<T>> {
    let res = residual(t, p, form, factor)?;
    let (m, l) = main_terms(t, p, factor);
    Ok(EnvelopeTerm::new(m + l + res.upper, m - l + res.lower))
}

/// Bound for `E_u(γ₁)` and `E_l(γ₁)` at height `T`.
pub fn e_gamma1<T: Real>(t: T, params: &Params<T>, form: ResidualForm) -> Result<EnvelopeTerm<T>> {
    with_main(t, params, form, Factor::Real)
}

/// Bound for `E_u(γ₂)` and `E_l(γ₂)` at height `T`.
pub fn e_gamma2<T: Real>(t: T, params: &Params<T>, form: ResidualForm) -> Result<EnvelopeTerm<T>> {
    with_main(t, params, form, Factor::Complex)
}

/// `r1 E(γ₁) + r2 E(γ₂)`, evaluated directly.
pub fn e_gamma_k(t: f64, sig: &FieldSignature, params: &Params<f64>, form: ResidualForm) -> Result<EnvelopeTerm<f64>> {
    let g1 = e_gamma1(t, params, form)?.scale(sig.r1 as f64);
    let g2 = e_gamma2(t, params, form)?.scale(sig.r2 as f64);
    Ok(g1 + g2)
}

/// The lemma-level closed form
/// `n_K [(T/π) log(T/2πe) ± (d a1/4) log(T/2π) + c±]`.
pub fn gamma_k_lemma_bound(
    t: f64,
    sig: &FieldSignature,
    params: &Params<f64>,
    constants: &GammaConstants,
) -> Result<EnvelopeTerm<f64>> {
    check_height("gamma_k_lemma_bound", t)?;
    let (m, l) = main_terms(t, params, Factor::Real);
    let n = sig.n_k as f64;
    Ok(EnvelopeTerm::new(
        n * (m + l + constants.upper_per_degree),
        n * (m - l + constants.lower_per_degree),
    ))
}

/// Sample grid for [`scan_gamma_residuals`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    /// Geometric spacing when true, linear otherwise.
    pub geometric: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            t_min: 1.0,
            t_max: 1000.0,
            points: 10_000,
            geometric: true,
        }
    }
}

impl ScanConfig {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points.max(2);
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                if self.geometric {
                    self.t_min * (self.t_max / self.t_min).powf(f)
                } else {
                    self.t_min + (self.t_max - self.t_min) * f
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ResidualRow {
    pub t: f64,
    pub u1: f64,
    pub l1: f64,
    pub u2: f64,
    pub l2: f64,
}

/// `(value, T)` extremes of the four residuals over a scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaScan {
    pub form: ResidualForm,
    pub config: ScanConfig,
    pub u1_sup: (f64, f64),
    pub l1_inf: (f64, f64),
    pub u2_sup: (f64, f64),
    pub l2_inf: (f64, f64),
    pub rows: Vec<ResidualRow>,
}

pub fn scan_gamma_residuals(params: &Params<f64>, form: ResidualForm, cfg: &ScanConfig) -> Result<GammaScan> {
    if !(cfg.t_min >= 1.0 && cfg.t_max > cfg.t_min && cfg.t_max.is_finite()) {
        return Err(Error::domain("scan_gamma_residuals", "need 1 <= t_min < t_max < inf"));
    }
    let rows = cfg
        .grid()
        .into_par_iter()
        .map(|t| {
            let g1 = gamma1_residual(t, params, form)?;
            let g2 = gamma2_residual(t, params, form)?;
            Ok(ResidualRow {
                t,
                u1: g1.upper,
                l1: g1.lower,
                u2: g2.upper,
                l2: g2.lower,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ext = |f: fn(&ResidualRow) -> f64, max: bool| {
        rows.iter()
            .map(|r| (f(r), r.t))
            .reduce(|a, b| if (b.0 > a.0) == max && b.0 != a.0 { b } else { a })
            .unwrap()
    };
    Ok(GammaScan {
        form,
        config: cfg.clone(),
        u1_sup: ext(|r| r.u1, true),
        l1_inf: ext(|r| r.l1, false),
        u2_sup: ext(|r| r.u2, true),
        l2_inf: ext(|r| r.l2, false),
        rows,
    })
}

/// `f(T) = c0 + c1/T + R(T)` with `|R(T)| <= (rem2 + rem3/T)/T²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub c0: f64,
    pub c1: f64,
    pub rem2: f64,
    pub rem3: f64,
}

impl Expansion {
    fn add(self, o: Self) -> Self {
        Self {
            c0: self.c0 + o.c0,
            c1: self.c1 + o.c1,
            rem2: self.rem2 + o.rem2,
            rem3: self.rem3 + o.rem3,
        }
    }

    /// `k T log(1 + x²/T²)`
    fn t_log(k: f64, x: f64) -> Self {
        Self {
            c1: k * x * x,
            rem3: k.abs() * x.powi(4) / 2.0,
            ..Self::default()
        }
    }

    /// `k log(1 + x²/T²)`
    fn log(k: f64, x: f64) -> Self {
        Self {
            rem2: k.abs() * x * x,
            ..Self::default()
        }
    }

    /// `k atan(T/x)`
    fn atan(k: f64, x: f64) -> Self {
        Self {
            c0: k * std::f64::consts::FRAC_PI_2,
            c1: -k * x,
            rem3: k.abs() * x.powi(3) / 3.0,
            ..Self::default()
        }
    }

    /// `k T/(x² + T²)`
    fn t_over_r(k: f64, x: f64) -> Self {
        Self {
            c1: k,
            rem3: k.abs() * x * x,
            ..Self::default()
        }
    }

    /// `k (x/r + (x² - T²)/(m r²))`
    fn pole(k: f64, x: f64, m: f64) -> Self {
        Self {
            rem2: k.abs() * (x + 1.0 / m),
            ..Self::default()
        }
    }

    /// `k x T/r²`
    fn xt_over_r2(k: f64, x: f64) -> Self {
        Self {
            rem3: k.abs() * x,
            ..Self::default()
        }
    }

    /// Largest `|R(T)| T²` for `T >= t1`.
    pub fn remainder_at(&self, t1: f64) -> f64 {
        self.rem2 + self.rem3 / t1
    }
}

fn published_expansion(p: &Params<f64>, sg: f64, factor: Factor) -> Expansion {
    use std::f64::consts::PI;
    let d = p.d;
    let x = 0.5 + d;
    let y = 0.5 + 2.0 * d;
    let da1 = p.d_a1();
    let d2a2 = d * d * p.a2;
    let terms = match factor {
        Factor::Real => [
            Expansion::t_log(1.0 / PI, x),
            Expansion::t_log(-0.5 / PI, y),
            Expansion::log(sg * da1 / 8.0, x),
            Expansion::atan((2.0 * d - 1.0) / PI, x),
            Expansion::atan(-(4.0 * d - 1.0) / (2.0 * PI), y),
            Expansion::t_over_r(-2.0 / (3.0 * PI), x),
            Expansion::t_over_r(1.0 / (3.0 * PI), y),
            Expansion::pole(-sg * da1 / 4.0, x, 3.0),
            Expansion::pole(sg * d2a2 / 4.0, x, 1.0),
            Expansion::t_over_r(p.a3 / 4.0, x),
            Expansion::xt_over_r2(-p.a3 / 2.0, x),
        ],
        Factor::Complex => [
            Expansion::t_log(2.0 / PI, x),
            Expansion::t_log(-1.0 / PI, y),
            Expansion::log(sg * da1 / 4.0, x),
            Expansion::atan(4.0 * d / PI, x),
            Expansion::atan(-4.0 * d / PI, y),
            Expansion::t_over_r(-1.0 / (3.0 * PI), x),
            Expansion::t_over_r(1.0 / (6.0 * PI), y),
            Expansion::pole(-sg * da1 / 4.0, x, 6.0),
            Expansion::pole(sg * d2a2 / 2.0, x, 2.0),
            Expansion::t_over_r(p.a3 / 2.0, x),
            Expansion::xt_over_r2(-p.a3 / 2.0, x),
        ],
    };
    terms.into_iter().fold(Expansion::default(), Expansion::add)
}

/// Every term of the remainder envelope is `k/(c + T²/m)^{3/2} <= k m^{3/2}/T³`.
fn envelope_cube_coefficient(p: &Params<f64>, factor: Factor) -> f64 {
    use std::f64::consts::PI;
    let d = p.d;
    let x = 0.5 + d;
    let y = 0.5 + 2.0 * d;
    let lg = |s: f64| 1.0 / 360.0 + 1.0 / (1022.0 * s);
    let tg = |s: f64| 1.0 / 6.0 + 1.0 / (23.0 * s);
    let k = d * d * p.a2 + p.a3;
    match factor {
        Factor::Real => {
            4.0 / PI * lg(x)
                + 8.0 * 2.0 / PI * lg(0.25 + d)
                + 8.0 * p.d_a1() / 4.0 / 120.0
                + 8.0 * k / 8.0 * tg(0.25 + d / 2.0)
        }
        Factor::Complex => 4.0 / PI * lg(x) + 2.0 / PI * lg(y) + p.d_a1() / 2.0 / 120.0 + k / 2.0 * tg(x),
    }
}

/// Bounds for one residual on `[t1, ∞)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TailEnclosure {
    pub t1: f64,
    pub expansion: Expansion,
    /// Upper bound of the residual over `[t1, ∞)`.
    pub sup: f64,
    /// Lower bound of the residual over `[t1, ∞)`.
    pub inf: f64,
}

impl TailEnclosure {
    fn from_expansion(e: Expansion, t1: f64) -> Self {
        let k = e.remainder_at(t1);
        let sup = e.c0 + e.c1.max(0.0) / t1 + k / (t1 * t1);
        // c0 + c1/T - k/T² >= c0 + (c1 - k/T1)/T for T >= T1
        let inf = if e.c1 - k / t1 >= 0.0 {
            e.c0
        } else {
            e.c0 + (e.c1 - k / t1) / t1
        };
        Self {
            t1,
            expansion: e,
            sup,
            inf,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        value <= self.sup && value >= self.inf
    }
}

/// Tail enclosures `(u1, l1, u2, l2)` of the published residuals on `[t1, ∞)`.
pub fn tail_enclosure(params: &Params<f64>, t1: f64) -> Result<[TailEnclosure; 4]> {
    if !(t1 >= 1.0 && t1.is_finite()) {
        return Err(Error::domain("tail_enclosure", format!("requires finite t1 >= 1, got {t1}")));
    }
    params.check().map_err(|e| Error::domain("tail_enclosure", e))?;
    let one = |sg: f64, factor: Factor| {
        let env = Expansion {
            rem3: envelope_cube_coefficient(params, factor),
            ..Expansion::default()
        };
        TailEnclosure::from_expansion(published_expansion(params, sg, factor).add(env), t1)
    };
    Ok([
        one(1.0, Factor::Real),
        one(-1.0, Factor::Real),
        one(1.0, Factor::Complex),
        one(-1.0, Factor::Complex),
    ])
}

/// Per-degree constants `c+ >= max(sup u1, sup u2/2)` and
/// `c- <= min(inf l1, inf l2/2)`, rounded outward to three decimals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaConstants {
    pub upper_per_degree: f64,
    pub lower_per_degree: f64,
    pub u1_sup: f64,
    pub l1_inf: f64,
    pub u2_sup: f64,
    pub l2_inf: f64,
    pub tail_from: f64,
}

impl GammaConstants {
    /// The constants used by the main theorem.
    pub fn paper() -> Self {
        Self {
            upper_per_degree: 0.258,
            lower_per_degree: -0.25,
            u1_sup: 0.049,
            l1_inf: -0.25,
            u2_sup: 0.515,
            l2_inf: 0.0,
            tail_from: 1000.0,
        }
    }
}

/// Combine a published scan on `[1, T1]` with the tail beyond `T1`.
pub fn gamma_lemma_constants(params: &Params<f64>, cfg: &ScanConfig) -> Result<GammaConstants> {
    if cfg.t_min != 1.0 {
        return Err(Error::domain("gamma_lemma_constants", "the scan must start at T = 1"));
    }
    let scan = scan_gamma_residuals(params, ResidualForm::Published, cfg)?;
    let [tu1, tl1, tu2, tl2] = tail_enclosure(params, cfg.t_max)?;
    let u1 = scan.u1_sup.0.max(tu1.sup);
    let l1 = scan.l1_inf.0.min(tl1.inf);
    let u2 = scan.u2_sup.0.max(tu2.sup);
    let l2 = scan.l2_inf.0.min(tl2.inf);
    Ok(GammaConstants {
        upper_per_degree: round_up(u1.max(u2 / 2.0), 3),
        lower_per_degree: round_down(l1.min(l2 / 2.0), 3),
        u1_sup: u1,
        l1_inf: l1,
        u2_sup: u2,
        l2_inf: l2,
        tail_from: cfg.t_max,
    })
}
