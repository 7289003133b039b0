//! Assembly of the zero-counting envelope from the factor estimates.
//!
//! Summing the factor estimates gives, for `L = log d_K`, `n = n_K`,
//!
//! ```text
//! E_u <= main + (d a1/4)(L + n log(T/2π)) + S+ n + s+
//! E_l >= main - (d a1/4)(L + n log(T/2π)) - S- n + s-
//! ```
//!
//! with `s±` the `s(s-1)` constants and `S±` the per-degree gamma plus
//! zeta constants. Centering at `(s+ + s-)/2` and trading `log(T/2π)` for
//! `log T` gives the published form.

mod zeros;

pub use zeros::{
    count_zeros, height_grid, load_zero_table, parse_zero_table, validate, ValidationReport, ValidationRow, ZeroTable,
    ORDINATE_TOLERANCE,
};

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{e_s_squared, gamma_lemma_constants, FieldSignature, GammaConstants, ScanConfig};
use crate::kernel::Params;
use crate::primes::prime_sum_report;
use crate::real::{round_down, round_up};

/// Decimals kept by the outward rounding.
pub const DECIMALS: i32 = 3;

/// Outputs of the factor lemmas that enter the assembly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaConstants {
    /// `sup_T E_u(s(s-1))`.
    pub s_upper: f64,
    /// `inf_T E_l(s(s-1))`.
    pub s_lower: f64,
    /// Per-degree gamma constants (upper is `>= 0`, lower `<= 0`).
    pub gamma_upper: f64,
    pub gamma_lower: f64,
    /// Per-degree zeta constant, `head + tail`.
    pub zeta: f64,
    /// Per-degree coefficient of `n` in `E_u` and `-E_l`.
    pub upper_sum: f64,
    pub lower_sum: f64,
}

impl LemmaConstants {
    /// The published lemma constants with the combined sums as displayed in
    /// the assembly step (5.899 and 5.891).
    pub fn paper() -> Self {
        Self {
            s_upper: 2.381,
            s_lower: 1.458,
            gamma_upper: 0.258,
            gamma_lower: -0.25,
            zeta: 5.633,
            upper_sum: 5.899,
            lower_sum: 5.891,
        }
    }

    /// Sums formed directly from the parts: `γ+ + ζ` and `ζ - γ-`.
    pub fn from_parts(s_upper: f64, s_lower: f64, gamma_upper: f64, gamma_lower: f64, zeta: f64) -> Self {
        Self {
            s_upper,
            s_lower,
            gamma_upper,
            gamma_lower,
            zeta,
            upper_sum: gamma_upper + zeta,
            lower_sum: zeta - gamma_lower,
        }
    }

    /// Recompute every lemma constant at `params`, rounded outward.
    pub fn recompute(params: &Params<f64>, scan: &ScanConfig, cutoff: u64) -> Result<Self> {
        let s = s_squared_extremes(params, scan)?;
        let g: GammaConstants = gamma_lemma_constants(params, scan)?;
        let z = prime_sum_report(cutoff, params)?;
        Ok(Self::from_parts(
            round_up(s.0, DECIMALS),
            round_down(s.1, DECIMALS),
            g.upper_per_degree,
            g.lower_per_degree,
            round_up(z.total_per_degree, DECIMALS),
        ))
    }
}

/// `(sup, inf)` of `E_u`, `E_l` of `s(s-1)` over the scan grid, together
/// with the common limit 2 as `T → ∞`.
pub fn s_squared_extremes(params: &Params<f64>, scan: &ScanConfig) -> Result<(f64, f64)> {
    let mut hi = 2.0f64;
    let mut lo = 2.0f64;
    for t in scan.grid() {
        let e = e_s_squared(t, params)?;
        hi = hi.max(e.upper);
        lo = lo.min(e.lower);
    }
    Ok((hi, lo))
}

/// Constants of the envelope
/// `|N_K - main - center| <= log_coefficient (L + n log T) + per_degree n + radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremConstants {
    pub log_coefficient: f64,
    pub per_degree: f64,
    pub center: f64,
    pub radius: f64,
    /// `per_degree + radius`, the constant for `K = ℚ`.
    pub rational_constant: f64,
    pub raw: RawConstants,
}

/// Values before rounding, kept for the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawConstants {
    pub log_coefficient: f64,
    pub center: f64,
    pub radius: f64,
    /// `max(S+, S-) - log_coefficient · log 2π` with the rounded coefficient.
    pub per_degree: f64,
    pub upper_sum: f64,
    pub lower_sum: f64,
    /// Same shift taken with the unrounded `d a1/4`, rounded up. This is the
    /// smallest per-degree constant the assembly supports, since the shift
    /// may only use the coefficient that actually multiplies `log(T/2π)`.
    pub per_degree_exact_shift: f64,
}

impl TheoremConstants {
    pub fn paper() -> Self {
        Self::derive(&Params::paper(), &LemmaConstants::paper())
    }

    /// Center, radius and coefficients from lemma outputs, outward rounded.
    pub fn derive(params: &Params<f64>, lemmas: &LemmaConstants) -> Self {
        let coeff_raw = params.d_a1() / 4.0;
        let log_coefficient = round_up(coeff_raw, DECIMALS);
        let center_raw = (lemmas.s_upper + lemmas.s_lower) / 2.0;
        let center = round_down(center_raw, DECIMALS);
        // rounding the center moves it, so the radius must cover both sides
        let radius = round_up((lemmas.s_upper - center).max(center - lemmas.s_lower), DECIMALS);
        let sum = lemmas.upper_sum.max(lemmas.lower_sum);
        let log2pi = (2.0 * PI).ln();
        let per_degree_raw = sum - log_coefficient * log2pi;
        let per_degree = round_up(per_degree_raw, DECIMALS);
        Self {
            log_coefficient,
            per_degree,
            center,
            radius,
            rational_constant: round_up(per_degree + radius, DECIMALS),
            raw: RawConstants {
                log_coefficient: coeff_raw,
                center: center_raw,
                radius: (lemmas.s_upper - lemmas.s_lower) / 2.0,
                per_degree: per_degree_raw,
                upper_sum: lemmas.upper_sum,
                lower_sum: lemmas.lower_sum,
                per_degree_exact_shift: round_up(sum - coeff_raw * log2pi, DECIMALS),
            },
        }
    }

    /// Envelope radius for a field at height `T`.
    pub fn radius_at(&self, t: f64, sig: &FieldSignature) -> f64 {
        let n = sig.n_k as f64;
        self.log_coefficient * (sig.log_dk + n * t.ln()) + self.per_degree * n + self.radius
    }
}

/// Envelope for `N(T)` of the Riemann zeta function: the rational-field
/// envelope halved, with the center folded into the constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryConstants {
    pub log_coefficient: f64,
    pub constant: f64,
}

impl CorollaryConstants {
    pub fn from_theorem(c: &TheoremConstants) -> Self {
        Self {
            log_coefficient: round_up(c.log_coefficient / 2.0, DECIMALS),
            constant: round_up((c.rational_constant + c.center.abs()) / 2.0, DECIMALS),
        }
    }
}

/// The envelope at one height.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEnvelope {
    pub t: f64,
    pub signature: FieldSignature,
    /// `(T/π)(log d_K + n_K log(T/2πe))`.
    pub main_term: f64,
    pub center: f64,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub constants: TheoremConstants,
}

fn check_height(op: &'static str, t: f64) -> Result<()> {
    if t >= 1.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("requires finite T >= 1, got {t}")))
    }
}

pub fn main_term(t: f64, sig: &FieldSignature) -> f64 {
    t / PI * (sig.log_dk + sig.n_k as f64 * (t / (2.0 * PI * E)).ln())
}

/// Envelope at `T` with constants derived from `lemmas` at `params`.
pub fn assemble_envelope(
    t: f64,
    sig: &FieldSignature,
    params: &Params<f64>,
    lemmas: &LemmaConstants,
) -> Result<BoundEnvelope> {
    check_height("assemble_envelope", t)?;
    let constants = TheoremConstants::derive(params, lemmas);
    Ok(envelope_with(t, sig, constants))
}

fn envelope_with(t: f64, sig: &FieldSignature, constants: TheoremConstants) -> BoundEnvelope {
    let main = main_term(t, sig);
    let radius = constants.radius_at(t, sig);
    BoundEnvelope {
        t,
        signature: *sig,
        main_term: main,
        center: constants.center,
        radius,
        lower: main + constants.center - radius,
        upper: main + constants.center + radius,
        constants,
    }
}

/// `(lower, upper)` for `N_K(T)` with the published constants.
pub fn bound_nk(t: f64, sig: &FieldSignature) -> Result<(f64, f64)> {
    check_height("bound_nk", t)?;
    let e = envelope_with(t, sig, TheoremConstants::paper());
    Ok((e.lower, e.upper))
}

/// `(lower, upper)` for `N(T)` of the Riemann zeta function.
pub fn corollary_riemann(t: f64) -> Result<(f64, f64)> {
    check_height("corollary_riemann", t)?;
    let c = CorollaryConstants::from_theorem(&TheoremConstants::paper());
    let main = t / (2.0 * PI) * (t / (2.0 * PI * E)).ln();
    let r = c.log_coefficient * t.ln() + c.constant;
    Ok((main - r, main + r))
}
