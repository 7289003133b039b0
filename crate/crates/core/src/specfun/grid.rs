//! Approximation versus reference on a grid of argument points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{im_log_gamma, re_digamma, reference_digamma, reference_log_gamma, reference_trigamma, trigamma};
use super::{ComplexPoint, ReferenceConfig};
use crate::error::{Error, Result};
use crate::real::within_radius;

/// Accuracy requested from the reference route; its own error is added to
/// the allowed radius.
pub const REFERENCE_PRECISION: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecFunction {
    ImLogGamma,
    ReDigamma,
    ReTrigamma,
    ImTrigamma,
}

impl SpecFunction {
    pub const ALL: [SpecFunction; 4] = [Self::ImLogGamma, Self::ReDigamma, Self::ReTrigamma, Self::ImTrigamma];

    pub fn name(self) -> &'static str {
        match self {
            Self::ImLogGamma => "im_log_gamma",
            Self::ReDigamma => "re_digamma",
            Self::ReTrigamma => "re_trigamma",
            Self::ImTrigamma => "im_trigamma",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridCheck {
    pub function: SpecFunction,
    pub sigma: f64,
    pub t: f64,
    pub value: f64,
    pub remainder_radius: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub pass: bool,
}

/// Real parts at which the gamma-factor estimates evaluate the special
/// functions: `1/4 + d/2`, `1/4 + d`, `1/2 + d`, `1/2 + 2d`.
pub fn lemma_sigmas(d: f64) -> [f64; 4] {
    [0.25 + d / 2.0, 0.25 + d, 0.5 + d, 0.5 + 2.0 * d]
}

/// `steps` evenly spaced heights from `t_min` to `t_max` inclusive.
pub fn linear_heights(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !(t_max >= t_min) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::domain("linear_heights", format!("bad range [{t_min}, {t_max}] with {steps} steps")));
    }
    if steps == 1 {
        return Ok(vec![t_min]);
    }
    let h = (t_max - t_min) / (steps - 1) as f64;
    Ok((0..steps).map(|k| t_min + k as f64 * h).collect())
}

/// All four functions at one point.
pub fn check_point(s: ComplexPoint<f64>, cfg: &ReferenceConfig) -> Result<[GridCheck; 4]> {
    let lg = im_log_gamma(s)?;
    let dg = re_digamma(s)?;
    let (re1, im1) = trigamma(s)?;
    let rlg = reference_log_gamma(s, REFERENCE_PRECISION, cfg)?.im;
    let rdg = reference_digamma(s, REFERENCE_PRECISION, cfg)?.re;
    let rtg = reference_trigamma(s, REFERENCE_PRECISION, cfg)?;
    let row = |function, r: super::SpecFunResult<f64>, reference: f64| GridCheck {
        function,
        sigma: s.sigma,
        t: s.t,
        value: r.value,
        remainder_radius: r.remainder_radius,
        reference,
        abs_error: (r.value - reference).abs(),
        pass: within_radius(r.value, reference, r.remainder_radius + REFERENCE_PRECISION),
    };
    Ok([
        row(SpecFunction::ImLogGamma, lg, rlg),
        row(SpecFunction::ReDigamma, dg, rdg),
        row(SpecFunction::ReTrigamma, re1, rtg.re),
        row(SpecFunction::ImTrigamma, im1, rtg.im),
    ])
}

/// Every function at every `(σ, t)` of the product grid, in row-major order.
pub fn certify_grid(sigmas: &[f64], heights: &[f64]) -> Result<Vec<GridCheck>> {
    let cfg = ReferenceConfig::default();
    let points: Vec<_> = sigmas
        .iter()
        .flat_map(|&s| heights.iter().map(move |&t| ComplexPoint::new(s, t)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&s| check_point(s, &cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmas_and_heights() {
        let s = lemma_sigmas(0.722);
        assert!((s[0] - 0.611).abs() < 1e-15 && (s[3] - 1.944).abs() < 1e-15);
        let h = linear_heights(0.5, 100.0, 200).unwrap();
        assert_eq!((h.len(), h[0], h[199]), (200, 0.5, 100.0));
        assert!(linear_heights(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn single_point_passes() {
        let rows = check_point(ComplexPoint::new(1.222, 5.0), &ReferenceConfig::default()).unwrap();
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }
}
