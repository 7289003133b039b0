//! Boundary certificate for `H <= 0` on the strip `|b| <= 1/2`.
//!
//! `H` is harmonic on each half-strip `t > 0`, `t < 0`, so it is enough to
//! look at the edges `b = ±1/2` (where `H = h(t)` by symmetry), the limits
//! `t -> 0±`, and the far edges `t = ±t0`; beyond `t0` an explicit Taylor
//! bound shows the negative `t⁻²` term wins.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roots::{find_h_prime_roots_with, max_residual, RootConfig};
use super::{h, h_prime, limit_at_zero_plus, unchecked_h, Params};
use crate::real::certified_le;

/// `H(b, t) <= -A/t² + B/|t|³ + C/t⁴ + D/|t|⁵` for every `|b| <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TailCoefficients {
    pub fn new(p: &Params<f64>) -> Self {
        let pi = std::f64::consts::PI;
        let d = p.d;
        // f = 4d³/t³ + O(t⁻⁵); the a3 block is at most π d a3/|t|³.
        let quintic: f64 = [(2.0, d + 0.5), (2.0, d - 0.5), (1.0, 2.0 * d + 0.5), (1.0, 2.0 * d - 0.5)]
            .iter()
            .map(|(c, x)| c * x.powi(5) / 5.0)
            .sum();
        Self {
            a: 0.5 * pi * d * d * (p.a1 - p.a2),
            b: 4.0 * d.powi(3) + pi * d * p.a3,
            // x/(x²+t²) >= x/t² - x³/t⁴ and Σ x³ <= 2d³ + 3d/2 over |b| <= 1/2
            c: 0.25 * pi * d * p.a1 * (2.0 * d.powi(3) + 1.5 * d),
            d: quintic,
        }
    }

    /// `B/t + C/t² + D/t³`, to be compared with `A/2`.
    pub fn excess(&self, t: f64) -> f64 {
        self.b / t + self.c / (t * t) + self.d / t.powi(3)
    }

    /// Upper bound of `t² H(b, t)` valid for `|t| >= 1`.
    pub fn scaled_bound(&self, t: f64) -> f64 {
        -self.a + self.excess(t.abs())
    }
}

/// Smallest `t0` with `B/t0 + C/t0² + D/t0³ <= A/2`, so that
/// `H <= -A/(2t²)` for `|t| >= t0`. `None` if `A <= 0`.
pub fn tail_cutoff(p: &Params<f64>) -> Option<f64> {
    let tc = TailCoefficients::new(p);
    if !(tc.a > 0.0) {
        return None;
    }
    let target = 0.5 * tc.a;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    if tc.excess(lo) <= target {
        return Some(lo);
    }
    while tc.excess(hi) > target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if tc.excess(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub grid_b: usize,
    pub grid_t: usize,
    /// Smallest `|t|` on the interior grid.
    pub t_min: f64,
    /// Points per side for the dense scan of `h`.
    pub h_points: usize,
    pub edge_points: usize,
    pub roots: RootConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_b: 200,
            grid_t: 2000,
            t_min: 1e-4,
            h_points: 20_000,
            edge_points: 401,
            roots: RootConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalMax {
    pub t: f64,
    pub h: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub b: f64,
    pub t: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma21Certificate {
    pub params: Params<f64>,
    pub roots: Vec<f64>,
    pub maxima: Vec<LocalMax>,
    pub t0: f64,
    pub tail: TailCoefficients,
    pub tail_holds: bool,
    /// Largest `t -> 0+` limit over the `b` grid.
    pub zero_limit_max: f64,
    pub max_root_residual: f64,
    /// Largest sampled `h(t)` for `t_min <= |t| <= t0`.
    pub edge_b_max: GridPoint,
    /// Largest `H` on `t = ±t0`.
    pub edge_t0_max: GridPoint,
    /// Largest `H` on the interior grid.
    pub grid_max: GridPoint,
    /// Most positive value seen by any check.
    pub boundary_margin: f64,
    pub verdict: bool,
    pub failure: Option<String>,
}

impl Lemma21Certificate {
    fn rejected(params: Params<f64>, reason: String) -> Self {
        let nowhere = GridPoint {
            b: f64::NAN,
            t: f64::NAN,
            value: f64::NAN,
        };
        Self {
            params,
            roots: Vec::new(),
            maxima: Vec::new(),
            t0: f64::NAN,
            tail: TailCoefficients::new(&params),
            tail_holds: false,
            zero_limit_max: f64::NAN,
            max_root_residual: f64::NAN,
            edge_b_max: nowhere,
            edge_t0_max: nowhere,
            grid_max: nowhere,
            boundary_margin: f64::INFINITY,
            verdict: false,
            failure: Some(reason),
        }
    }
}

/// `n` values evenly spaced on `[lo, hi]`.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// `n` values geometrically spaced on `[lo, hi]`, mirrored to negative `t`.
fn signed_geomspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).powf(1.0 / (n.max(2) - 1) as f64);
    let pos: Vec<f64> = (0..n).map(|i| (lo * ratio.powi(i as i32)).min(hi)).collect();
    pos.iter().rev().map(|v| -v).chain(pos.iter().copied()).collect()
}

fn argmax(points: impl ParallelIterator<Item = GridPoint>) -> GridPoint {
    points
        .reduce(
            || GridPoint {
                b: f64::NAN,
                t: f64::NAN,
                value: f64::NEG_INFINITY,
            },
            |a, b| if b.value > a.value || (b.value == a.value && (b.t, b.b) < (a.t, a.b)) { b } else { a },
        )
}

pub fn verify_lemma21(params: &Params<f64>, t0_override: Option<f64>) -> Lemma21Certificate {
    verify_lemma21_with(params, t0_override, &VerifyConfig::default())
}

pub fn verify_lemma21_with(
    params: &Params<f64>,
    t0_override: Option<f64>,
    cfg: &VerifyConfig,
) -> Lemma21Certificate {
    let p = *params;
    if let Err(reason) = p.check() {
        return Lemma21Certificate::rejected(p, reason);
    }
    let tail = TailCoefficients::new(&p);
    let Some(auto_t0) = tail_cutoff(&p) else {
        return Lemma21Certificate::rejected(p, "no t⁻² decay: a1 <= a2".into());
    };
    let t0 = t0_override.unwrap_or(auto_t0);
    let tail_holds = t0 >= 1.0 && tail.excess(t0) <= 0.5 * tail.a;
    let mut failure = (!tail_holds).then(|| format!("tail bound does not hold at t0 = {t0}"));

    let bs = linspace(-0.5, 0.5, cfg.grid_b);
    // the limit is largest at b = 0, which an even-sized grid would miss
    let zero_limit_max = bs
        .iter()
        .chain(std::iter::once(&0.0))
        .map(|&b| limit_at_zero_plus(b, &p))
        .fold(f64::NEG_INFINITY, f64::max);
    if failure.is_none() && !certified_le(zero_limit_max, 0.0) {
        failure = Some(format!("t -> 0+ limit is positive ({zero_limit_max:e})"));
    }

    let (roots, residual) = match find_h_prime_roots_with(&p, &cfg.roots) {
        Ok(r) => {
            let res = max_residual(&r, &p);
            (r, res)
        }
        Err(e) => {
            failure.get_or_insert(format!("root isolation failed: {e}"));
            (Vec::new(), f64::NAN)
        }
    };
    let maxima: Vec<LocalMax> = roots
        .iter()
        .filter(|&&r| {
            let e = 1e-6 * r.abs().max(1e-3);
            h_prime(r + e, &p) < h_prime(r - e, &p)
        })
        .map(|&t| LocalMax { t, h: h(t, &p) })
        .collect();
    if failure.is_none() {
        if let Some(m) = maxima.iter().find(|m| !certified_le(m.h, 0.0)) {
            failure = Some(format!("h has a positive local maximum {:e} at t = {}", m.h, m.t));
        }
    }

    let ts_h = signed_geomspace(cfg.t_min, t0, cfg.h_points);
    let edge_b_max = argmax(ts_h.par_iter().map(|&t| GridPoint {
        b: 0.5,
        t,
        value: h(t, &p),
    }));
    let edge_t0_max = argmax(
        linspace(-0.5, 0.5, cfg.edge_points)
            .into_par_iter()
            .flat_map_iter(|b| {
                [t0, -t0].into_iter().map(move |t| GridPoint {
                    b,
                    t,
                    value: unchecked_h(b, t, &p),
                })
            }),
    );
    let ts = signed_geomspace(cfg.t_min, t0, cfg.grid_t / 2);
    let grid_max = argmax(bs.par_iter().flat_map_iter(|&b| {
        ts.iter().map(move |&t| GridPoint {
            b,
            t,
            value: unchecked_h(b, t, &p),
        })
    }));

    for (name, g) in [("b = ±1/2 edge", edge_b_max), ("t = ±t0 edge", edge_t0_max), ("interior grid", grid_max)] {
        if failure.is_none() && !certified_le(g.value, 0.0) {
            failure = Some(format!("H = {:e} > 0 on the {name} at (b, t) = ({}, {})", g.value, g.b, g.t));
        }
    }

    let boundary_margin = maxima
        .iter()
        .map(|m| m.h)
        .chain([zero_limit_max, edge_b_max.value, edge_t0_max.value, grid_max.value])
        .fold(f64::NEG_INFINITY, f64::max);

    Lemma21Certificate {
        params: p,
        roots,
        maxima,
        t0,
        tail,
        tail_holds,
        zero_limit_max,
        max_root_residual: residual,
        edge_b_max,
        edge_t0_max,
        grid_max,
        boundary_margin,
        verdict: failure.is_none(),
        failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_cutoff_at_default_params() {
        let p = Params::paper();
        let t0 = tail_cutoff(&p).unwrap();
        let tc = TailCoefficients::new(&p);
        assert!((tc.excess(t0) - 0.5 * tc.a).abs() < 1e-12);
        assert!(t0 > 30.0 && t0 < 60.0, "{t0}");
    }

    #[test]
    fn tail_bound_dominates_samples() {
        let p = Params::paper();
        let tc = TailCoefficients::new(&p);
        for &t in &[5.0, 20.0, 45.0, 300.0, -45.0] {
            for &b in &[-0.5, -0.2, 0.0, 0.37, 0.5] {
                let v = unchecked_h(b, t, &p) * t * t;
                assert!(v <= tc.scaled_bound(t), "({b}, {t}): {v}");
            }
        }
    }

    #[test]
    fn rejects_equal_a() {
        let c = verify_lemma21(&Params::new(0.722, 1.0, 1.0, 0.365), None);
        assert!(!c.verdict);
        assert!(c.failure.unwrap().contains("a1 > a2"));
    }

    #[test]
    fn short_t0_override_breaks_tail() {
        let cfg = VerifyConfig {
            grid_b: 20,
            grid_t: 200,
            h_points: 2000,
            ..VerifyConfig::default()
        };
        let c = verify_lemma21_with(&Params::paper(), Some(5.0), &cfg);
        assert!(!c.tail_holds && !c.verdict);
    }
}
