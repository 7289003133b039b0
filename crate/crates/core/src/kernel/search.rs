//! Derivative-free search for admissible parameters minimising `d·a1`.
//!
//! Only `d` and `a1` enter the objective, and the feasible set is a thin ridge
//! in the full 4-dimensional box, so the search runs over `d` and
//! `s = a1 + a2 - 2 >= 0`. For each `(d, s)` the smallest feasible `a1` is
//! found by bisection, where a trial `a1` counts as feasible if some `a3`
//! passes a cheap boundary scan. Raising `a3` lifts the kernel on one side of
//! the real axis and lowers it on the other, so the best `a3` sits where the
//! two side maxima cross and is found by bisection. A coarse `(d, s)` grid seeds a compass search, and every
//! move it accepts is re-checked with [`verify_lemma21_with`].

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lemma21::{tail_cutoff, verify_lemma21, verify_lemma21_with, Lemma21Certificate, VerifyConfig};
use super::{h, limit_at_zero_plus, unchecked_h, Params};
use crate::error::{Error, Result};
use crate::real::certified_le;

/// Closed ranges for each parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub d: (f64, f64),
    pub a1: (f64, f64),
    pub a2: (f64, f64),
    pub a3: (f64, f64),
}

impl SearchBox {
    pub fn singleton(p: &Params<f64>) -> Self {
        Self {
            d: (p.d, p.d),
            a1: (p.a1, p.a1),
            a2: (p.a2, p.a2),
            a3: (p.a3, p.a3),
        }
    }

    /// Parse `d=lo:hi,a1=lo:hi,a2=lo:hi,a3=lo:hi`; a single value fixes the
    /// coordinate. Missing coordinates keep the default range.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let mut out = Self::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, range) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=lo:hi, got {part:?}"))?;
            let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
            let r = match range.split_once(':') {
                Some((lo, hi)) => (num(lo)?, num(hi)?),
                None => {
                    let v = num(range)?;
                    (v, v)
                }
            };
            match key.trim() {
                "d" => out.d = r,
                "a1" => out.a1 = r,
                "a2" => out.a2 = r,
                "a3" => out.a3 = r,
                other => return Err(format!("unknown coordinate {other:?}")),
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        let ok = |(lo, hi): (f64, f64), min: f64, max: f64| lo <= hi && lo > min && hi <= max;
        if !ok(self.d, 0.5, 2.0) {
            return Err(format!("d range {:?} must lie in (1/2, 2]", self.d));
        }
        for (name, r) in [("a1", self.a1), ("a2", self.a2), ("a3", self.a3)] {
            if !ok(r, 0.0, 4.0) {
                return Err(format!("{name} range {r:?} must lie in (0, 4]"));
            }
        }
        Ok(())
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            d: (0.55, 1.0),
            a1: (0.9, 1.5),
            a2: (0.5, 1.1),
            a3: (0.05, 0.8),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Grid points per coordinate.
    pub grid_points: usize,
    /// Number of feasible grid points used as compass-search seeds.
    pub seeds: usize,
    /// Initial compass step as a fraction of each range.
    pub initial_step: f64,
    /// Stop once every step is below this fraction of its range.
    pub min_step: f64,
    pub max_evaluations: usize,
    /// Points per side for the screening scan of `h`.
    pub screen_points: usize,
    pub a3_tolerance: f64,
    pub a1_tolerance: f64,
    /// Grid used when re-checking accepted moves.
    pub verify: VerifyConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_points: 5,
            seeds: 3,
            initial_step: 0.125,
            min_step: 1e-4,
            max_evaluations: 4000,
            screen_points: 800,
            a3_tolerance: 1e-7,
            a1_tolerance: 1e-6,
            verify: VerifyConfig {
                grid_b: 41,
                grid_t: 400,
                h_points: 4000,
                edge_points: 81,
                ..VerifyConfig::default()
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub params: Params<f64>,
    pub certificate: Lemma21Certificate,
    pub objective: f64,
    pub grid_feasible: usize,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    x: [f64; 4],
    /// Largest boundary value of `H`; feasible when `<= 0` up to slack.
    worst: f64,
}

impl Candidate {
    fn params(&self) -> Params<f64> {
        Params::new(self.x[0], self.x[1], self.x[2], self.x[3])
    }

    fn objective(&self) -> f64 {
        self.x[0] * self.x[1]
    }

    /// Smaller objective first, then more room below zero, then smaller `d`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.objective()
            .total_cmp(&other.objective())
            .then(self.worst.total_cmp(&other.worst))
            .then(self.x[0].total_cmp(&other.x[0]))
            .then(self.x.partial_cmp(&other.x).unwrap_or(Ordering::Equal))
    }
}

/// Cheap boundary scan: `h` on a geometric grid and the far edges, reported
/// separately for `t < 0` and `t > 0`. The `t -> 0+` limit (largest at
/// `b = 0`) is a constraint only, since it sits at exactly zero whenever
/// `a1 + a2 = 2`. Returns `None` when a necessary condition fails.
fn screen(p: &Params<f64>, points: usize) -> Option<(f64, f64)> {
    p.check().ok()?;
    let t0 = tail_cutoff(p)?;
    if !certified_le(limit_at_zero_plus(0.0, p), 0.0) {
        return None;
    }
    let lo = 1e-4f64;
    let ratio = (t0 / lo).powf(1.0 / (points - 1) as f64);
    let side = |sign: f64| {
        let ts: Vec<f64> = (0..points).map(|i| sign * lo * ratio.powi(i as i32)).collect();
        let vs: Vec<f64> = ts.iter().map(|&t| h(t, p)).collect();
        let mut worst = f64::NEG_INFINITY;
        for i in 0..points {
            worst = worst.max(vs[i]);
            // polish interior sampled maxima, which the grid underestimates
            if i > 0 && i + 1 < points && vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] {
                worst = worst.max(polish_max(|t| h(t, p), ts[i - 1], ts[i + 1]));
            }
        }
        for i in 0..=20 {
            worst = worst.max(unchecked_h(-0.5 + i as f64 / 20.0, sign * t0, p));
        }
        worst
    };
    Some((side(-1.0), side(1.0)))
}

/// Golden-section maximum of `f` on the bracket `[a, b]` (either order).
fn polish_max(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut e) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fe) = (f(c), f(e));
    for _ in 0..60 {
        if fc >= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e);
        }
    }
    fc.max(fe)
}

fn feasible(worst: f64) -> bool {
    certified_le(worst, 0.0)
}

fn grid_axis((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    if lo == hi || n < 2 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// `a3` for fixed `(d, a1, a2)`.
///
/// Raising `a3` lowers `H` for `t > 0` and raises it for `t < 0`, so the side
/// maxima are monotone in `a3` and the best choice is where they cross; it is
/// located by bisection. With `early` set the bisection stops at the first
/// `a3` where both sides are nonpositive. Once both sides are positive at one
/// `a3`, no other `a3` can help.
fn best_a3(x: [f64; 3], bx: &SearchBox, cfg: &SearchConfig, early: bool) -> Candidate {
    let sides = |a3: f64| screen(&Params::new(x[0], x[1], x[2], a3), cfg.screen_points);
    let pick = |a3: f64, w: f64| Candidate { x: [x[0], x[1], x[2], a3], worst: w };
    let (mut lo, mut hi) = bx.a3;
    let mut best = pick(lo, f64::INFINITY);
    let mut a3 = 0.5 * (lo + hi);
    loop {
        let Some((neg, pos)) = sides(a3) else {
            return pick(a3, f64::INFINITY);
        };
        let c = pick(a3, neg.max(pos));
        if c.worst < best.worst {
            best = c;
        }
        let both_ok = feasible(neg) && feasible(pos);
        if (early && both_ok) || (!feasible(neg) && !feasible(pos)) || hi - lo <= cfg.a3_tolerance {
            return best;
        }
        if neg > pos {
            hi = a3;
        } else {
            lo = a3;
        }
        a3 = 0.5 * (lo + hi);
    }
}

/// For fixed `d` and `s = a1 + a2 - 2`, the smallest feasible `a1` (found by
/// bisection, with `a3` re-optimised at every trial value).
fn evaluate(d: f64, s: f64, bx: &SearchBox, cfg: &SearchConfig) -> Option<Candidate> {
    // a1 > a2 = 2 + s - a1, and a2 must stay inside its range
    let lo = bx.a1.0.max(2.0 + s - bx.a2.1);
    let hi = bx.a1.1.min(2.0 + s - bx.a2.0);
    // singleton boxes can come out inverted by one rounding step
    if lo > hi + 1e-12 {
        return None;
    }
    let hi = hi.max(lo);
    let at = |a1: f64| best_a3([d, a1, 2.0 + s - a1], bx, cfg, true);
    let top = at(hi);
    if !feasible(top.worst) {
        return None;
    }
    if feasible(at(lo).worst) {
        return Some(best_a3([d, lo, 2.0 + s - lo], bx, cfg, false));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > cfg.a1_tolerance {
        let m = 0.5 * (a + b);
        if feasible(at(m).worst) {
            b = m;
        } else {
            a = m;
        }
    }
    Some(best_a3([d, b, 2.0 + s - b], bx, cfg, false))
}

/// Smallest feasible `a1` (with its best `a3`) at fixed `d` and
/// `s = a1 + a2 - 2`, under the screening scan. Returns the parameters and the
/// largest boundary value of `H` seen for them.
pub fn minimal_a1(d: f64, s: f64, bx: &SearchBox, cfg: &SearchConfig) -> Option<(Params<f64>, f64)> {
    evaluate(d, s, bx, cfg).map(|c| (c.params(), c.worst))
}

pub fn search_params(bx: &SearchBox, cfg: &SearchConfig) -> Result<SearchOutcome> {
    bx.validate().map_err(Error::NoAdmissible)?;
    let s_range = ((bx.a1.0 + bx.a2.0 - 2.0).max(0.0), bx.a1.1 + bx.a2.1 - 2.0);
    if s_range.0 > s_range.1 {
        return Err(Error::NoAdmissible("a1 + a2 < 2 throughout the box".into()));
    }
    let mut grid = Vec::new();
    for &d in &grid_axis(bx.d, cfg.grid_points) {
        for &s in &grid_axis(s_range, cfg.grid_points) {
            grid.push([d, s]);
        }
    }
    let mut evaluations = grid.len();
    let mut feasible_pts: Vec<Candidate> = grid
        .par_iter()
        .filter_map(|&[d, s]| evaluate(d, s, bx, cfg))
        .collect();
    feasible_pts.sort_by(Candidate::cmp);
    let grid_feasible = feasible_pts.len();

    let mut finals = Vec::new();
    for seed in feasible_pts.iter().take(cfg.seeds.max(1)) {
        if !verify_lemma21_with(&seed.params(), None, &cfg.verify).verdict {
            continue;
        }
        let (best, used) = compass(*seed, bx, s_range, cfg);
        evaluations += used;
        finals.push(best);
    }
    finals.sort_by(Candidate::cmp);

    for c in finals {
        let cert = verify_lemma21(&c.params(), None);
        if cert.verdict {
            return Ok(SearchOutcome {
                params: c.params(),
                objective: c.objective(),
                certificate: cert,
                grid_feasible,
                evaluations,
            });
        }
    }
    Err(Error::NoAdmissible(format!(
        "{} grid points screened, none certified",
        grid.len()
    )))
}

/// Compass search over `(d, s)`.
fn compass(start: Candidate, bx: &SearchBox, s_range: (f64, f64), cfg: &SearchConfig) -> (Candidate, usize) {
    let ranges = [bx.d, s_range];
    let widths = ranges.map(|(lo, hi)| hi - lo);
    let coords = |c: &Candidate| [c.x[0], c.x[1] + c.x[2] - 2.0];
    let mut step = cfg.initial_step;
    let mut best = start;
    let mut used = 0;
    while step >= cfg.min_step && used < cfg.max_evaluations && widths.iter().any(|&w| w > 0.0) {
        let here = coords(&best);
        let polls: Vec<[f64; 2]> = (0..2)
            .filter(|&i| widths[i] > 0.0)
            .flat_map(|i| [1.0, -1.0].map(move |sg| (i, sg)))
            .map(|(i, sg)| {
                let mut x = here;
                x[i] = (x[i] + sg * step * widths[i]).clamp(ranges[i].0, ranges[i].1);
                x
            })
            .filter(|x| *x != here)
            .collect();
        used += polls.len();
        let mut improving: Vec<Candidate> = polls
            .par_iter()
            .filter_map(|&[d, s]| evaluate(d, s, bx, cfg))
            .filter(|c| c.cmp(&best) == Ordering::Less)
            .collect();
        improving.sort_by(Candidate::cmp);
        let accepted = improving
            .into_iter()
            .find(|c| verify_lemma21_with(&c.params(), None, &cfg.verify).verdict);
        match accepted {
            Some(c) => best = c,
            None => step *= 0.5,
        }
    }
    (best, used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_parsing() {
        let b = SearchBox::parse("d=0.6:0.8, a1=1.07, a3=0.1:0.5").unwrap();
        assert_eq!(b.d, (0.6, 0.8));
        assert_eq!(b.a1, (1.07, 1.07));
        assert!(SearchBox::parse("d=0.4:0.8").is_err());
        assert!(SearchBox::parse("x=1").is_err());
        assert!(SearchBox::parse("a2=0:1").is_err());
    }

    #[test]
    fn screen_agrees_with_certificate_at_default_point() {
        let (neg, pos) = screen(&Params::paper(), 3000).unwrap();
        let w = neg.max(pos);
        assert!(w <= 1e-9 && w > -1e-3);
    }

    #[test]
    fn singleton_box_returns_its_point() {
        let p = Params::paper();
        let out = search_params(&SearchBox::singleton(&p), &SearchConfig::default()).unwrap();
        let q = out.params;
        for (a, b) in [(q.d, p.d), (q.a1, p.a1), (q.a2, p.a2), (q.a3, p.a3)] {
            assert!((a - b).abs() < 1e-12, "{q:?}");
        }
        assert!(out.certificate.verdict);
    }

    #[test]
    fn a1_below_a2_has_no_admissible_point() {
        let bx = SearchBox {
            d: (0.6, 0.9),
            a1: (0.9, 1.0),
            a2: (1.0, 1.2),
            a3: (0.1, 0.5),
        };
        let cfg = SearchConfig {
            grid_points: 3,
            ..SearchConfig::default()
        };
        assert!(matches!(search_params(&bx, &cfg), Err(Error::NoAdmissible(_))));
    }
}
