//! Zero tables and the half-weight counting function.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bound_nk, corollary_riemann};
use crate::error::{Error, Result};
use crate::factors::FieldSignature;

/// Ordinates closer than this to `T` count as lying on it.
pub const ORDINATE_TOLERANCE: f64 = 1e-9;

const BUNDLED: &str = include_str!("../../data/riemann_zeros_100.txt");

/// Ascending positive ordinates of zeros in the upper half of the strip.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub ordinates: Vec<f64>,
    pub source: String,
}

impl ZeroTable {
    /// The first hundred Riemann zeros shipped with the crate.
    pub fn bundled() -> Self {
        parse_zero_table(BUNDLED, "bundled: first 100 Riemann zeros").expect("bundled table parses")
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Largest ordinate, or 0 for an empty table.
    pub fn last(&self) -> f64 {
        self.ordinates.last().copied().unwrap_or(0.0)
    }
}

/// One ordinate per line; blank lines and `#` comments are skipped. The
/// provenance is the comment header if present, else `source`.
pub fn parse_zero_table(text: &str, source: &str) -> Result<ZeroTable> {
    let mut ordinates: Vec<f64> = Vec::new();
    let mut header = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.split_once('#') {
            Some((before, comment)) => {
                if ordinates.is_empty() && before.trim().is_empty() {
                    header.push(comment.trim().to_string());
                }
                before
            }
            None => raw,
        }
        .trim();
        if body.is_empty() {
            continue;
        }
        let x: f64 = body.parse().map_err(|e| Error::Parse {
            line,
            detail: format!("{body:?}: {e}"),
        })?;
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Parse {
                line,
                detail: format!("ordinate must be positive and finite, got {x}"),
            });
        }
        if let Some(&prev) = ordinates.last() {
            if x <= prev {
                return Err(Error::NotAscending { line, prev, next: x });
            }
        }
        ordinates.push(x);
    }
    let source = if header.is_empty() {
        source.to_string()
    } else {
        format!("{source} ({})", header.join(" "))
    };
    Ok(ZeroTable { ordinates, source })
}

pub fn load_zero_table(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_zero_table(&text, &path.display().to_string())
}

/// `#{γ < T} + #{γ = T}/2` over the table, with ordinates within
/// [`ORDINATE_TOLERANCE`] of `T` taken as equal.
pub fn count_zeros(table: &ZeroTable, t: f64) -> f64 {
    let below = table.ordinates.partition_point(|&g| g < t - ORDINATE_TOLERANCE);
    let upto = table.ordinates.partition_point(|&g| g <= t + ORDINATE_TOLERANCE);
    below as f64 + 0.5 * (upto - below) as f64
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ValidationRow {
    pub t: f64,
    /// `N(T)` on the upper half of the strip.
    pub count: f64,
    /// `(T/2π) log(T/2πe)`.
    pub main: f64,
    pub radius: f64,
    pub deviation: f64,
    /// `radius - |deviation|`.
    pub margin: f64,
    pub inside: bool,
    /// `2 N(T)` inside the rational-field envelope of the main theorem.
    pub strip_inside: bool,
    pub strip_margin: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub source: String,
    pub rows: Vec<ValidationRow>,
    pub all_inside: bool,
    /// Smallest margin and where it occurs; `None` for an empty grid.
    pub min_margin: Option<(f64, f64)>,
    pub mean_margin: Option<f64>,
}

/// Check the table counts against both envelopes on every grid point.
pub fn validate(table: &ZeroTable, t_grid: &[f64]) -> Result<ValidationReport> {
    let last = table.last();
    if let Some(&t) = t_grid.iter().find(|&&t| !(t < last)) {
        return Err(Error::Coverage { t, last });
    }
    let rational = FieldSignature::rational();
    let rows = t_grid
        .par_iter()
        .map(|&t| {
            let count = count_zeros(table, t);
            let (lo, hi) = corollary_riemann(t)?;
            let (slo, shi) = bound_nk(t, &rational)?;
            let main = t / (2.0 * std::f64::consts::PI) * (t / (2.0 * std::f64::consts::PI * std::f64::consts::E)).ln();
            let radius = (hi - lo) / 2.0;
            let deviation = count - main;
            let strip = 2.0 * count;
            Ok(ValidationRow {
                t,
                count,
                main,
                radius,
                deviation,
                margin: radius - deviation.abs(),
                inside: lo <= count && count <= hi,
                strip_inside: slo <= strip && strip <= shi,
                strip_margin: (strip - slo).min(shi - strip),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_margin = rows
        .iter()
        .map(|r| (r.margin, r.t))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    let mean_margin = (!rows.is_empty()).then(|| rows.iter().map(|r| r.margin).sum::<f64>() / rows.len() as f64);
    Ok(ValidationReport {
        source: table.source.clone(),
        all_inside: rows.iter().all(|r| r.inside && r.strip_inside),
        rows,
        min_margin,
        mean_margin,
    })
}

/// `t_min, t_min + step, ...` up to `t_max` inclusive (within rounding).
pub fn height_grid(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(t_max >= t_min) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::domain(
            "height_grid",
            format!("need finite t_min <= t_max and step > 0, got {t_min}, {t_max}, {step}"),
        ));
    }
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| t_min + k as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table() {
        let z = ZeroTable::bundled();
        assert_eq!(z.len(), 100);
        assert!((z.ordinates[0] - 14.134_725_141_734_693).abs() < 1e-15);
        assert!(z.source.contains("mpmath"));
        assert_eq!(count_zeros(&z, 14.0), 0.0);
        assert_eq!(count_zeros(&z, 15.0), 1.0);
        assert_eq!(count_zeros(&z, z.ordinates[1]), 1.5);
        assert_eq!(count_zeros(&z, 1e6), 100.0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_zero_table("1\nx\n", "t"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_zero_table("# c\n2\n1\n", "t"), Err(Error::NotAscending { line: 3, .. })));
        assert!(matches!(parse_zero_table("-1\n", "t"), Err(Error::Parse { line: 1, .. })));
        let z = parse_zero_table("\n 3.5 # inline\n4\n", "t").unwrap();
        assert_eq!(z.ordinates, vec![3.5, 4.0]);
        assert_eq!(z.source, "t");
    }

    #[test]
    fn grid_and_coverage() {
        let g = height_grid(1.0, 99.0, 0.5).unwrap();
        assert_eq!(g.len(), 197);
        assert_eq!(*g.last().unwrap(), 99.0);
        let z = ZeroTable::bundled();
        assert!(matches!(validate(&z, &[300.0]), Err(Error::Coverage { .. })));
        let empty = validate(&z, &[]).unwrap();
        assert!(empty.rows.is_empty() && empty.all_inside && empty.min_margin.is_none());
    }
}
