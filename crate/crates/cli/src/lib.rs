//! Report generation behind the `zerobound` binary.
//!
//! [`full_certify`] runs every stage and collects one [`ConstantRow`] per
//! published constant. The bundle holds no timestamps or timings, so equal
//! configurations serialize to identical bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use zerobound::factors::{
    e_s_squared, gamma_lemma_constants, scan_gamma_residuals, GammaScan, ResidualForm, ScanConfig,
};
use zerobound::kernel::{verify_lemma21_with, Lemma21Certificate, Params, VerifyConfig};
use zerobound::primes::{default_alpha_grid, prime_sum_report, verify_prime_power_reduction, DEFAULT_CUTOFF};
use zerobound::specfun::{certify_grid, lemma_sigmas, linear_heights, GridCheck};
use zerobound::theorem::{
    height_grid, load_zero_table, validate, CorollaryConstants, LemmaConstants, TheoremConstants, ValidationReport,
    ZeroTable,
};

/// Environment variable naming the default zero table.
pub const ZEROS_ENV: &str = "ZEROBOUND_ZEROS";

/// Published values the certificate compares against.
pub mod published {
    pub const ROOTS: [f64; 7] = [
        -0.791_179_404_6,
        -0.345_961_321_1,
        0.052_030_792_8,
        0.909_110_093_7,
        1.335_121_235_5,
        2.749_948_513_6,
        5.863_458_832_8,
    ];
    pub const MAXIMA: [f64; 3] = [-0.00019, -0.00022, -0.00015];
    pub const ROOT_TOLERANCE: f64 = 2e-3;
    pub const MAXIMA_TOLERANCE: f64 = 5e-5;
    pub const S_UPPER: f64 = 2.381;
    pub const S_LOWER: f64 = 1.458;
    pub const GAMMA1_UPPER: f64 = 0.049;
    pub const GAMMA1_LOWER: f64 = -0.25;
    pub const GAMMA2_UPPER: f64 = 0.515;
    pub const GAMMA2_LOWER: f64 = 0.0;
    pub const GAMMA_UPPER: f64 = 0.258;
    pub const GAMMA_LOWER: f64 = -0.25;
    pub const HEAD: f64 = 1.1084;
    pub const TAIL: f64 = 4.5243;
    pub const ZETA: f64 = 5.633;
    pub const C: f64 = 0.304;
    pub const LOG_COEFFICIENT: f64 = 0.194;
    pub const PER_DEGREE: f64 = 5.543;
    pub const CENTER: f64 = 1.919;
    pub const RADIUS: f64 = 0.462;
    pub const RATIONAL_CONSTANT: f64 = 6.005;
    pub const COROLLARY_LOG: f64 = 0.097;
    pub const COROLLARY_CONSTANT: f64 = 3.962;
    pub const VALIDATION_MARGIN: f64 = 2.0;
}

/// Where the validation stage reads zeros from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Bundled,
    File(PathBuf),
    Skip,
}

impl ZeroSource {
    /// `--zeros`, else the environment variable, else the bundled table.
    pub fn resolve(flag: Option<PathBuf>, skip: bool) -> Self {
        if skip {
            return Self::Skip;
        }
        match flag.or_else(|| std::env::var_os(ZEROS_ENV).map(PathBuf::from)) {
            Some(p) => Self::File(p),
            None => Self::Bundled,
        }
    }

    pub fn load(&self) -> Result<Option<ZeroTable>> {
        Ok(match self {
            Self::Bundled => Some(ZeroTable::bundled()),
            Self::File(p) => Some(load_zero_table(p).with_context(|| format!("loading zero table {}", p.display()))?),
            Self::Skip => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Settings shared by every stage of [`full_certify`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: Params<f64>,
    pub gamma_scan: ScanConfig,
    pub cutoff: u64,
    /// Largest prime power exponent in the reduction check.
    pub reduction_m_max: u32,
    pub specfun_heights: (f64, f64, usize),
    pub zeros: ZeroSource,
    pub validation_grid: (f64, f64, f64),
    /// Allowed `|recomputed - published|` for rows that must match.
    pub match_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: Params::paper(),
            gamma_scan: ScanConfig::default(),
            cutoff: DEFAULT_CUTOFF,
            reduction_m_max: 10,
            specfun_heights: (0.5, 100.0, 200),
            zeros: ZeroSource::Bundled,
            validation_grid: (1.0, 99.0, 0.5),
            match_tolerance: 1e-12,
        }
    }
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        anyhow::ensure!(self.match_tolerance > 0.0, "match tolerance must be positive");
        anyhow::ensure!(self.cutoff >= 2, "prime cutoff must be at least 2");
        anyhow::ensure!(self.reduction_m_max >= 2, "reduction needs m_max >= 2");
        anyhow::ensure!(self.specfun_heights.2 > 0, "specfun grid needs at least one height");
        anyhow::ensure!(self.validation_grid.2 > 0.0, "validation step must be positive");
        Ok(())
    }
}

/// How a row compares the recomputed value with the published one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// recomputed <= published
    AtMost,
    /// recomputed >= published
    AtLeast,
    /// |recomputed - published| <= tolerance
    Within(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub stage: String,
    pub name: String,
    pub paper: f64,
    pub recomputed: f64,
    pub relation: Relation,
    /// Distance to failure; negative when the row fails.
    pub slack: f64,
    pub pass: bool,
}

impl ConstantRow {
    pub fn new(stage: &str, name: &str, paper: f64, recomputed: f64, relation: Relation) -> Self {
        let slack = match relation {
            Relation::AtMost => paper - recomputed,
            Relation::AtLeast => recomputed - paper,
            Relation::Within(tol) => tol - (recomputed - paper).abs(),
        };
        Self {
            stage: stage.into(),
            name: name.into(),
            paper,
            recomputed,
            relation,
            slack,
            pass: slack >= 0.0 && recomputed.is_finite(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageReport {
    pub name: String,
    pub status: StageStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifyBundle {
    pub config: RunConfig,
    pub stages: Vec<StageReport>,
    pub rows: Vec<ConstantRow>,
    pub first_failure: Option<String>,
    pub pass: bool,
}

impl CertifyBundle {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

struct Stage {
    name: &'static str,
    rows: Vec<ConstantRow>,
    flags: Vec<(String, bool)>,
    detail: String,
}

impl Stage {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            rows: Vec::new(),
            flags: Vec::new(),
            detail: String::new(),
        }
    }

    fn row(&mut self, name: &str, paper: f64, recomputed: f64, relation: Relation) {
        self.rows.push(ConstantRow::new(self.name, name, paper, recomputed, relation));
    }

    fn flag(&mut self, what: impl Into<String>, ok: bool) {
        self.flags.push((what.into(), ok));
    }

    fn report(&self) -> StageReport {
        let failed: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.clone())
            .chain(self.flags.iter().filter(|f| !f.1).map(|f| f.0.clone()))
            .collect();
        let mut detail = self.detail.clone();
        if !failed.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("failed: {}", failed.join(", ")));
        }
        StageReport {
            name: self.name.into(),
            status: if failed.is_empty() { StageStatus::Pass } else { StageStatus::Fail },
            detail,
        }
    }
}

pub fn lemma21_rows(cert: &Lemma21Certificate) -> Vec<ConstantRow> {
    let mut s = Stage::new("lemma21");
    lemma21_stage(&mut s, cert);
    s.rows
}

fn lemma21_stage(s: &mut Stage, cert: &Lemma21Certificate) {
    s.flag(
        format!("verdict ({})", cert.failure.as_deref().unwrap_or("admissible")),
        cert.verdict,
    );
    s.row("root_count", 7.0, cert.roots.len() as f64, Relation::Within(0.0));
    if cert.roots.len() == published::ROOTS.len() {
        for (i, (&r, &p)) in cert.roots.iter().zip(&published::ROOTS).enumerate() {
            s.row(&format!("root_{}", i + 1), p, r, Relation::Within(published::ROOT_TOLERANCE));
        }
    }
    if cert.maxima.len() == published::MAXIMA.len() {
        for (i, (m, &p)) in cert.maxima.iter().zip(&published::MAXIMA).enumerate() {
            s.row(&format!("local_max_{}", i + 1), p, m.h, Relation::Within(published::MAXIMA_TOLERANCE));
        }
    } else {
        s.flag(format!("{} local maxima instead of 3", cert.maxima.len()), false);
    }
    s.row("boundary_max", 0.0, cert.boundary_margin, Relation::AtMost);
}

fn specfun_stage(s: &mut Stage, cfg: &RunConfig) -> Result<()> {
    let (lo, hi, n) = cfg.specfun_heights;
    let rows: Vec<GridCheck> = certify_grid(&lemma_sigmas(cfg.params.d), &linear_heights(lo, hi, n)?)?;
    let bad = rows.iter().filter(|r| !r.pass).count();
    s.row("violations", 0.0, bad as f64, Relation::Within(0.0));
    s.detail = format!("{} checks", rows.len());
    Ok(())
}

fn gamma_stage(s: &mut Stage, cfg: &RunConfig) -> Result<()> {
    let p = &cfg.params;
    let scan: GammaScan = scan_gamma_residuals(p, ResidualForm::Published, &cfg.gamma_scan)?;
    s.row("gamma1_upper_sup", published::GAMMA1_UPPER, scan.u1_sup.0, Relation::AtMost);
    s.row("gamma1_lower_inf", published::GAMMA1_LOWER, scan.l1_inf.0, Relation::AtLeast);
    s.flag("gamma1_lower_inf strictly above -0.25", scan.l1_inf.0 > published::GAMMA1_LOWER);
    s.row("gamma2_upper_sup", published::GAMMA2_UPPER, scan.u2_sup.0, Relation::AtMost);
    s.row("gamma2_lower_inf", published::GAMMA2_LOWER, scan.l2_inf.0, Relation::AtLeast);
    let g = gamma_lemma_constants(p, &cfg.gamma_scan)?;
    s.row("gamma_upper_per_degree", published::GAMMA_UPPER, g.upper_per_degree, Relation::AtMost);
    s.row("gamma_lower_per_degree", published::GAMMA_LOWER, g.lower_per_degree, Relation::AtLeast);
    let e1 = e_s_squared(1.0, p)?;
    let far = e_s_squared(1e6, p)?;
    s.row("s_squared_upper", published::S_UPPER, e1.upper, Relation::AtMost);
    s.row("s_squared_lower", published::S_LOWER, e1.lower, Relation::AtLeast);
    s.row("s_squared_upper_limit", 2.0, far.upper, Relation::Within(1e-6));
    s.row("s_squared_lower_limit", 2.0, far.lower, Relation::Within(1e-6));
    s.detail = format!("{} heights on [{}, {}]", scan.rows.len(), cfg.gamma_scan.t_min, cfg.gamma_scan.t_max);
    Ok(())
}

fn primes_stage(s: &mut Stage, cfg: &RunConfig) -> Result<()> {
    let p = &cfg.params;
    let r = prime_sum_report(cfg.cutoff, p)?;
    s.row("head", published::HEAD, r.head, Relation::AtMost);
    s.row("head_floor", 1.09, r.head, Relation::AtLeast);
    s.row("tail", published::TAIL, r.tail, Relation::AtMost);
    s.row("total", published::ZETA, r.total_per_degree, Relation::AtMost);
    s.row("c", published::C, r.c, Relation::AtMost);
    let c_formula = ((p.d * p.d * p.a2 / 2.0).powi(2) + (p.a3 / 2.0).powi(2)).sqrt();
    s.row("c_formula", c_formula, r.c, Relation::Within(1e-12));
    let red = verify_prime_power_reduction(&default_alpha_grid(), cfg.reduction_m_max, p)?;
    s.flag("prime power reduction", red.holds());
    s.detail = format!(
        "cutoff {}, {} reduction checks, direct-orientation head {:.6}",
        cfg.cutoff, red.checked, r.head_direct
    );
    Ok(())
}

fn theorem_stage(s: &mut Stage, cfg: &RunConfig) -> Result<()> {
    let c = TheoremConstants::derive(&cfg.params, &LemmaConstants::paper());
    let eq = Relation::Within(cfg.match_tolerance);
    s.row("log_coefficient", published::LOG_COEFFICIENT, c.log_coefficient, eq);
    s.row("per_degree", published::PER_DEGREE, c.per_degree, eq);
    s.row("center", published::CENTER, c.center, eq);
    s.row("radius", published::RADIUS, c.radius, eq);
    s.row("rational_constant", published::RATIONAL_CONSTANT, c.rational_constant, eq);
    let k = CorollaryConstants::from_theorem(&c);
    s.row("corollary_log_coefficient", published::COROLLARY_LOG, k.log_coefficient, eq);
    s.row("corollary_constant", published::COROLLARY_CONSTANT, k.constant, eq);
    // the same assembly from the unrounded lemma sums must not need more
    let parts = LemmaConstants::from_parts(
        published::S_UPPER,
        published::S_LOWER,
        published::GAMMA_UPPER,
        published::GAMMA_LOWER,
        published::ZETA,
    );
    let direct = TheoremConstants::derive(&cfg.params, &parts);
    s.row("per_degree_from_lemma_sums", published::PER_DEGREE, direct.raw.per_degree_exact_shift, Relation::AtMost);
    let recomputed = LemmaConstants::recompute(&cfg.params, &cfg.gamma_scan, cfg.cutoff)?;
    let own = TheoremConstants::derive(&cfg.params, &recomputed);
    s.row("per_degree_recomputed", published::PER_DEGREE, own.raw.per_degree_exact_shift, Relation::AtMost);
    s.row("radius_recomputed", published::RADIUS, own.radius, Relation::AtMost);
    s.detail = format!(
        "raw sums {:.3} / {:.3}, from lemma parts {:.3} / {:.3}",
        c.raw.upper_sum, c.raw.lower_sum, parts.upper_sum, parts.lower_sum
    );
    Ok(())
}

fn validation_stage(s: &mut Stage, table: &ZeroTable, cfg: &RunConfig) -> Result<ValidationReport> {
    let (lo, hi, step) = cfg.validation_grid;
    let report = validate(table, &height_grid(lo, hi, step)?)?;
    let outside = report.rows.iter().filter(|r| !(r.inside && r.strip_inside)).count();
    s.row("points_outside", 0.0, outside as f64, Relation::Within(0.0));
    if let Some((m, t)) = report.min_margin {
        s.row("min_margin", published::VALIDATION_MARGIN, m, Relation::AtLeast);
        s.detail = format!("{} heights, smallest margin at T = {t}", report.rows.len());
    }
    Ok(report)
}

/// Run every stage in order and stop at the first failing one.
pub fn full_certify(cfg: &RunConfig) -> Result<CertifyBundle> {
    cfg.check()?;
    let mut stages = Vec::new();
    let mut rows = Vec::new();
    let mut first_failure = None;

    let cert = verify_lemma21_with(&cfg.params, None, &VerifyConfig::default());
    type Runner = fn(&mut Stage, &RunConfig, &Lemma21Certificate) -> Result<()>;
    let runners: [(&'static str, Runner); 5] = [
        ("lemma21", |s, _, cert| {
            lemma21_stage(s, cert);
            Ok(())
        }),
        ("specfun", |s, cfg, _| specfun_stage(s, cfg)),
        ("gamma", |s, cfg, _| gamma_stage(s, cfg)),
        ("primes", |s, cfg, _| primes_stage(s, cfg)),
        ("theorem", |s, cfg, _| theorem_stage(s, cfg)),
    ];
    for (name, run) in runners {
        let mut stage = Stage::new(name);
        if let Err(e) = run(&mut stage, cfg, &cert) {
            stage.flag(format!("error: {e:#}"), false);
        }
        let report = stage.report();
        let failed = report.status == StageStatus::Fail;
        stages.push(report);
        rows.extend(stage.rows);
        if failed {
            first_failure = Some(name.to_string());
            break;
        }
    }

    if first_failure.is_none() {
        let mut stage = Stage::new("validation");
        let report = match cfg.zeros.load() {
            Ok(Some(table)) => {
                if let Err(e) = validation_stage(&mut stage, &table, cfg) {
                    stage.flag(format!("error: {e:#}"), false);
                }
                stage.report()
            }
            Ok(None) => StageReport {
                name: "validation".into(),
                status: StageStatus::Skipped,
                detail: "no zero table configured".into(),
            },
            Err(e) => {
                stage.flag(format!("error: {e:#}"), false);
                stage.report()
            }
        };
        if report.status == StageStatus::Fail {
            first_failure = Some("validation".into());
        }
        stages.push(report);
        rows.extend(stage.rows);
    }

    Ok(CertifyBundle {
        config: cfg.clone(),
        pass: first_failure.is_none(),
        stages,
        rows,
        first_failure,
    })
}

/// Write to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, body: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body)?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

pub fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
}

/// CSV row for `specfun-table`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecfunRow {
    pub function: &'static str,
    pub sigma: f64,
    pub t: f64,
    pub value: f64,
    pub remainder_radius: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub pass: bool,
}

impl From<&GridCheck> for SpecfunRow {
    fn from(g: &GridCheck) -> Self {
        Self {
            function: g.function.name(),
            sigma: g.sigma,
            t: g.t,
            value: g.value,
            remainder_radius: g.remainder_radius,
            reference: g.reference,
            abs_error: g.abs_error,
            pass: g.pass,
        }
    }
}

/// CSV row for `gamma-check`: residuals at one height and the running
/// extremes up to it.
#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    pub t: f64,
    pub u1: f64,
    pub l1: f64,
    pub u2: f64,
    pub l2: f64,
    pub u1_sup: f64,
    pub l1_inf: f64,
    pub u2_sup: f64,
    pub l2_inf: f64,
}

pub fn gamma_rows(scan: &GammaScan) -> Vec<GammaRow> {
    let mut ext = [f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY];
    scan.rows
        .iter()
        .map(|r| {
            ext = [ext[0].max(r.u1), ext[1].min(r.l1), ext[2].max(r.u2), ext[3].min(r.l2)];
            GammaRow {
                t: r.t,
                u1: r.u1,
                l1: r.l1,
                u2: r.u2,
                l2: r.l2,
                u1_sup: ext[0],
                l1_inf: ext[1],
                u2_sup: ext[2],
                l2_inf: ext[3],
            }
        })
        .collect()
}
