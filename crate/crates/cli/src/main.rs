use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use zerobound::factors::{scan_gamma_residuals, FieldSignature, ResidualForm, ScanConfig};
use zerobound::kernel::{search_params, verify_lemma21_with, Params, SearchBox, SearchConfig, VerifyConfig};
use zerobound::primes::prime_sum_report;
use zerobound::specfun::{certify_grid, lemma_sigmas, linear_heights};
use zerobound::theorem::{assemble_envelope, height_grid, validate, LemmaConstants};
use zerobound_cli::{emit, full_certify, gamma_rows, to_csv, to_json, OutputFormat, RunConfig, SpecfunRow, ZeroSource};

#[derive(Parser)]
#[command(name = "zerobound", version, about = "Recompute and check explicit zero-counting envelopes")]
struct Cli {
    /// Kernel parameters as d,a1,a2,a3.
    #[arg(long, global = true, value_parser = parse_params)]
    params: Option<Params<f64>>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Binet approximations against the reference route.
    SpecfunTable {
        /// Real part; defaults to the four points used by the gamma estimates.
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        t_min: f64,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary certificate for the kernel inequality.
    VerifyLemma21 {
        #[arg(long)]
        d: Option<f64>,
        #[arg(long)]
        a1: Option<f64>,
        #[arg(long)]
        a2: Option<f64>,
        #[arg(long)]
        a3: Option<f64>,
        #[arg(long)]
        grid_b: Option<usize>,
        #[arg(long)]
        grid_t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimise d*a1 over admissible parameters.
    SearchParams {
        /// Ranges as d=lo:hi,a1=lo:hi,a2=lo:hi,a3=lo:hi.
        #[arg(long = "box")]
        search_box: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gamma factor residuals with running extremes.
    GammaCheck {
        #[arg(long, default_value_t = 1.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, value_enum, default_value = "published")]
        form: Form,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euler product sums for the zeta factor.
    PrimeSums {
        #[arg(long, default_value_t = zerobound::primes::DEFAULT_CUTOFF)]
        cutoff: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Envelope for N_K(T) of one field.
    Bound {
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        nk: Option<u32>,
        #[arg(long, default_value_t = 1)]
        r1: u32,
        #[arg(long, default_value_t = 0)]
        r2: u32,
        #[arg(long, default_value_t = 0.0)]
        log_dk: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Riemann zero counts against the envelope.
    Validate {
        /// Zero table; falls back to $ZEROBOUND_ZEROS, then the bundled table.
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        t_min: f64,
        #[arg(long, default_value_t = 99.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every stage, one JSON bundle; exit status 0 iff all pass.
    FullCertify {
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Skip the zero-table validation.
        #[arg(long)]
        no_zeros: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Form {
    Published,
    Certified,
}

fn parse_params(s: &str) -> std::result::Result<Params<f64>, String> {
    Params::parse(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but its check failed.
fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let params = cli.params.unwrap_or_default();
    match cli.command {
        Command::SpecfunTable {
            sigma,
            t_min,
            t_max,
            steps,
            out,
        } => {
            let sigmas = match sigma {
                Some(s) => vec![s],
                None => lemma_sigmas(params.d).to_vec(),
            };
            let rows = certify_grid(&sigmas, &linear_heights(t_min, t_max, steps)?)?;
            emit(out.as_deref(), &to_csv(rows.iter().map(SpecfunRow::from))?)?;
            let bad = rows.iter().filter(|r| !r.pass).count();
            if bad > 0 {
                eprintln!("{bad} of {} checks outside the remainder radius", rows.len());
            }
            Ok(bad == 0)
        }
        Command::VerifyLemma21 {
            d,
            a1,
            a2,
            a3,
            grid_b,
            grid_t,
            out,
        } => {
            let p = Params::new(
                d.unwrap_or(params.d),
                a1.unwrap_or(params.a1),
                a2.unwrap_or(params.a2),
                a3.unwrap_or(params.a3),
            );
            let mut cfg = VerifyConfig::default();
            cfg.grid_b = grid_b.unwrap_or(cfg.grid_b);
            cfg.grid_t = grid_t.unwrap_or(cfg.grid_t);
            let cert = verify_lemma21_with(&p, None, &cfg);
            emit(out.as_deref(), &to_json(&cert)?)?;
            if let Some(reason) = &cert.failure {
                eprintln!("not admissible: {reason}");
            }
            Ok(cert.verdict)
        }
        Command::SearchParams { search_box, out } => {
            let bx = match search_box {
                Some(s) => SearchBox::parse(&s).map_err(anyhow::Error::msg)?,
                None => SearchBox::default(),
            };
            let best = search_params(&bx, &SearchConfig::default())?;
            emit(out.as_deref(), &to_json(&best)?)?;
            Ok(best.certificate.verdict)
        }
        Command::GammaCheck {
            t_min,
            t_max,
            steps,
            form,
            format,
            out,
        } => {
            let cfg = ScanConfig {
                t_min,
                t_max,
                points: steps,
                ..ScanConfig::default()
            };
            let form = match form {
                Form::Published => ResidualForm::Published,
                Form::Certified => ResidualForm::Certified,
            };
            let scan = scan_gamma_residuals(&params, form, &cfg)?;
            let body = match format {
                OutputFormat::Csv => to_csv(gamma_rows(&scan))?,
                OutputFormat::Json => to_json(&scan)?,
            };
            emit(out.as_deref(), &body)?;
            Ok(true)
        }
        Command::PrimeSums { cutoff, out } => {
            let report = prime_sum_report(cutoff, &params)?;
            emit(out.as_deref(), &to_json(&report)?)?;
            Ok(true)
        }
        Command::Bound {
            t,
            nk,
            r1,
            r2,
            log_dk,
            out,
        } => {
            let sig = match nk {
                Some(n) => FieldSignature::with_degree(n, r1, r2, log_dk)?,
                None => FieldSignature::new(r1, r2, log_dk)?,
            };
            let env = assemble_envelope(t, &sig, &params, &LemmaConstants::paper())?;
            emit(out.as_deref(), &to_json(&env)?)?;
            Ok(true)
        }
        Command::Validate {
            zeros,
            t_min,
            t_max,
            step,
            format,
            out,
        } => {
            let Some(table) = ZeroSource::resolve(zeros, false).load()? else {
                bail!("no zero table");
            };
            let report = validate(&table, &height_grid(t_min, t_max, step)?)?;
            let body = match format {
                OutputFormat::Csv => to_csv(&report.rows)?,
                OutputFormat::Json => to_json(&report)?,
            };
            emit(out.as_deref(), &body)?;
            if let Some((m, at)) = report.min_margin {
                eprintln!("{} heights, smallest margin {m:.4} at T = {at}", report.rows.len());
            }
            Ok(report.all_inside)
        }
        Command::FullCertify { zeros, no_zeros, out } => {
            let cfg = RunConfig {
                params,
                zeros: ZeroSource::resolve(zeros, no_zeros),
                ..RunConfig::default()
            };
            let bundle = full_certify(&cfg)?;
            emit(out.as_deref(), bundle.to_json()?.as_bytes())?;
            for s in &bundle.stages {
                eprintln!("{:<10} {:?} {}", s.name, s.status, s.detail);
            }
            if let Some(stage) = &bundle.first_failure {
                eprintln!("failed at stage {stage}");
            }
            Ok(bundle.pass)
        }
    }
}
