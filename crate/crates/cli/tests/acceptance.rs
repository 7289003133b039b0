//! The eight acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use zerobound::factors::{e_s_squared, scan_gamma_residuals, ResidualForm, ScanConfig};
use zerobound::kernel::{verify_lemma21, Params};
use zerobound::primes::{c_constant, default_alpha_grid, head_sum, tail_bound, verify_prime_power_reduction};
use zerobound::specfun::{certify_grid, lemma_sigmas, linear_heights};
use zerobound::theorem::{height_grid, validate, LemmaConstants, TheoremConstants, ZeroTable};
use zerobound_cli::published;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn lemma21(p: &Params<f64>) -> Outcome {
    let cert = verify_lemma21(p, None);
    let roots_ok = cert.roots.len() == 7
        && cert.roots.iter().zip(published::ROOTS).all(|(r, e)| (r - e).abs() <= published::ROOT_TOLERANCE);
    let root_err = cert.roots.iter().zip(published::ROOTS).map(|(r, e)| (r - e).abs()).fold(0.0, f64::max);
    let max_err = cert.maxima.iter().zip(published::MAXIMA).map(|(m, e)| (m.h - e).abs()).fold(0.0, f64::max);
    let maxima_ok = cert.maxima.len() == 3 && max_err <= published::MAXIMA_TOLERANCE;
    let boundary_ok = cert.boundary_margin <= 1e-9;
    check(
        cert.verdict && roots_ok && maxima_ok && boundary_ok,
        format!(
            "admissible={} roots={} max|root err|={root_err:.1e} max|h max err|={max_err:.1e} boundary max H={:.1e}",
            cert.verdict,
            cert.roots.len(),
            cert.boundary_margin
        ),
    )
}

fn specfun(p: &Params<f64>) -> Outcome {
    let rows = certify_grid(&lemma_sigmas(p.d), &linear_heights(0.5, 100.0, 200).unwrap()).unwrap();
    let bad = rows.iter().filter(|r| !r.pass).count();
    check(bad == 0 && rows.len() == 3200, format!("{} checks on 4x200 points, {bad} violations", rows.len()))
}

fn gamma(p: &Params<f64>) -> Outcome {
    let cfg = ScanConfig::default();
    let s = scan_gamma_residuals(p, ResidualForm::Published, &cfg).unwrap();
    let ok = s.u1_sup.0 <= published::GAMMA1_UPPER
        && s.l1_inf.0 > published::GAMMA1_LOWER
        && s.u2_sup.0 <= published::GAMMA2_UPPER
        && s.l2_inf.0 >= published::GAMMA2_LOWER
        && cfg.points == 10_000
        && cfg.geometric;
    check(
        ok,
        format!(
            "gamma1 in [{:.5}, {:.5}], gamma2 in [{:.5}, {:.5}] over {} points",
            s.l1_inf.0,
            s.u1_sup.0,
            s.l2_inf.0,
            s.u2_sup.0,
            s.rows.len()
        ),
    )
}

fn s_squared(p: &Params<f64>) -> Outcome {
    let e = e_s_squared(1.0, p).unwrap();
    let far = e_s_squared(1e6, p).unwrap();
    let ok = e.upper <= published::S_UPPER
        && e.lower >= published::S_LOWER
        && (e.upper - published::S_UPPER).abs() <= 1e-3
        && (e.lower - published::S_LOWER).abs() <= 1e-3
        && (far.upper - 2.0).abs() <= 1e-6
        && (far.lower - 2.0).abs() <= 1e-6;
    check(
        ok,
        format!(
            "E_u(1)={:.6} E_l(1)={:.6}; at 1e6: {:.9}, {:.9}",
            e.upper, e.lower, far.upper, far.lower
        ),
    )
}

fn primes(p: &Params<f64>) -> Outcome {
    let head = head_sum(79, p).unwrap();
    let tail = tail_bound(79, p).unwrap();
    let c = c_constant(p);
    let c_formula = ((p.d * p.d * p.a2 / 2.0).powi(2) + (p.a3 / 2.0).powi(2)).sqrt();
    let red = verify_prime_power_reduction(&default_alpha_grid(), 10, p).unwrap();
    let ok = (1.09..=published::HEAD).contains(&head)
        && tail <= published::TAIL
        && head + tail <= published::ZETA
        && c <= published::C
        && (c - c_formula).abs() <= 1e-12
        && red.holds();
    check(
        ok,
        format!(
            "head={head:.6} tail={tail:.6} total={:.6} c={c:.9} reduction {} checks holds={}",
            head + tail,
            red.checked,
            red.holds()
        ),
    )
}

fn theorem(p: &Params<f64>) -> Outcome {
    let c = TheoremConstants::derive(p, &LemmaConstants::paper());
    let got = [c.log_coefficient, c.per_degree, c.radius, c.center, c.rational_constant];
    let want = [
        published::LOG_COEFFICIENT,
        published::PER_DEGREE,
        published::RADIUS,
        published::CENTER,
        published::RATIONAL_CONSTANT,
    ];
    check(got == want, format!("derived {got:?}, raw per-degree {:.5}", c.raw.per_degree))
}

fn validation() -> Outcome {
    let report = validate(&ZeroTable::bundled(), &height_grid(1.0, 99.0, 0.5).unwrap()).unwrap();
    let (m, at) = report.min_margin.unwrap();
    check(
        report.all_inside && report.rows.len() == 197 && m >= published::VALIDATION_MARGIN,
        format!("{} heights all inside={}, smallest margin {m:.4} at T={at}", report.rows.len(), report.all_inside),
    )
}

fn pipeline() -> Outcome {
    let status = Command::new(env!("CARGO_BIN_EXE_zerobound"))
        .args(["full-certify", "--out", std::env::temp_dir().join("zerobound-acceptance.json").to_str().unwrap()])
        .stderr(std::process::Stdio::null())
        .status()
        .expect("spawn zerobound");
    check(status.success(), status.to_string())
}

fn main() -> ExitCode {
    let p = Params::paper();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 kernel certificate", Duration::from_secs(30), Box::new(|| lemma21(&p))),
        ("2 special functions", Duration::from_secs(10), Box::new(|| specfun(&p))),
        ("3 gamma residual ranges", Duration::from_secs(60), Box::new(|| gamma(&p))),
        ("4 s(s-1) constants", Duration::MAX, Box::new(|| s_squared(&p))),
        ("5 prime sums", Duration::from_secs(60), Box::new(|| primes(&p))),
        ("6 theorem constants", Duration::MAX, Box::new(|| theorem(&p))),
        ("7 zero-table validation", Duration::from_secs(5), Box::new(validation)),
        ("8 full pipeline", Duration::from_secs(180), Box::new(pipeline)),
    ];
    let mut failures = 0;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= *budget;
        let limit = if *budget == Duration::MAX { String::new() } else { format!(" / {}s", budget.as_secs()) };
        println!(
            "{} {name:<26} {:>7.2}s{limit}  {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
        failures += usize::from(!pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
