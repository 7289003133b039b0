use num_complex::Complex64;
use proptest::prelude::*;
use zerobound::specfun::*;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn p(sigma: f64, t: f64) -> ComplexPoint<f64> {
    ComplexPoint::new(sigma, t)
}

/// Weierstrass product: `log Γ(s) = -γ s - log s + Σ (s/k - log(1 + s/k))`,
/// truncated at `n` with the `s²/(2k²)` tail summed in closed form.
fn weierstrass_im_log_gamma(s: Complex64, n: usize) -> f64 {
    let mut acc = -EULER_GAMMA * s - s.ln();
    for k in 1..=n {
        let k = k as f64;
        acc += s / k - (1.0 + s / k).ln();
    }
    let tail = 1.0 / n as f64 - 1.0 / (2.0 * (n as f64).powi(2));
    (acc + s * s / 2.0 * tail).im
}

/// `ψ(s) = -γ + Σ_{k>=0} (1/(k+1) - 1/(k+s))`, tail `(s-1)/n`.
fn series_digamma(s: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(-EULER_GAMMA, 0.0);
    for k in 0..n {
        let k = k as f64;
        acc += 1.0 / (k + 1.0) - 1.0 / (k + s);
    }
    acc + (s - 1.0) / n as f64
}

/// `ψ₁(s) = Σ 1/(k+s)²`, tail `1/(n + s - 1/2)`.
fn series_trigamma(s: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += 1.0 / ((k as f64 + s) * (k as f64 + s));
    }
    acc + 1.0 / (n as f64 + s - 0.5)
}

#[test]
fn lemma_grid_has_no_violations() {
    let sigmas = lemma_sigmas(0.722);
    let heights = linear_heights(0.5, 100.0, 200).unwrap();
    let rows = certify_grid(&sigmas, &heights).unwrap();
    assert_eq!(rows.len(), 4 * 200 * 4);
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(bad.is_empty(), "{} violations, first {:?}", bad.len(), bad.first());
}

#[test]
fn reference_against_product_and_series() {
    let cfg = ReferenceConfig::default();
    for &(s, t) in &[(1.0, 1.0), (0.611, 0.5), (1.944, 7.0), (0.972, 30.0)] {
        let z = Complex64::new(s, t);
        let lg = reference_log_gamma(p(s, t), 1e-12, &cfg).unwrap();
        assert!((lg.im - weierstrass_im_log_gamma(z, 200_000)).abs() < 1e-6, "log Γ at {z}");
        let dg = reference_digamma(p(s, t), 1e-12, &cfg).unwrap();
        assert!((dg - series_digamma(z, 200_000)).norm() < 1e-6, "ψ at {z}");
        let tg = reference_trigamma(p(s, t), 1e-12, &cfg).unwrap();
        assert!((tg - series_trigamma(z, 200_000)).norm() < 1e-8, "ψ₁ at {z}");
    }
}

#[test]
fn reference_special_values() {
    let cfg = ReferenceConfig::default();
    for s in [1.0, 2.0] {
        assert!(reference_log_gamma(p(s, 0.0), 1e-13, &cfg).unwrap().norm() < 1e-13);
    }
    let g = reference_digamma(p(1.0, 0.0), 1e-13, &cfg).unwrap();
    assert!((g.re + EULER_GAMMA).abs() < 1e-13);
    let z2 = reference_trigamma(p(1.0, 0.0), 1e-13, &cfg).unwrap();
    assert!((z2.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    assert!(reference_log_gamma(p(-0.5, 1.0), 1e-12, &cfg).is_err());
}

#[test]
fn binet_kernels() {
    let report = binet_kernel_checks();
    assert!(report.all_pass(), "{:?}", report.first_violation());
}

proptest! {
    #[test]
    fn approximation_within_radius(sigma in 0.3f64..3.0, t in -150.0f64..150.0) {
        let rows = check_point(p(sigma, t), &ReferenceConfig::default()).unwrap();
        for r in rows {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn im_log_gamma_is_odd(sigma in 0.01f64..10.0, t in 0.0f64..1e3) {
        let a = im_log_gamma(p(sigma, t)).unwrap().value;
        let b = im_log_gamma(p(sigma, -t)).unwrap().value;
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn radius_decreases_along_rays(ratio in 0.05f64..1.0, r in 0.5f64..50.0, k in 1.01f64..4.0) {
        let at = |m: f64| p(ratio * m, m * (1.0 - ratio * ratio).sqrt());
        prop_assert!(log_gamma_radius(at(k * r)) < log_gamma_radius(at(r)));
        prop_assert!(digamma_radius(at(k * r)) < digamma_radius(at(r)));
        prop_assert!(trigamma_radius(at(k * r)) < trigamma_radius(at(r)));
    }
}
