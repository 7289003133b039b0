use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use zerobound::kernel::*;
use zerobound::{KernelPoint, Params};

const PUBLISHED_ROOTS: [f64; 7] = [
    -0.791_179_404_6, -0.345_961_321_1, 0.052_030_792_8, 0.909_110_093_7, 1.335_121_235_5, 2.749_948_513_6, 5.863_458_832_8,
];

#[test]
fn certificate_at_default_point() {
    let cert = verify_lemma21(&Params::paper(), None);
    assert!(cert.verdict, "{:?}", cert.failure);
    assert!(cert.grid_max.value <= 1e-9);
    assert!(cert.boundary_margin <= 1e-9);
    assert_eq!(cert.roots.len(), 7);
    assert_eq!(cert.maxima.len(), 3);
    for (m, want) in cert.maxima.iter().zip([(-0.34596, -0.00019160), (0.90911, -0.00022458), (2.74995, -0.00015247)]) {
        assert_abs_diff_eq!(m.t, want.0, epsilon = 1e-5);
        assert_abs_diff_eq!(m.h, want.1, epsilon = 1e-8);
    }
    assert!(cert.t0 > 40.0 && cert.t0 < 42.0);
}

#[test]
fn roots_match_reference_and_are_stable() {
    let p = Params::paper();
    let roots = find_h_prime_roots(&p).unwrap();
    for (r, want) in roots.iter().zip(PUBLISHED_ROOTS) {
        assert!((r - want).abs() < 1e-8, "{r} vs {want}");
    }
    let shifted = find_h_prime_roots_with(
        &p,
        &RootConfig {
            grid_shift: 1e-6,
            ..RootConfig::default()
        },
    )
    .unwrap();
    assert_eq!(shifted.len(), roots.len());
    for (a, b) in roots.iter().zip(&shifted) {
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}

#[test]
fn search_reaches_published_objective() {
    let out = search_params(&SearchBox::default(), &SearchConfig::default()).unwrap();
    assert!(out.certificate.verdict);
    assert!(out.objective <= 0.77254, "{}", out.objective);
    assert_abs_diff_eq!(out.objective, out.params.d * out.params.a1, epsilon = 1e-15);
}

#[test]
fn default_point_is_near_the_ridge() {
    let p = Params::paper();
    let (q, worst) = minimal_a1(p.d, p.a1 + p.a2 - 2.0, &SearchBox::default(), &SearchConfig::default()).unwrap();
    assert!(worst <= 1e-9);
    assert!(q.a1 <= p.a1 + 1e-6 && q.a1 > p.a1 - 0.01);
}

fn admissible() -> impl Strategy<Value = (f64, f64)> {
    (-0.5f64..=0.5, prop_oneof![-60.0f64..-1e-3, 1e-3f64..60.0])
}

proptest! {
    #[test]
    fn f_is_odd_in_t((b, t) in admissible(), d in 0.51f64..2.0) {
        let a = eval_f(KernelPoint::new(b, t), d).unwrap();
        let c = eval_f(KernelPoint::new(b, -t), d).unwrap();
        prop_assert!((a + c).abs() <= 1e-13);
    }

    #[test]
    fn h_is_symmetric_in_b((b, t) in admissible()) {
        let p = Params::paper();
        let a = eval_H(KernelPoint::new(b, t), &p).unwrap();
        let c = eval_H(KernelPoint::new(-b, t), &p).unwrap();
        prop_assert!((a - c).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn kernel_is_sandwiched((b, t) in admissible()) {
        let p = Params::paper();
        let pt = KernelPoint::new(b, t);
        let f = eval_f(pt, p.d).unwrap();
        prop_assert!(f <= eval_majorant(pt, &p).unwrap() + 1e-9);
        prop_assert!(f >= -eval_majorant_lower(pt, &p).unwrap() - 1e-9);
    }

    #[test]
    fn tail_bound_dominates_far_out(t in 41.25f64..1e5, b in -0.5f64..=0.5, neg in any::<bool>()) {
        let p = Params::paper();
        let t = if neg { -t } else { t };
        prop_assert!(eval_H(KernelPoint::new(b, t), &p).unwrap() <= 0.0);
    }
}

#[test]
fn degenerate_parameters_are_reported() {
    let p = Params::new(0.722, 1.0, 1.0, 0.365);
    assert!(matches!(
        find_h_prime_roots(&p),
        Err(zerobound::Error::PolynomialDegree { expected: 13, found: 12 })
    ));
    let cert = verify_lemma21(&p, None);
    assert!(!cert.verdict);
    assert!(eval_f(KernelPoint::new(0.7, 1.0), 0.722).is_err());
    assert!(eval_f(KernelPoint::new(0.0, 0.0), 0.722).is_err());
}
