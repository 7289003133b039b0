use proptest::prelude::*;
use zerobound::factors::{FieldSignature, ScanConfig};
use zerobound::kernel::Params;
use zerobound::theorem::*;

fn rational() -> FieldSignature {
    FieldSignature::rational()
}

#[test]
fn recomputed_lemmas_support_published_constants() {
    let p = Params::<f64>::paper();
    let lemmas = LemmaConstants::recompute(&p, &ScanConfig::default(), 79).unwrap();
    assert_eq!((lemmas.s_upper, lemmas.s_lower), (2.381, 1.458));
    assert_eq!((lemmas.gamma_upper, lemmas.gamma_lower), (0.258, -0.25));
    assert!(lemmas.zeta <= 5.633);
    let c = TheoremConstants::derive(&p, &lemmas);
    let published = TheoremConstants::paper();
    assert_eq!((c.log_coefficient, c.center, c.radius), (0.194, 1.919, 0.462));
    assert!(c.raw.per_degree_exact_shift <= published.per_degree);
    assert!(c.per_degree <= published.per_degree);
}

#[test]
fn bundled_table_inside_corollary() {
    let table = ZeroTable::bundled();
    let grid = height_grid(1.0, 99.0, 0.5).unwrap();
    let report = validate(&table, &grid).unwrap();
    assert_eq!(report.rows.len(), 197);
    assert!(report.all_inside);
    let (m, at) = report.min_margin.unwrap();
    assert!(m >= 2.0, "margin {m} at T = {at}");
}

#[test]
fn ordinates_themselves_are_inside() {
    let table = ZeroTable::bundled();
    let grid: Vec<f64> = table.ordinates[..99].to_vec();
    let report = validate(&table, &grid).unwrap();
    assert!(report.all_inside);
    for (k, r) in report.rows.iter().enumerate() {
        assert_eq!(r.count, k as f64 + 0.5);
    }
}

#[test]
fn corollary_is_halved_rational_envelope() {
    for t in [1.0, 7.5, 40.0, 1e4] {
        let (lo, hi) = corollary_riemann(t).unwrap();
        let (qlo, qhi) = bound_nk(t, &rational()).unwrap();
        // the corollary interval contains half the strip interval
        assert!(lo <= qlo / 2.0 + 1e-12 && qhi / 2.0 <= hi + 1e-12);
        // and is wider only by the folded center
        let slack = (hi - lo) - (qhi - qlo) / 2.0;
        assert!((0.0..=1.919 + 1e-9).contains(&slack), "{slack}");
    }
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.txt");
    std::fs::write(&path, "# test\n14.134725141734693\n21.022039638771554\n").unwrap();
    let z = load_zero_table(&path).unwrap();
    assert_eq!(z.len(), 2);
    assert!(z.source.contains("test"));
    assert!(load_zero_table(dir.path().join("missing")).is_err());
}

#[test]
fn envelope_serializes() {
    let e = assemble_envelope(10.0, &rational(), &Params::paper(), &LemmaConstants::paper()).unwrap();
    let v = serde_json::to_value(&e).unwrap();
    assert_eq!(v["constants"]["per_degree"], 5.543);
    assert!(assemble_envelope(0.9, &rational(), &Params::paper(), &LemmaConstants::paper()).is_err());
}

proptest! {
    #[test]
    fn envelope_invariants(t in 1.0f64..1e6, r1 in 0u32..6, r2 in 0u32..6, l in 0.0f64..50.0) {
        prop_assume!(r1 + r2 > 0);
        let sig = FieldSignature::new(r1, r2, l).unwrap();
        let e = assemble_envelope(t, &sig, &Params::paper(), &LemmaConstants::paper()).unwrap();
        prop_assert!(e.radius >= 0.0);
        prop_assert!(e.lower <= e.upper);
        prop_assert!((e.lower - (e.main_term + e.center - e.radius)).abs() < 1e-9 * e.upper.abs().max(1.0));
    }

    #[test]
    fn radius_is_monotone(t in 1.0f64..1e5, dt in 0.0f64..1e3, l in 0.0f64..30.0, dl in 0.0f64..5.0, r1 in 1u32..5) {
        let c = TheoremConstants::paper();
        let s = FieldSignature::new(r1, 0, l).unwrap();
        let bigger_disc = FieldSignature::new(r1, 0, l + dl).unwrap();
        let bigger_deg = FieldSignature::new(r1 + 1, 0, l).unwrap();
        let r = c.radius_at(t, &s);
        prop_assert!(c.radius_at(t + dt, &s) >= r);
        prop_assert!(c.radius_at(t, &bigger_disc) >= r);
        prop_assert!(c.radius_at(t, &bigger_deg) >= r);
    }

    #[test]
    fn count_is_nondecreasing(a in 0.0f64..240.0, b in 0.0f64..240.0) {
        let z = ZeroTable::bundled();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(count_zeros(&z, lo) <= count_zeros(&z, hi));
    }

    #[test]
    fn count_averages_at_ordinates(k in 0usize..100) {
        let z = ZeroTable::bundled();
        let g = z.ordinates[k];
        let left = count_zeros(&z, g - 1e-6);
        let right = count_zeros(&z, g + 1e-6);
        prop_assert_eq!(count_zeros(&z, g), (left + right) / 2.0);
    }
}
