use calvo_core::model_core::{preset, ModelParams, PRESET_NAMES};
use calvo_core::phillips::{general_coeffs, limit_coeffs, trend_coeffs, MomentSet};

#[test]
fn trend_family_at_zero_trend_is_the_limit_family() {
    for name in PRESET_NAMES {
        let p = preset::<f64>(name).unwrap();
        let (t, l) = (trend_coeffs(&p).unwrap(), limit_coeffs(&p).unwrap());
        assert!(
            t.phillips_distance(&l) < 1e-12,
            "{name}: {}",
            t.phillips_distance(&l)
        );
        let (tn, ln) = (t.normalized().as_array(), l.normalized().as_array());
        // The trend family carries no error term, so b4 is compared only where defined.
        for (a, b) in tn.iter().zip(ln).take(4) {
            assert!((a - b).abs() < 1e-12, "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn both_families_approach_the_limit_linearly_in_discounting() {
    // At π̄ = 0 the gap to the limit coefficients is O(1 − β) for both families.
    let limit = limit_coeffs(&ModelParams::<f64>::benchmark()).unwrap();
    let gaps = |beta: f64| {
        let p = ModelParams::<f64>::benchmark().with_beta(beta);
        let g = general_coeffs(&p, &MomentSet::degenerate(&p).unwrap()).unwrap();
        (
            g.phillips_distance(&limit),
            trend_coeffs(&p).unwrap().phillips_distance(&limit),
        )
    };
    let mut prev = gaps(0.99);
    for beta in [0.999, 0.9999, 0.99999] {
        let cur = gaps(beta);
        for (c, p) in [(cur.0, prev.0), (cur.1, prev.1)] {
            let ratio = p / c;
            assert!((ratio - 10.0).abs() < 0.5, "beta = {beta}: ratio {ratio}");
        }
        prev = cur;
    }
    assert!(prev.0 < 2e-5 && prev.1 < 2e-5);
}

#[test]
fn general_family_needs_discounting() {
    let p = ModelParams::<f64>::benchmark();
    assert!(general_coeffs(&p, &MomentSet::degenerate(&p.with_beta(0.99)).unwrap()).is_err());
}
