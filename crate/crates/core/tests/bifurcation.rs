use std::collections::BTreeMap;

use calvo_core::bifurcation::{
    calvo_system, scan, wage_system, LagEquation, LagPolySystem, SCAN_TOL,
};
use calvo_core::model_core::ModelParams;
use proptest::prelude::*;

/// `scale·(1 − L/r)` in ascending powers of `L`.
fn lag_factor(r: f64, scale: f64) -> Vec<f64> {
    vec![scale, -scale / r]
}

/// Quadratic in `L` with the given roots.
fn lag_quadratic(r1: f64, r2: f64, scale: f64) -> Vec<f64> {
    vec![scale, -scale * (1.0 / r1 + 1.0 / r2), scale / (r1 * r2)]
}

#[derive(Debug, Clone)]
struct Draw {
    root: f64,
    effect: f64,
    scales: [f64; 2],
    noise: [(f64, f64); 2],
}

/// Two equations sharing the lag root `root·(1+d_root)` vs `root` and a constant with
/// marginal effects `effect` vs `effect·(1+d_effect)`; each also loads an idiosyncratic
/// quadratic in its own variable.
fn system(d: &Draw, d_root: f64, d_effect: f64) -> LagPolySystem {
    let eq = |i: usize, root: f64, effect: f64| {
        let s = d.scales[i];
        let mut terms = BTreeMap::new();
        terms.insert(format!("x{i}"), lag_factor(root, s));
        terms.insert("common".into(), vec![effect * s]);
        terms.insert(
            format!("z{i}"),
            lag_quadratic(d.noise[i].0, d.noise[i].1, 0.7 * s),
        );
        LagEquation {
            label: format!("eq{i}"),
            terms,
        }
    };
    LagPolySystem::new(
        "fuzz",
        vec![
            eq(0, d.root, d.effect),
            eq(1, d.root * (1.0 + d_root), d.effect * (1.0 + d_effect)),
        ],
    )
    .unwrap()
}

fn draw() -> impl Strategy<Value = Draw> {
    let scale = prop_oneof![-10.0..-0.1f64, 0.1..10.0f64];
    (
        1.05..5.0f64,
        0.05..3.0f64,
        [scale.clone(), scale],
        [(1.5..4.0f64, -4.0..-1.2f64), (1.2..6.0f64, -6.0..-1.5f64)],
    )
        .prop_map(|(root, effect, scales, noise)| Draw {
            root,
            effect,
            scales,
            noise,
        })
}

/// Relative perturbation of magnitude in `[1e-6, 1e-1]` (log-uniform) with random sign.
fn perturbation() -> impl Strategy<Value = f64> {
    (-6.0..-1.0f64, prop::bool::ANY)
        .prop_map(|(e, neg)| if neg { -(10f64.powf(e)) } else { 10f64.powf(e) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn perturbed_systems_are_not_reduced(d in draw(), d_root in perturbation(), d_effect in perturbation()) {
        let exact = scan(&system(&d, 0.0, 0.0), SCAN_TOL).unwrap();
        prop_assert_eq!(exact.shared_roots.len(), 1);
        prop_assert_eq!(exact.constant_cancellations.len(), 1);
        let r = scan(&system(&d, d_root, d_effect), SCAN_TOL).unwrap();
        prop_assert!(!r.reduced, "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scan_is_symmetric_and_scale_invariant(d in draw(), k in prop_oneof![-5.0..-0.2f64, 0.2..5.0f64], perturb in prop::bool::ANY) {
        let dp = if perturb { 1e-3 } else { 0.0 };
        let sys = system(&d, dp, dp);
        let base = scan(&sys, SCAN_TOL).unwrap();
        let mut swapped = sys.clone();
        swapped.equations.reverse();
        let mut scaled = sys.clone();
        scaled.scale_equation(1, k);
        for other in [swapped, scaled] {
            let r = scan(&other, SCAN_TOL).unwrap();
            prop_assert_eq!(r.reduced, base.reduced);
            prop_assert_eq!(r.shared_roots.len(), base.shared_roots.len());
            prop_assert_eq!(r.constant_cancellations.len(), base.constant_cancellations.len());
            for (a, b) in r.shared_roots.iter().zip(&base.shared_roots) {
                prop_assert!((a.root - b.root).norm() < 1e-9 * b.root.norm());
                prop_assert_eq!(&a.involved, &b.involved);
            }
        }
    }
}

#[test]
fn calvo_flags_only_at_zero_trend() {
    let p = ModelParams::<f64>::benchmark().with_beta(0.99);
    let zinss = scan(&calvo_system(&p).unwrap(), SCAN_TOL).unwrap();
    assert!(zinss.reduced);
    assert!((zinss.shared_roots[0].root.re - 1.0 / (p.alpha * p.beta)).abs() < 1e-9);
    assert_eq!(zinss.constant_cancellations[0].variable, "psi");
    for pi_bar in [-0.02, -0.01, 0.01, 0.02] {
        let r = scan(&calvo_system(&p.with_pi_bar(pi_bar)).unwrap(), SCAN_TOL).unwrap();
        assert!(!r.reduced, "pi_bar = {pi_bar}: {r:?}");
    }
}

#[test]
fn band_shrinks_with_tolerance() {
    // The root gap is O(π̄), so the flagged band scales with the tolerance.
    let p = ModelParams::<f64>::benchmark().with_beta(0.99);
    let edge = |tol: f64| {
        let (mut lo, mut hi) = (0.0, 0.01);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if scan(&calvo_system(&p.with_pi_bar(mid)).unwrap(), tol)
                .unwrap()
                .reduced
            {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let (e1, e2) = (edge(1e-4), edge(1e-5));
    assert!(e1 > 0.0 && e2 > 0.0);
    assert!((e1 / e2 - 10.0).abs() < 0.5, "{e1} / {e2}");
}

#[test]
fn wage_shared_root_is_inverse_discount() {
    let r = scan(&wage_system(0.75, 0.99, 6.0, 4.0).unwrap(), SCAN_TOL).unwrap();
    assert!(r.reduced);
    assert!(r
        .shared_roots
        .iter()
        .any(|s| (s.root.re - 1.0 / (0.75 * 0.99)).abs() < 1e-9));
}
