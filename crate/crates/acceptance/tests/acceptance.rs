//! One PASS/FAIL line per acceptance criterion, with indented detail lines.
//! Exits with status 1 when any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use calvo_cli::scenarios::{natural_rate_params, natural_rate_scenario, NATURAL_RATE_SCALE};
use calvo_cli::tables::{reproduce_table, TableId};
use calvo_core::bifurcation::{
    calvo_system, scan, wage_system, LagEquation, LagPolySystem, SCAN_TOL,
};
use calvo_core::determinacy::{
    analyze_params, char_poly_full, char_poly_sqrt_eps, existence_boundary, find_roots,
    rotemberg_exists, singular_determinacy, singular_q_conditions, Classification, Variant,
};
use calvo_core::dispersion::{d_delta_dpi_nss, linearization_coeffs};
use calvo_core::dynamics::{stochastic_equilibrium, theorem2_report, SeOptions, ShockSpec};
use calvo_core::model_core::{all_presets, validate, ModelParams};
use calvo_core::phillips::{general_coeffs, limit_coeffs, trend_coeffs, MomentSet};
use calvo_core::rivals::{
    lucas_slope, observational_equivalence, rotemberg_slope, taylor_phillips, LucasParams,
};
use calvo_core::steady_state::compute_nss;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Verdict {
            pass,
            summary: summary.into(),
            details: Vec::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }
}

type Check = fn() -> Verdict;

fn fmt_duration(d: Duration) -> String {
    if d.as_secs_f64() < 1e-3 {
        format!("{:.1} µs", d.as_secs_f64() * 1e6)
    } else if d.as_secs_f64() < 1.0 {
        format!("{:.1} ms", d.as_secs_f64() * 1e3)
    } else {
        format!("{:.2} s", d.as_secs_f64())
    }
}

fn main() {
    let criteria: [(u8, &str, Option<Duration>, Check); 11] = [
        (1, "benchmark Phillips curve", None, benchmark_curve),
        (
            2,
            "golden tables I-VII",
            Some(Duration::from_secs(1)),
            golden_tables,
        ),
        (3, "eigenvalue factorization", None, factorization),
        (4, "existence boundary at a_pi = 1", None, existence),
        (5, "bifurcation detector", None, bifurcation),
        (6, "reduction chain", None, reduction_chain),
        (7, "singular determinacy oracle", None, determinacy_grid),
        (
            8,
            "persistence under an unobserved natural rate",
            Some(Duration::from_secs(30)),
            persistence,
        ),
        (
            9,
            "stochastic-equilibrium inequalities",
            Some(Duration::from_secs(120)),
            stochastic_equilibrium_check,
        ),
        (10, "rival models", None, rivals),
        (11, "dispersion reductions", None, dispersion),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let mut v = check();
        let took = start.elapsed();
        let timing = match limit {
            Some(l) if took > l => {
                v.pass = false;
                format!("{}, over the {} limit", fmt_duration(took), fmt_duration(l))
            }
            Some(l) => format!("{}, limit {}", fmt_duration(took), fmt_duration(l)),
            None => fmt_duration(took),
        };
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {tag}  {name}: {} [{timing}]", v.summary);
        for d in &v.details {
            println!("      {d}");
        }
        if !v.pass {
            failed.push(n);
        }
    }
    println!("{} of 11 criteria pass", 11 - failed.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn benchmark_curve() -> Verdict {
    let p = ModelParams::<f64>::benchmark();
    let want = [0.575, 0.0, -0.25, 0.3, 0.25];
    let got = limit_coeffs(&p).unwrap().normalized().as_array();
    let err = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    let reps = 10_000;
    let start = Instant::now();
    for _ in 0..reps {
        std::hint::black_box(limit_coeffs(std::hint::black_box(&p)).unwrap());
    }
    let per_call = start.elapsed() / reps;
    let fast = per_call < Duration::from_millis(1);
    Verdict::new(
        err <= 1e-3 && fast,
        format!(
            "b = {:?}, max |error| = {err:.1e} (tol 1e-3); {} per call (limit 1 ms)",
            got.map(|x| (x * 1e4).round() / 1e4),
            fmt_duration(per_call)
        ),
    )
}

fn golden_tables() -> Verdict {
    let mut cells = 0;
    let mut bad = Vec::new();
    for id in TableId::ALL {
        let t = reproduce_table(id).unwrap();
        cells += t.cells.len();
        for c in t.mismatches() {
            bad.push(format!(
                "Table {} {} {}: computed {:.4}, printed {}, |diff| {:.4} > {}",
                id.label(),
                c.row,
                c.column,
                c.computed,
                c.printed,
                c.abs_diff,
                c.tolerance
            ));
        }
    }
    let mut v = Verdict::new(
        bad.is_empty(),
        format!("{} of {cells} cells within tolerance", cells - bad.len()),
    );
    for b in bad {
        v = v.detail(b);
    }
    v
}

/// Removes the root nearest `target` and returns its distance.
fn take_nearest(roots: &mut Vec<Complex64>, target: f64) -> f64 {
    let (i, d) = roots
        .iter()
        .enumerate()
        .map(|(i, z)| (i, (z - target).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    roots.remove(i);
    d
}

fn sorted(mut r: Vec<Complex64>) -> Vec<Complex64> {
    r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    r
}

fn factorization() -> Verdict {
    let (mut worst_factor, mut worst_pair) = (0.0f64, 0.0f64);
    let mut count = 0;
    for preset in all_presets::<f64>() {
        let p = preset.params;
        let cs = limit_coeffs(&p).unwrap();
        let mut cubic = find_roots(&char_poly_sqrt_eps(&cs).unwrap()).unwrap();
        let mut quartic = find_roots(&char_poly_full(&cs).unwrap()).unwrap();
        worst_factor = worst_factor.max(take_nearest(&mut cubic, 1.0 / p.alpha));
        worst_factor = worst_factor.max(take_nearest(&mut quartic, 1.0 / p.alpha));
        worst_factor = worst_factor.max(take_nearest(&mut quartic, p.alpha));
        for (a, b) in sorted(cubic).iter().zip(sorted(quartic)) {
            worst_pair = worst_pair.max((a - b).norm());
        }
        count += 1;
    }
    Verdict::new(
        worst_factor <= 1e-9 && worst_pair <= 1e-9,
        format!(
            "{count} presets; max distance to 1/alpha or alpha {worst_factor:.1e}, max quadratic-root gap {worst_pair:.1e} (tol 1e-9)"
        ),
    )
}

fn existence() -> Verdict {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for preset in all_presets::<f64>() {
        let p = preset.params;
        let start = Instant::now();
        let a = existence_boundary(&p, 0.0, 2.0).unwrap();
        slowest = slowest.max(start.elapsed());
        worst = worst.max((a - 1.0).abs());
        let below = analyze_params(&p.with_a_pi(a - 0.01), Variant::SqrtEps)
            .unwrap()
            .classification;
        let above = analyze_params(&p.with_a_pi(a + 0.01), Variant::SqrtEps)
            .unwrap()
            .classification;
        if below != Classification::ExistsUnique || above.exists() {
            bad.push(format!("{}: below {below:?}, above {above:?}", preset.name));
        }
        if rotemberg_exists(&p.with_a_pi(a - 0.01)) || !rotemberg_exists(&p.with_a_pi(a + 0.01)) {
            bad.push(format!("{}: Rotemberg direction", preset.name));
        }
    }
    // Rotemberg flip point by the same bisection.
    let (mut lo, mut hi) = (0.0, 2.0);
    let base = ModelParams::<f64>::benchmark();
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if rotemberg_exists(&base.with_a_pi(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let rot = 0.5 * (lo + hi);
    let fast = slowest < Duration::from_secs(1);
    let mut v = Verdict::new(
        worst <= 1e-6 && (rot - 1.0).abs() <= 1e-6 && bad.is_empty() && fast,
        format!(
            "Calvo flips exist->nonexistence at 1 +/- {worst:.1e} on every preset; Rotemberg flips nonexistence->exist at {rot:.7}; slowest preset {}",
            fmt_duration(slowest)
        ),
    );
    for b in bad {
        v = v.detail(b);
    }
    v
}

fn fuzz_system(rng: &mut ChaCha8Rng) -> (LagPolySystem, LagPolySystem) {
    let root = rng.random_range(1.05..5.0);
    let effect = rng.random_range(0.05..3.0);
    let pert = |rng: &mut ChaCha8Rng| {
        let m = 10f64.powf(rng.random_range(-6.0..-1.0));
        if rng.random::<bool>() {
            m
        } else {
            -m
        }
    };
    let (d_root, d_effect) = (pert(rng), pert(rng));
    let scales: [f64; 2] = [rng.random_range(0.1..10.0), -rng.random_range(0.1..10.0)];
    let noise: [(f64, f64); 2] = [
        (rng.random_range(1.5..4.0), -rng.random_range(1.2..4.0)),
        (rng.random_range(1.2..6.0), -rng.random_range(1.5..6.0)),
    ];
    let build = |dr: f64, de: f64| {
        let eq = |i: usize, r: f64, e: f64| {
            let s = scales[i];
            let (r1, r2) = noise[i];
            let mut terms = BTreeMap::new();
            terms.insert(format!("x{i}"), vec![s, -s / r]);
            terms.insert("common".to_string(), vec![e * s]);
            terms.insert(
                format!("z{i}"),
                vec![
                    0.7 * s,
                    -0.7 * s * (1.0 / r1 + 1.0 / r2),
                    0.7 * s / (r1 * r2),
                ],
            );
            LagEquation {
                label: format!("eq{i}"),
                terms,
            }
        };
        LagPolySystem::new(
            "fuzz",
            vec![
                eq(0, root, effect),
                eq(1, root * (1.0 + dr), effect * (1.0 + de)),
            ],
        )
        .unwrap()
    };
    (build(0.0, 0.0), build(d_root, d_effect))
}

fn bifurcation() -> Verdict {
    let mut v = Verdict::new(true, String::new());
    let fail = |v: &mut Verdict, msg: String| {
        v.pass = false;
        v.details.push(msg);
    };
    for beta in [1.0, 0.99] {
        let p = ModelParams::<f64>::benchmark().with_beta(beta);
        let r = scan(&calvo_system(&p).unwrap(), SCAN_TOL).unwrap();
        let root_ok = r
            .shared_roots
            .iter()
            .any(|s| (s.root - 1.0 / (p.alpha * beta)).norm() < 1e-9);
        let psi_ok = r.constant_cancellations.iter().any(|c| c.variable == "psi");
        if !(r.reduced && root_ok && psi_ok) {
            fail(
                &mut v,
                format!("Calvo ZINSS at beta={beta} not flagged as expected: {r:?}"),
            );
        }
        for pi_bar in [-0.02, -0.01, 0.01, 0.02] {
            if scan(&calvo_system(&p.with_pi_bar(pi_bar)).unwrap(), SCAN_TOL)
                .unwrap()
                .reduced
            {
                fail(
                    &mut v,
                    format!("Calvo flagged at pi_bar={pi_bar}, beta={beta}"),
                );
            }
        }
    }
    let w = scan(&wage_system(0.75, 0.99, 6.0, 4.0).unwrap(), SCAN_TOL).unwrap();
    if !w
        .shared_roots
        .iter()
        .any(|s| (s.root - 1.0 / (0.75 * 0.99)).norm() < 1e-9)
    {
        fail(
            &mut v,
            "wage system shared root 1/(alpha_w beta) not found".into(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut false_pos, mut missed) = (0, 0);
    for _ in 0..1000 {
        let (exact, perturbed) = fuzz_system(&mut rng);
        if !scan(&exact, SCAN_TOL).unwrap().reduced {
            missed += 1;
        }
        if scan(&perturbed, SCAN_TOL).unwrap().reduced {
            false_pos += 1;
        }
    }
    if false_pos > 0 || missed > 0 {
        fail(
            &mut v,
            format!("fuzz: {false_pos} false positives, {missed} unperturbed systems missed"),
        );
    }
    v.summary = format!(
        "Calvo ZINSS flagged (root 1/(alpha beta), psi cancellation), not at pi_bar in {{+-0.01, +-0.02}}; wage root 1/(alpha_w beta); fuzz: {false_pos} false positives in 1000"
    );
    v
}

fn reduction_chain() -> Verdict {
    let mut gen_trend = 0.0f64;
    let mut rows = Vec::new();
    for pi_bar in [0.0, 0.005, 0.01, 0.02] {
        let p = ModelParams::<f64>::benchmark()
            .with_beta(0.99)
            .with_pi_bar(pi_bar);
        let g = general_coeffs(&p, &MomentSet::degenerate(&p).unwrap()).unwrap();
        let d = g.phillips_distance(&trend_coeffs(&p).unwrap());
        gen_trend = gen_trend.max(d);
        rows.push(format!(
            "general vs trend at beta=0.99, pi_bar={pi_bar}: max |diff| {d:.3e}"
        ));
    }
    let mut trend_limit = 0.0f64;
    for preset in all_presets::<f64>() {
        let p = preset.params;
        trend_limit = trend_limit.max(
            trend_coeffs(&p)
                .unwrap()
                .phillips_distance(&limit_coeffs(&p).unwrap()),
        );
    }
    let mut v = Verdict::new(
        gen_trend <= 1e-10 && trend_limit <= 1e-12,
        format!(
            "general(degenerate) vs trend max |diff| {gen_trend:.2e} (tol 1e-10); trend vs limit at pi_bar=0, sigma=1, beta=1: {trend_limit:.1e} (tol 1e-12)"
        ),
    );
    for r in rows {
        v = v.detail(r);
    }
    v
}

fn determinacy_grid() -> Verdict {
    let n = 50;
    let (mut compared, mut skipped, mut dis_q, mut dis_roots) = (0, 0, 0, 0);
    for i in 0..n {
        for j in 0..n {
            let a_pi = 2.0 * i as f64 / (n - 1) as f64;
            let a_y = 2.5 * j as f64 / (n - 1) as f64;
            let p = ModelParams {
                a_y,
                ..ModelParams::<f64>::benchmark()
                    .with_beta(0.99)
                    .with_a_pi(a_pi)
            };
            let kappa = (1.0 - p.alpha) * (1.0 - p.alpha * p.beta) / p.alpha;
            if (a_pi + (1.0 - p.beta) * a_y / kappa - 1.0).abs() < 1e-6 {
                skipped += 1;
                continue;
            }
            let ineq = singular_determinacy(&p);
            if ineq != singular_q_conditions(&p) {
                dis_q += 1;
            }
            let unique = analyze_params(&p, Variant::Singular)
                .unwrap()
                .classification
                == Classification::ExistsUnique;
            if ineq != unique {
                dis_roots += 1;
            }
            compared += 1;
        }
    }
    Verdict::new(
        dis_q == 0 && dis_roots == 0,
        format!(
            "{compared} grid points ({skipped} in the boundary band): {dis_q} disagreements with the q-conditions, {dis_roots} with root counting"
        ),
    )
}

fn persistence() -> Verdict {
    let s = natural_rate_scenario(1_000_000, 7).unwrap();
    let mut pass = true;
    let mut v = Verdict::new(true, String::new());
    let mut parts = Vec::new();
    for r in &s.persistence_runs {
        let claim = r.report.rho_a.sqrt();
        let ok = (r.report.corr_pi - claim).abs() <= 0.01;
        pass &= ok;
        parts.push(format!(
            "rho_a={}: corr {:.4} vs sqrt(rho_a) {:.4}",
            r.report.rho_a, r.report.corr_pi, claim
        ));
        v = v.detail(format!(
            "rho_a={}: corr(pi_t, pi_t-1) = {:.4}; sqrt(rho_a) = {:.4} ({}); bound implied by the linear solution {:.4}",
            r.report.rho_a,
            r.report.corr_pi,
            claim,
            if ok { "within 0.01" } else { "off by more than 0.01" },
            r.report.bound_corr_pi
        ));
    }
    let wn = s.white_noise.report.corr_pi;
    pass &= wn.abs() < 0.01;
    parts.push(format!("white noise |corr| {:.4}", wn.abs()));
    v = v.detail(format!(
        "calibration beta={}, a_pi={}, shock scale {NATURAL_RATE_SCALE}, T=1e6",
        natural_rate_params().beta,
        natural_rate_params().a_pi
    ));
    v.pass = pass;
    v.summary = parts.join("; ");
    v
}

fn stochastic_equilibrium_check() -> Verdict {
    let p = ModelParams::<f64>::benchmark().with_beta(0.99);
    let shocks = ShockSpec::new(0.005, 0.005, 0.0, 7);
    let se = stochastic_equilibrium(&p, &shocks, &SeOptions::default()).unwrap();
    let nss = compute_nss(&validate(p).unwrap()).unwrap();
    let r = theorem2_report(&p, &se, &nss);
    let line = |name: &str, i: &calvo_core::dynamics::Inequality| {
        format!(
            "{name}: stochastic {:.9} vs nonstochastic {:.9} (s.e. {:.1e}) -> {}",
            i.stochastic,
            i.nonstochastic,
            i.standard_error,
            if i.holds {
                "holds at 95%"
            } else {
                "not established"
            }
        )
    };
    Verdict::new(
        se.iterations <= 200 && r.interest_rate.holds && r.dispersion.holds && r.output.holds,
        format!(
            "{} iterations; E i < i_NSS: {}, Delta > Delta_NSS: {}, Y < Y_NSS: {}",
            se.iterations, r.interest_rate.holds, r.dispersion.holds, r.output.holds
        ),
    )
    .detail(line("interest rate", &r.interest_rate))
    .detail(line("dispersion", &r.dispersion))
    .detail(line("output", &r.output))
}

fn rivals() -> Verdict {
    let mut lucas_ok = true;
    for (eta, v_z, v_m) in [(4.0, 1.0, 1.0), (1.0, 0.3, 2.0), (2.5, 5.0, 0.7)] {
        let s = lucas_slope(&LucasParams {
            eta,
            theta: 1.0,
            v_z,
            v_m,
        })
        .unwrap();
        lucas_ok &= s == v_z / (eta * (v_z + v_m));
    }
    let p = ModelParams::<f64>::benchmark();
    let omega = rotemberg_slope(&p, 50.0).unwrap();
    let taylor_ok = [2usize, 3, 4, 8].iter().all(|&m| {
        taylor_phillips(m)
            .unwrap()
            .exact
            .mc
            .iter()
            .map(|(_, w)| *w)
            .sum::<Ratio<i64>>()
            == Ratio::from(0)
    });
    let eq = observational_equivalence(&p, 50.0).unwrap();
    Verdict::new(
        lucas_ok && omega == 0.5 && taylor_ok && !eq.equivalent,
        format!(
            "Lucas theta=1 slope exact: {lucas_ok}; Rotemberg omega = {omega}; Taylor mc weights sum to 0 exactly for M in {{2,3,4,8}}: {taylor_ok}; observationally equivalent: {}",
            eq.equivalent
        ),
    )
}

fn dispersion() -> Verdict {
    let mut persistence_err = 0.0f64;
    for preset in all_presets::<f64>() {
        let v = validate(preset.params).unwrap();
        persistence_err = persistence_err
            .max((linearization_coeffs(&v, 0.0).unwrap().persistence - v.alpha).abs());
    }
    let base = ModelParams::<f64>::benchmark();
    let hi = 0.9 * ((1.0 / base.alpha).powf(1.0 / base.theta) - 1.0);
    let delta = |pi: f64| {
        compute_nss(&validate(base.with_pi_bar(pi)).unwrap())
            .unwrap()
            .delta
    };
    let v = validate(base).unwrap();
    let mut fd_err = 0.0f64;
    for k in 0..50 {
        let pi = -0.02 + (hi + 0.02) * k as f64 / 49.0;
        let h = 1e-5;
        let fd = (delta(pi - 2.0 * h) - 8.0 * delta(pi - h) + 8.0 * delta(pi + h)
            - delta(pi + 2.0 * h))
            / (12.0 * h);
        fd_err = fd_err.max((fd - d_delta_dpi_nss(&v, pi).unwrap()).abs());
    }
    Verdict::new(
        persistence_err < 1e-15 && fd_err <= 1e-6,
        format!(
            "persistence - alpha at pi_bar=0: {persistence_err:.1e} over all presets; dDelta/dpi vs finite differences on 50 points in [-0.02, {hi:.4}]: {fd_err:.1e} (tol 1e-6)"
        ),
    )
}
