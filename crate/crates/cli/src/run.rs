//! Subcommand execution and output emission.

use std::collections::BTreeMap;
use std::io::Write;

use calvo_core::bifurcation::{calvo_system, scan, wage_system, LagPolySystem};
use calvo_core::determinacy::{
    analyze_params, coefficients_for, existence_boundary, singular_determinacy, DeterminacyReport,
    Variant,
};
use calvo_core::dispersion::{d2_delta_dpi2_nss, d_delta_dpi_nss, delta_nss};
use calvo_core::dynamics::{
    build_state_space, persistence_stats, simulate, solve_re, stochastic_equilibrium,
    theorem2_report, SeOptions, ShockSpec,
};
use calvo_core::model_core::{validate, ModelParams};
use calvo_core::phillips::{
    general_coeffs, limit_coeffs, singular_slopes, surface_coeffs, trend_coeffs, MomentSet,
};
use calvo_core::rivals::{
    lucas_responses, lucas_slope, observational_equivalence, rotemberg_cp_equivalent,
    rotemberg_slope, taylor_phillips, LucasParams,
};
use calvo_core::steady_state::compute_nss;
use calvo_core::CoefficientSet;
use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{apply_overrides, Command, Family, GridSpec, OutputFormat, RunConfig};
use crate::error::CliError;
use crate::scenarios::scenario_report;
use crate::tables::{reproduce_table, TableId};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

/// Result of a subcommand: the JSON document, its tabular form, and a one-line summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: String,
}

impl Output {
    /// Output whose CSV form is the flattened `key,value` listing of the JSON.
    fn document(json: Value, summary: String) -> Self {
        let mut rows = Vec::new();
        flatten("", &json, &mut rows);
        Output {
            json,
            header: vec!["key".into(), "value".into()],
            rows,
            summary,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<Vec<u8>, CliError> {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_vec_pretty(&self.json).expect("JSON values serialize");
                s.push(b'\n');
                Ok(s)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io {
                    path: "csv buffer".into(),
                    message: e.to_string(),
                };
                w.write_record(&self.header).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                w.into_inner().map_err(|e| CliError::Io {
                    path: "csv buffer".into(),
                    message: e.to_string(),
                })
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&format!("{prefix}[{i}]"), x, out)),
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        Value::Null => out.push(vec![prefix.to_string(), String::new()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// One point of a parameter sweep.
struct Point {
    labels: Vec<(String, f64)>,
    params: ModelParams<f64>,
}

impl Point {
    fn label_values(&self) -> Vec<String> {
        self.labels.iter().map(|(_, v)| num(*v)).collect()
    }

    fn at(&self) -> Value {
        Value::Object(
            self.labels
                .iter()
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect(),
        )
    }
}

fn field_value(p: &ModelParams<f64>, name: &str) -> f64 {
    to_json(p)[name].as_f64().unwrap_or(f64::NAN)
}

/// Grid points (or the single base point), each labelled by its swept values plus `required`.
fn sweep(
    grid: Option<&GridSpec>,
    base: &ModelParams<f64>,
    required: &[&str],
) -> Result<Vec<Point>, CliError> {
    let combos = grid.map(GridSpec::points).unwrap_or_else(|| vec![vec![]]);
    combos
        .into_iter()
        .map(|mut labels| {
            let params = apply_overrides(base, labels.iter().map(|(k, v)| (k.as_str(), *v)))?;
            for r in required {
                if !labels.iter().any(|(k, _)| k == r) {
                    labels.push((r.to_string(), field_value(&params, r)));
                }
            }
            Ok(Point { labels, params })
        })
        .collect()
}

fn header(points: &[Point], rest: &[&str]) -> Vec<String> {
    let mut h: Vec<String> = points
        .first()
        .map(|p| p.labels.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default();
    h.extend(rest.iter().map(|s| s.to_string()));
    h
}

/// JSON for a sweep: the lone document when there is no grid, otherwise a list tagged by grid values.
fn sweep_json(grid: bool, points: &[Point], docs: Vec<Value>) -> Value {
    if !grid && docs.len() == 1 {
        return docs.into_iter().next().expect("one document");
    }
    let pts: Vec<Value> = points
        .iter()
        .zip(docs)
        .map(|(p, d)| json!({ "at": p.at(), "result": d }))
        .collect();
    json!({ "points": pts })
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

fn family_coeffs(
    family: Family,
    p: &ModelParams<f64>,
) -> calvo_core::Result<(&'static str, CoefficientSet)> {
    Ok(match family {
        Family::Auto if p.is_limit_regime() && p.pi_bar == 0.0 => ("limit", coefficients_for(p)?),
        Family::Auto => ("general", coefficients_for(p)?),
        Family::Limit => ("limit", limit_coeffs(p)?),
        Family::Trend => ("trend", trend_coeffs(p)?),
        Family::General => ("general", general_coeffs(p, &MomentSet::degenerate(p)?)?),
    })
}

const COEFF_COLUMNS: [&str; 22] = [
    "family", "b0", "b1", "b2", "b3", "b4", "b", "b0_raw", "b1_raw", "b2_raw", "b3_raw", "b4_raw",
    "c", "c0", "c1", "c2", "c3", "d", "d0", "d1", "d2", "d3",
];

fn coeff_row(family: &str, cs: &CoefficientSet) -> Vec<String> {
    let n = cs.normalized();
    let mut r = vec![
        family.to_string(),
        num(n.b0),
        num(n.b1),
        num(n.b2),
        num(n.b3),
        opt(n.b4),
    ];
    r.extend([
        num(cs.b),
        num(cs.b0),
        num(cs.b1),
        num(cs.b2),
        num(cs.b3),
        opt(cs.b4),
    ]);
    let e = cs.euler;
    r.extend(
        [
            e.map(|e| e.c),
            e.map(|e| e.c0),
            e.map(|e| e.c1),
            e.map(|e| e.c2),
            e.map(|e| e.c3),
        ]
        .map(opt),
    );
    let d = cs.dispersion;
    r.extend(
        [
            d.map(|d| d.d),
            d.map(|d| d.d0),
            d.map(|d| d.d1),
            d.map(|d| d.d2),
            d.map(|d| d.d3),
        ]
        .map(opt),
    );
    r
}

fn max_modulus(r: &DeterminacyReport) -> f64 {
    r.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Executes the configured subcommand.
pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let grid = cfg.grid.as_ref();
    match &cfg.command {
        Command::Nss { pi_bar } => {
            let base = cfg.params()?;
            let points = if pi_bar.is_empty() {
                sweep(grid, &base, &["pi_bar"])?
            } else {
                if grid.is_some() {
                    return Err(CliError::config(
                        "pi_bar",
                        "give trend inflation either by --pi-bar or by --grid",
                    ));
                }
                pi_bar
                    .iter()
                    .map(|&v| Point {
                        labels: vec![("pi_bar".into(), v)],
                        params: base.with_pi_bar(v),
                    })
                    .collect()
            };
            let cols = ["mc", "w", "delta", "y", "l", "profit_rate", "u", "welfare"];
            let (mut rows, mut docs) = (Vec::new(), Vec::new());
            for pt in &points {
                let ss = compute_nss(&validate(pt.params)?)?;
                let mut r = pt.label_values();
                r.extend(
                    [
                        ss.mc,
                        ss.w,
                        ss.delta,
                        ss.y,
                        ss.l,
                        ss.profit_rate,
                        ss.u,
                        ss.welfare.as_value(),
                    ]
                    .map(num),
                );
                rows.push(r);
                docs.push(to_json(&ss));
            }
            let summary = format!("nss: {} steady states", rows.len());
            Ok(Output {
                json: sweep_json(true, &points, docs),
                header: header(&points, &cols),
                rows,
                summary,
            })
        }
        Command::Dispersion => {
            let base = cfg.params()?;
            let default_grid;
            let grid = match grid {
                Some(g) => g,
                None => {
                    // Steady-state dispersion is finite only while α(1+π)^θ < 1.
                    let bound = (1.0 / base.alpha).powf(1.0 / base.theta) - 1.0;
                    let hi = (0.9 * bound / 0.005).floor() * 0.005;
                    default_grid = GridSpec::parse(&[format!("pi_bar=-0.02:{hi}:0.005")])?;
                    &default_grid
                }
            };
            let points = sweep(Some(grid), &base, &["pi_bar"])?;
            let cols = ["delta_nss", "d_delta_dpi", "d2_delta_dpi2"];
            let (mut rows, mut docs) = (Vec::new(), Vec::new());
            for pt in &points {
                let v = validate(pt.params)?;
                let pi = pt.params.pi_bar;
                let vals = [
                    delta_nss(&v, pi)?,
                    d_delta_dpi_nss(&v, pi)?,
                    d2_delta_dpi2_nss(&v, pi)?,
                ];
                let mut r = pt.label_values();
                r.extend(vals.map(num));
                rows.push(r);
                docs.push(json!({ "pi_bar": pi, "delta_nss": vals[0], "d_delta_dpi": vals[1], "d2_delta_dpi2": vals[2] }));
            }
            let summary = format!("dispersion: {} grid points", rows.len());
            Ok(Output {
                json: sweep_json(true, &points, docs),
                header: header(&points, &cols),
                rows,
                summary,
            })
        }
        Command::Coeffs { family } => {
            let base = cfg.params()?;
            let points = sweep(grid, &base, &[])?;
            let (mut rows, mut docs) = (Vec::new(), Vec::new());
            for pt in &points {
                validate(pt.params)?;
                let (name, cs) = family_coeffs(*family, &pt.params)?;
                let mut r = pt.label_values();
                r.extend(coeff_row(name, &cs));
                rows.push(r);
                docs.push(json!({ "family": name, "params": pt.params, "normalized": cs.normalized(), "raw": cs }));
            }
            let summary = match rows.as_slice() {
                [r] => format!(
                    "coeffs ({}): b0={} b1={} b2={} b3={} b4={}",
                    r[0], r[1], r[2], r[3], r[4], r[5]
                ),
                _ => format!("coeffs: {} points", rows.len()),
            };
            Ok(Output {
                json: sweep_json(grid.is_some(), &points, docs),
                header: header(&points, &COEFF_COLUMNS),
                rows,
                summary,
            })
        }
        Command::Surface => {
            let base = cfg.params()?;
            let points = sweep(grid, &base, &[])?;
            let cols = [
                "g",
                "g0",
                "g1",
                "g2",
                "g0_norm",
                "g1_norm",
                "g2_norm",
                "sign_flip",
                "sign_flip_a_pi",
                "limit_form",
            ];
            let (mut rows, mut docs) = (Vec::new(), Vec::new());
            for pt in &points {
                validate(pt.params)?;
                let s = surface_coeffs(&pt.params)?;
                let (n0, n1, n2) = s.normalized();
                let mut r = pt.label_values();
                r.extend([s.g, s.g0, s.g1, s.g2, n0, n1, n2].map(num));
                r.extend([
                    s.sign_flip.to_string(),
                    num(s.sign_flip_a_pi),
                    s.limit_form.to_string(),
                ]);
                rows.push(r);
                docs.push(json!({ "raw": s, "normalized": { "g0": n0, "g1": n1, "g2": n2 } }));
            }
            let summary = format!("surface: {} points", rows.len());
            Ok(Output {
                json: sweep_json(grid.is_some(), &points, docs),
                header: header(&points, &cols),
                rows,
                summary,
            })
        }
        Command::Determinacy { variant } => {
            let base = cfg.params()?;
            if let Some(g) = grid {
                let points = sweep(Some(g), &base, &[])?;
                let cols = [
                    "classification",
                    "n_inside",
                    "n_on",
                    "n_outside",
                    "max_modulus",
                ];
                let (mut rows, mut docs) = (Vec::new(), Vec::new());
                for pt in &points {
                    let mut r = pt.label_values();
                    match analyze_params(&pt.params, *variant) {
                        Ok(rep) => {
                            r.push(
                                to_json(&rep.classification)
                                    .as_str()
                                    .unwrap_or_default()
                                    .to_string(),
                            );
                            r.extend(
                                [rep.n_inside, rep.n_on, rep.n_outside].map(|n| n.to_string()),
                            );
                            r.push(num(max_modulus(&rep)));
                            docs.push(to_json(&rep));
                        }
                        Err(e) => {
                            r.push(format!("error:{}", e.kind()));
                            r.extend(std::iter::repeat_n(String::new(), 4));
                            docs.push(json!({ "error": e.kind(), "message": e.to_string() }));
                        }
                    }
                    rows.push(r);
                }
                let summary = format!("determinacy: {} grid points", rows.len());
                return Ok(Output {
                    json: sweep_json(true, &points, docs),
                    header: header(&points, &cols),
                    rows,
                    summary,
                });
            }
            validate(base)?;
            let rep = analyze_params(&base, *variant)?;
            let boundary = match variant {
                Variant::Singular => None,
                _ => existence_boundary(&base, 0.0, 2.0).ok(),
            };
            let summary = format!("determinacy ({variant:?}): {:?}", rep.classification);
            let json = json!({
                "variant": variant,
                "params": base,
                "report": rep,
                "exists": rep.classification.exists(),
                "max_modulus": max_modulus(&rep),
                "existence_boundary_a_pi": boundary,
                "singular_unique": singular_determinacy(&base),
            });
            Ok(Output::document(json, summary))
        }
        Command::Bifurcation {
            model,
            alpha_w,
            theta_w,
            tol,
        } => {
            let p = cfg.params()?;
            let system = match model.as_str() {
                "calvo" => calvo_system(&p)?,
                "wage" => wage_system(*alpha_w, p.beta, *theta_w, p.eta)?,
                m => match m.strip_prefix("file:") {
                    Some(path) => read_system(path)?,
                    None => {
                        return Err(CliError::config(
                            "model",
                            format!("`{m}`: expected calvo, wage or file:<path>"),
                        ))
                    }
                },
            };
            let report = scan(&system, *tol)?;
            let summary = format!(
                "bifurcation ({}): {} shared roots, {} constant cancellations, reduced = {}",
                system.label,
                report.shared_roots.len(),
                report.constant_cancellations.len(),
                report.reduced
            );
            Ok(Output::document(
                json!({ "model": model, "system": system, "report": report }),
                summary,
            ))
        }
        Command::Compare {
            c_p,
            v_z,
            v_m,
            taylor_m,
        } => {
            let p = cfg.params()?;
            validate(p)?;
            let (kappa, omega) = singular_slopes(&p);
            let corrected = coefficients_for(&p)?.normalized();
            let rot = rotemberg_slope(&p, *c_p)?;
            let lucas = lucas_slope(&LucasParams {
                eta: p.eta,
                theta: p.theta,
                v_z: *v_z,
                v_m: *v_m,
            })?;
            let taylor = taylor_phillips(*taylor_m)?;
            let taylor_mc = taylor
                .mc_coeffs
                .iter()
                .find(|(k, _)| *k == 0)
                .map(|(_, w)| *w)
                .unwrap_or(0.0);
            let slopes = [
                (
                    "singular_calvo",
                    omega,
                    "output-gap slope (sigma+eta)kappa of the forward-looking curve".to_string(),
                ),
                (
                    "corrected_calvo",
                    corrected.b1,
                    "normalized output-gap coefficient b1".to_string(),
                ),
                (
                    "rotemberg",
                    rot,
                    format!("(sigma+eta)(theta-1)/c_p at c_p = {c_p}"),
                ),
                (
                    "lucas",
                    lucas,
                    format!("signal-extraction slope at V_z = {v_z}, V_m = {v_m}"),
                ),
                (
                    "taylor",
                    taylor_mc,
                    format!("weight on current marginal cost, {taylor_m}-period contracts"),
                ),
            ];
            let rows = slopes
                .iter()
                .map(|(m, s, n)| vec![m.to_string(), num(*s), n.clone()])
                .collect();
            let json = json!({
                "params": p,
                "slopes": slopes.iter().map(|(m, s, n)| json!({ "model": m, "slope": s, "note": n })).collect::<Vec<_>>(),
                "kappa": kappa,
                "corrected_calvo_coefficients": corrected,
                "rotemberg_equivalent_c_p": rotemberg_cp_equivalent(&p),
                "observational_equivalence": observational_equivalence(&p, *c_p)?,
                "lucas_responses": lucas_responses(lucas),
                "taylor": taylor,
            });
            let summary = slopes
                .iter()
                .map(|(m, s, _)| format!("{m}={s:.4}"))
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Output {
                json,
                header: vec!["model".into(), "slope".into(), "note".into()],
                rows,
                summary,
            })
        }
        Command::Simulate {
            variant,
            periods,
            scale_psi,
            scale_a,
            dist,
        } => {
            let p = *validate(cfg.params()?)?;
            let cs = match variant {
                Variant::Singular => None,
                _ => Some(coefficients_for(&p)?),
            };
            let sol = solve_re(&build_state_space(&p, cs.as_ref(), *variant)?)?;
            let shocks = ShockSpec {
                dist: *dist,
                scale_psi: *scale_psi,
                scale_a: *scale_a,
                rho_a: p.rho_a,
                seed,
            };
            let path = simulate(&sol, &shocks, *periods)?;
            let mut head = vec!["t".to_string(), "psi".into(), "a".into()];
            head.extend(path.variables.iter().cloned());
            let rows = (0..path.len())
                .map(|t| {
                    let mut r = vec![t.to_string(), num(path.psi[t]), num(path.a[t])];
                    r.extend(path.series.iter().map(|s| num(s[t])));
                    r
                })
                .collect();
            let moments: BTreeMap<&str, Value> = path
                .variables
                .iter()
                .zip(&path.series)
                .map(|(v, s)| {
                    let n = s.len() as f64;
                    let mean = s.iter().sum::<f64>() / n;
                    let sd = (s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
                    (v.as_str(), json!({ "mean": mean, "std": sd }))
                })
                .collect();
            let stats = persistence_stats(&path);
            let json = json!({
                "variant": variant,
                "periods": periods,
                "seed": seed,
                "shocks": shocks,
                "variables": path.variables,
                "eigenvalues": sol.eigenvalues,
                "g": matrix_rows(&sol.g),
                "h": matrix_rows(&sol.h),
                "persistence": stats,
                "moments": moments,
            });
            let summary = format!(
                "simulate ({variant:?}): {periods} periods, corr(pi) = {:.4}",
                stats.pi
            );
            Ok(Output {
                json,
                header: head,
                rows,
                summary,
            })
        }
        Command::SeFixedPoint {
            scale_psi,
            scale_a,
            periods,
            damping,
            tol,
            max_iter,
            dist,
        } => {
            let p = *validate(cfg.params()?)?;
            let shocks = ShockSpec {
                dist: *dist,
                scale_psi: *scale_psi,
                scale_a: *scale_a,
                rho_a: p.rho_a,
                seed,
            };
            let opts = SeOptions {
                damping: *damping,
                tol: *tol,
                max_iter: *max_iter,
                periods: *periods,
            };
            let se = stochastic_equilibrium(&p, &shocks, &opts)?;
            let nss = compute_nss(&validate(p)?)?;
            let ineq = theorem2_report(&p, &se, &nss);
            let summary = format!(
                "se-fixed-point: {} iterations; E i < i_NSS: {}, Delta > Delta_NSS: {}, Y < Y_NSS: {}",
                se.iterations, ineq.interest_rate.holds, ineq.dispersion.holds, ineq.output.holds
            );
            let json = json!({
                "params": p,
                "shocks": shocks,
                "options": opts,
                "iterations": se.iterations,
                "history": se.history,
                "moments": se.moments,
                "standard_errors": se.estimate.as_ref().map(|e| e.standard_errors),
                "coefficients": se.coefficients,
                "normalized": se.coefficients.normalized(),
                "nonstochastic": nss,
                "inequalities": ineq,
            });
            Ok(Output::document(json, summary))
        }
        Command::Tables { which } => {
            let ids: Vec<TableId> = which
                .map(|w| vec![w])
                .unwrap_or_else(|| TableId::ALL.to_vec());
            let tables = ids
                .iter()
                .map(|&id| reproduce_table(id))
                .collect::<calvo_core::Result<Vec<_>>>()?;
            let mut rows = Vec::new();
            for t in &tables {
                for c in &t.cells {
                    rows.push(vec![
                        t.id.label().to_string(),
                        c.row.clone(),
                        c.column.clone(),
                        num(c.computed),
                        num(c.printed),
                        num(c.abs_diff),
                        num(c.tolerance),
                        c.mismatch.to_string(),
                    ]);
                }
            }
            let mismatches: usize = tables.iter().map(|t| t.mismatches().count()).sum();
            let summary = tables
                .iter()
                .map(|t| {
                    format!(
                        "Table {}: {} cells, {} mismatches",
                        t.id.label(),
                        t.cells.len(),
                        t.mismatches().count()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let head = [
                "table",
                "row",
                "column",
                "computed",
                "printed",
                "abs_diff",
                "tolerance",
                "mismatch",
            ];
            Ok(Output {
                json: json!({ "tables": tables, "mismatch_count": mismatches }),
                header: head.iter().map(|s| s.to_string()).collect(),
                rows,
                summary,
            })
        }
        Command::Scenario { scenario, periods } => {
            let report = scenario_report(*scenario, *periods, seed)?;
            let summary = format!(
                "scenario {}",
                to_json(scenario).as_str().unwrap_or_default()
            );
            Ok(Output::document(to_json(&report), summary))
        }
    }
}

fn read_system(path: &str) -> Result<LagPolySystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("model", format!("{path}: {e}")))?;
    let map: BTreeMap<String, BTreeMap<String, Vec<f64>>> = serde_json::from_str(&text)
        .map_err(|e| CliError::config("model", format!("{path}: {e}")))?;
    Ok(LagPolySystem::from_map(path, map)?)
}

/// Runs the subcommand and writes its output; a summary goes to stdout when writing to a file.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    let out = execute(cfg)?;
    let bytes = out.render(cfg.format())?;
    match cfg.output_path() {
        Some(path) => {
            let io = |e: std::io::Error| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io)?;
            }
            std::fs::write(&path, &bytes).map_err(io)?;
            println!("{}\nwrote {}", out.summary, path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "stdout".into(),
                    message: e.to_string(),
                })?;
        }
    }
    Ok(out)
}
