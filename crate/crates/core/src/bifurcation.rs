//! Cross-equation cancellation in lag-polynomial systems.
//!
//! Each equation maps a variable name to the coefficients of a polynomial in
//! the lag operator (`L^0, L^1, …`). A forward recursion `x_t = c·E_t x_{t+1} + …`
//! appears as `[1, −c]`, whose root is `1/c`. Two equations that share a root
//! can be cancelled against each other, which collapses the dimension of the
//! solution set; a variable that enters two equations only through constants
//! with the same marginal effect cancels the same way.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::determinacy::{find_roots, CharPoly};
use crate::error::{ModelError, Result};
use crate::model_core::{validate, ModelParams};

/// One equation: variable → lag-polynomial coefficients (ascending powers of `L`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagEquation {
    pub label: String,
    pub terms: BTreeMap<String, Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagPolySystem {
    pub label: String,
    pub equations: Vec<LagEquation>,
}

fn trim(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    c
}

impl LagPolySystem {
    /// Builds a system, trimming trailing zero coefficients.
    pub fn new(label: impl Into<String>, equations: Vec<LagEquation>) -> Result<Self> {
        if equations.is_empty() {
            return Err(ModelError::domain(
                "equations",
                "a system needs at least one equation",
            ));
        }
        let equations = equations
            .into_iter()
            .map(|e| LagEquation {
                label: e.label,
                terms: e
                    .terms
                    .into_iter()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(k, c)| (k, trim(c)))
                    .collect(),
            })
            .collect();
        Ok(LagPolySystem {
            label: label.into(),
            equations,
        })
    }

    /// Reads the file format `{equation: {variable: [c0, c1, …]}}`.
    pub fn from_map(
        label: impl Into<String>,
        map: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
    ) -> Result<Self> {
        let eqs = map
            .into_iter()
            .map(|(label, terms)| LagEquation { label, terms })
            .collect();
        Self::new(label, eqs)
    }

    /// Multiplies every coefficient of equation `i` by `k`.
    pub fn scale_equation(&mut self, i: usize, k: f64) {
        for c in self.equations[i].terms.values_mut() {
            c.iter_mut().for_each(|x| *x *= k);
        }
    }
}

/// A root shared by polynomials in two different equations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedRoot {
    pub root: Complex64,
    /// `(equation, variable)` pairs whose polynomials vanish at `root`, sorted.
    pub involved: Vec<(String, String)>,
}

/// A variable entering two equations only through constants with equal marginal effects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantCancellation {
    pub variable: String,
    pub equations: (String, String),
    pub marginal_effect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub shared_roots: Vec<SharedRoot>,
    pub constant_cancellations: Vec<ConstantCancellation>,
    pub reduced: bool,
}

/// Default tolerance floor for "same root".
pub const SCAN_TOL: f64 = 1e-10;

fn same_root(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol.max(1e-8 * a.norm().max(b.norm()))
}

/// Roots in `L` of `c0 + c1 L + … + cn L^n`.
fn lag_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    if c.len() < 2 {
        return Ok(Vec::new());
    }
    let high_first: Vec<f64> = c.iter().rev().copied().collect();
    find_roots(&CharPoly::monic(high_first)?)
}

/// The `L^0` coefficient of the first dynamic (degree ≥ 1) polynomial in an equation,
/// used to express constant entries as marginal effects.
fn normalizer(eq: &LagEquation) -> Option<f64> {
    eq.terms
        .values()
        .find(|c| c.len() > 1)
        .map(|c| c[0])
        .filter(|v| *v != 0.0)
}

/// Looks for shared lag roots between equations and for constant-function cancellations.
pub fn scan(system: &LagPolySystem, tol: f64) -> Result<ReductionReport> {
    let mut roots: Vec<(usize, String, Vec<Complex64>)> = Vec::new();
    for (i, eq) in system.equations.iter().enumerate() {
        for (var, c) in &eq.terms {
            roots.push((i, var.clone(), lag_roots(c)?));
        }
    }

    let mut shared: Vec<SharedRoot> = Vec::new();
    for (a, (ia, va, ra)) in roots.iter().enumerate() {
        for (ib, vb, rb) in roots.iter().skip(a + 1) {
            if ia == ib {
                continue;
            }
            for &x in ra {
                if !rb.iter().any(|&y| same_root(x, y, tol)) {
                    continue;
                }
                let ea = (system.equations[*ia].label.clone(), va.clone());
                let eb = (system.equations[*ib].label.clone(), vb.clone());
                match shared.iter_mut().find(|s| same_root(s.root, x, tol)) {
                    Some(s) => {
                        for e in [ea, eb] {
                            if !s.involved.contains(&e) {
                                s.involved.push(e);
                            }
                        }
                    }
                    None => shared.push(SharedRoot {
                        root: x,
                        involved: vec![ea, eb],
                    }),
                }
            }
        }
    }
    for s in &mut shared {
        s.involved.sort();
        // Report a canonical representative so the output does not depend on equation order.
        s.root = Complex64::new(s.root.re, s.root.im.abs());
    }
    shared.sort_by(|a, b| {
        a.root
            .norm()
            .partial_cmp(&b.root.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut constants = Vec::new();
    let n = system.equations.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (ei, ej) = (&system.equations[i], &system.equations[j]);
            let (Some(ni), Some(nj)) = (normalizer(ei), normalizer(ej)) else {
                continue;
            };
            for (var, ci) in &ei.terms {
                let Some(cj) = ej.terms.get(var) else {
                    continue;
                };
                if ci.len() != 1 || cj.len() != 1 || ci[0] == 0.0 {
                    continue;
                }
                let (mi, mj) = (ci[0] / ni, cj[0] / nj);
                if (mi - mj).abs() <= tol.max(1e-8 * mi.abs().max(mj.abs())) {
                    let mut pair = (ei.label.clone(), ej.label.clone());
                    if pair.0 > pair.1 {
                        std::mem::swap(&mut pair.0, &mut pair.1);
                    }
                    constants.push(ConstantCancellation {
                        variable: var.clone(),
                        equations: pair,
                        marginal_effect: mi,
                    });
                }
            }
        }
    }
    constants.sort_by(|a, b| (&a.variable, &a.equations).cmp(&(&b.variable, &b.equations)));

    let reduced = !shared.is_empty() || !constants.is_empty();
    Ok(ReductionReport {
        shared_roots: shared,
        constant_cancellations: constants,
        reduced,
    })
}

fn equation(label: &str, terms: &[(&str, Vec<f64>)]) -> LagEquation {
    LagEquation {
        label: label.into(),
        terms: terms
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
    }
}

/// Linearized numerator/denominator recursions of the reset price at trend inflation.
///
/// `ℵ̂` discounts at `αβ(1+π̄)^θ` and `ℶ̂` at `αβ(1+π̄)^{θ−1}`; both load the demand
/// shock `ψ̂` with one minus their discount factor, and output with different weights.
pub fn calvo_system(p: &ModelParams<f64>) -> Result<LagPolySystem> {
    let v = validate(*p)?;
    let q = v.gross_trend();
    let (a, be, th, sg, eta) = (v.alpha, v.beta, v.theta, v.sigma, v.eta);
    let fa = a * be * q.powf(th);
    let fb = a * be * q.powf(th - 1.0);
    if !(fa < 1.0 && fb < 1.0) {
        return Err(ModelError::domain(
            "pi_bar",
            "discounted recursions must converge",
        ));
    }
    LagPolySystem::new(
        format!("calvo(pi_bar={})", v.pi_bar),
        vec![
            equation(
                "aleph",
                &[
                    ("aleph", vec![1.0, -fa]),
                    ("psi", vec![1.0 - fa]),
                    ("y", vec![(1.0 - fa) * (1.0 + eta)]),
                ],
            ),
            equation(
                "beth",
                &[
                    ("beth", vec![1.0, -fb]),
                    ("psi", vec![1.0 - fb]),
                    ("y", vec![(1.0 - fb) * (1.0 - sg)]),
                ],
            ),
        ],
    )
}

/// Reset-wage numerator/denominator recursions at zero wage inflation.
pub fn wage_system(alpha_w: f64, beta: f64, theta_w: f64, eta: f64) -> Result<LagPolySystem> {
    if !(alpha_w > 0.0 && alpha_w < 1.0) {
        return Err(ModelError::domain("alpha_w", "must lie in (0,1)"));
    }
    if !(theta_w > 1.0) {
        return Err(ModelError::domain("theta_w", "must exceed 1"));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(ModelError::domain("beta", "must lie in (0,1]"));
    }
    let f = alpha_w * beta;
    let w = 1.0 - f;
    LagPolySystem::new(
        format!("wage(alpha_w={alpha_w}, theta_w={theta_w})"),
        vec![
            equation(
                "aleph_w",
                &[
                    ("aleph_w", vec![1.0, -f]),
                    ("w", vec![w * theta_w * (1.0 + eta)]),
                    ("l", vec![w * (1.0 + eta)]),
                ],
            ),
            equation(
                "beth_w",
                &[
                    ("beth_w", vec![1.0, -f]),
                    ("w", vec![w * theta_w]),
                    ("l", vec![w]),
                    ("psi", vec![w]),
                ],
            ),
        ],
    )
}
