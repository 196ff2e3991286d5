use serde::{Deserialize, Serialize};

use crate::determinacy::Variant;
use crate::error::{ModelError, Result};
use crate::model_core::{validate, ModelParams};
use crate::phillips::{general_coeffs, CoefficientSet, MomentSet};
use crate::steady_state::SteadyState;

use super::{
    build_state_space, default_burn_in, ergodic_moments, simulate, solve_re, ErgodicEstimate,
    ShockSpec,
};

/// Iteration controls for the stochastic-equilibrium fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeOptions {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Simulated periods per iteration.
    pub periods: usize,
}

impl Default for SeOptions {
    fn default() -> Self {
        SeOptions {
            damping: 0.5,
            tol: 1e-6,
            max_iter: 200,
            periods: 400_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeResult {
    pub moments: MomentSet<f64>,
    pub coefficients: CoefficientSet<f64>,
    pub iterations: usize,
    /// Largest moment change at each iteration.
    pub history: Vec<f64>,
    /// Monte-Carlo estimate at the last iteration (absent with zero noise).
    pub estimate: Option<ErgodicEstimate>,
}

/// Fixed point moments → coefficients → solution → simulation → moments.
///
/// Moments (not coefficients) are damped: `m ← (1−w)m + w·m̂`. The same seed is used
/// at every iteration, so the map is deterministic and the iteration can settle.
pub fn stochastic_equilibrium(
    p: &ModelParams<f64>,
    shocks: &ShockSpec,
    opts: &SeOptions,
) -> Result<SeResult> {
    if !(p.beta < 1.0) {
        return Err(ModelError::RequiresDiscounting(p.beta));
    }
    shocks.check()?;
    if !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return Err(ModelError::domain("damping", "must lie in (0,1]"));
    }
    let mut base = *validate(*p)?;
    base.rho_a = shocks.rho_a;
    let mut m = MomentSet::degenerate(&base)?;
    if shocks.is_zero() {
        let coefficients = general_coeffs(&base, &m)?;
        return Ok(SeResult {
            moments: m,
            coefficients,
            iterations: 1,
            history: vec![0.0],
            estimate: None,
        });
    }
    let burn = default_burn_in(opts.periods);
    let mut history = Vec::new();
    let mut prev = m;
    for it in 1..=opts.max_iter {
        let cs = general_coeffs(&base, &m)?;
        let ss = build_state_space(&base, Some(&cs), Variant::SqrtEps)?;
        let sol = solve_re(&ss)?;
        let path = simulate(&sol, shocks, opts.periods)?;
        let est = ergodic_moments(&path, &base, burn)?;
        let next = m.blend(&est.moment_set, opts.damping);
        let diff = m
            .as_vec()
            .iter()
            .zip(next.as_vec())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        history.push(diff);
        prev = m;
        m = next;
        if diff < opts.tol {
            let coefficients = general_coeffs(&base, &m)?;
            return Ok(SeResult {
                moments: m,
                coefficients,
                iterations: it,
                history,
                estimate: Some(est),
            });
        }
    }
    Err(ModelError::NonConvergence {
        iterations: opts.max_iter,
        detail: format!(
            "last two moment iterates: {:?} and {:?}",
            prev.as_vec(),
            m.as_vec()
        ),
    })
}

/// One-sided 95% normal quantile.
const Z95: f64 = 1.644_853_626_951_472_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inequality {
    pub stochastic: f64,
    pub nonstochastic: f64,
    /// Monte-Carlo standard error of the stochastic value.
    pub standard_error: f64,
    /// The inequality holds at the one-sided 95% level.
    pub holds: bool,
    /// The two values agree to 1e−12 (degenerate case).
    pub equal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    /// `E i < i^NSS`.
    pub interest_rate: Inequality,
    /// `Δ > Δ^NSS`.
    pub dispersion: Inequality,
    /// `Y < Y^NSS`.
    pub output: Inequality,
    pub confidence: f64,
}

/// Compares a stochastic equilibrium with the non-stochastic steady state.
///
/// The interest rate is `i = (1/β)·ψu'(Y)/E[ψu'(Y)/(1+π)] − 1 = 1/(β·m_euler_1) − 1`.
pub fn theorem2_report(
    p: &ModelParams<f64>,
    se: &SeResult,
    nss: &SteadyState<f64>,
) -> InequalityReport {
    let m = &se.moments;
    let zero = MomentSet {
        m_euler_1: 0.0,
        delta: 0.0,
        y: 0.0,
        ..*m
    };
    let err = se
        .estimate
        .as_ref()
        .map(|e| e.standard_errors)
        .unwrap_or(zero);
    let rate = |e1: f64| 1.0 / (p.beta * e1) - 1.0;
    let i_nss = (1.0 + p.pi_bar) / p.beta - 1.0;
    let i_se = rate(m.m_euler_1);
    let i_err = (rate(m.m_euler_1 - err.m_euler_1) - i_se).abs();
    let mk = |s: f64, n: f64, e: f64, holds: bool| Inequality {
        stochastic: s,
        nonstochastic: n,
        standard_error: e,
        holds,
        equal: (s - n).abs() <= 1e-12 * n.abs().max(1.0),
    };
    InequalityReport {
        interest_rate: mk(i_se, i_nss, i_err, i_se + Z95 * i_err < i_nss),
        dispersion: mk(
            m.delta,
            nss.delta,
            err.delta,
            m.delta - Z95 * err.delta > nss.delta,
        ),
        output: mk(m.y, nss.y, err.y, m.y + Z95 * err.y < nss.y),
        confidence: 0.95,
    }
}
