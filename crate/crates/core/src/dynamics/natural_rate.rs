use num_complex::Complex64;
use serde::Serialize;

use crate::determinacy::{singular_q, Variant};
use crate::error::Result;
use crate::model_core::{validate, ModelParams};

use super::{build_state_space, persistence_stats, simulate, solve_re, ShockSpec};

/// Inverse eigenvalues `x₁ ≥ x₂` of the standard system, roots of `x² − Qx + R`.
pub fn natural_rate_roots(p: &ModelParams<f64>) -> (Complex64, Complex64) {
    let (q0, q1) = singular_q(p);
    let big_q = -q0;
    let disc = Complex64::new(big_q * big_q - 4.0 * q1, 0.0).sqrt();
    ((big_q + disc) / 2.0, (big_q - disc) / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalRateReport {
    pub rho_a: f64,
    pub x1: Complex64,
    pub x2: Complex64,
    /// Impact responses of inflation to `(ψ̂, â)`.
    pub pi_response: (f64, f64),
    pub periods: usize,
    pub corr_pi: f64,
    pub corr_y: f64,
    /// Persistence asserted for this scenario, `√ρ_a`.
    pub claimed_corr_pi: f64,
    /// Largest persistence the linear solution allows: `ρ_a` (inflation is a
    /// combination of i.i.d. ψ̂ and AR(1) â).
    pub bound_corr_pi: f64,
}

/// The standard model when policy cannot see the natural rate, driven by
/// productivity with persistence `rho_a` and i.i.d. demand shocks.
pub fn unobserved_natural_rate(
    p: &ModelParams<f64>,
    rho_a: f64,
    scale_psi: f64,
    scale_a: f64,
    periods: usize,
    seed: u64,
) -> Result<NaturalRateReport> {
    let mut q = *validate(*p)?;
    q.rho_a = rho_a;
    let sol = solve_re(&build_state_space(&q, None, Variant::Singular)?)?;
    let shocks = ShockSpec::new(scale_psi, scale_a, rho_a, seed);
    let path = simulate(&sol, &shocks, periods)?;
    let stats = persistence_stats(&path);
    let (x1, x2) = natural_rate_roots(&q);
    Ok(NaturalRateReport {
        rho_a,
        x1,
        x2,
        pi_response: (sol.h[(0, 0)], sol.h[(0, 1)]),
        periods,
        corr_pi: stats.pi,
        corr_y: stats.y,
        claimed_corr_pi: rho_a.sqrt(),
        bound_corr_pi: rho_a,
    })
}
