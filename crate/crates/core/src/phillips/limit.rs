use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::scalar::Scalar;

use super::{CoefficientSet, DispersionCoefficients, EulerCoefficients};

fn require_limit<S: Scalar>(p: &ModelParams<S>, what: &str) -> Result<()> {
    if !p.is_limit_regime() {
        return Err(ModelError::RequiresLimitRegime(format!(
            "{what} needs sigma = 1 and beta = 1 (got sigma = {}, beta = {}); use the general formulas",
            p.sigma, p.beta
        )));
    }
    if p.pi_bar != S::zero() {
        return Err(ModelError::RequiresLimitRegime(format!(
            "{what} is a zero-inflation expansion (got pi_bar = {}); use trend_coeffs",
            p.pi_bar
        )));
    }
    Ok(())
}

/// `G = (1−α)²(1+η)/(α(1+a_y))`, the composite that recurs across the limit coefficients.
fn composite<S: Scalar>(p: &ModelParams<S>) -> Result<S> {
    let one = S::one();
    let ay1 = one + p.a_y;
    if ay1 == S::zero() {
        return Err(ModelError::SingularPolicy("1 + a_y = 0".into()));
    }
    Ok((one - p.alpha).powi(2) * (one + p.eta) / (p.alpha * ay1))
}

/// Coefficients in the σ=1, β→1, small-noise limit around zero inflation.
pub fn limit_coeffs<S: Scalar>(p: &ModelParams<S>) -> Result<CoefficientSet<S>> {
    require_limit(p, "limit_coeffs")?;
    let one = S::one();
    let (a, eta, api) = (p.alpha, p.eta, p.a_pi);
    let ay1 = one + p.a_y;
    let g = composite(p)?;
    let om = one - a;
    let tilt = a * ay1 - one;

    let b = one + a + g;
    let b0 = one + api * g;
    let b1 = om * om * (one + eta) * tilt / (a * ay1);
    let supply = eta * om.powi(3) * (one + a) / (a * a);
    let b2 = -supply;
    let b3 = a;
    let b4 = g;

    let euler = EulerCoefficients {
        c: one + om * om * (one + eta) * tilt / (a * a * ay1 * ay1),
        c0: -(one + api * g) / (a * ay1),
        c1: (one + a * (one - api) + g) / (a * ay1),
        c2: supply / (a * ay1),
        c3: one / ay1,
    };
    let dispersion = DispersionCoefficients {
        d: a,
        d0: S::zero(),
        d1: S::zero(),
        d2: S::zero(),
        d3: one,
    };
    Ok(CoefficientSet {
        b,
        b0,
        b1,
        b2,
        b3,
        b4: Some(b4),
        euler: Some(euler),
        dispersion: Some(dispersion),
    })
}

/// Lag coefficient at the edge of existence, `1 − α/b` (the value of `b0` at `a_π = 1`).
pub fn cutoff_lag<S: Scalar>(p: &ModelParams<S>) -> Result<S> {
    let cs = limit_coeffs(p)?;
    Ok(S::one() - p.alpha / cs.b)
}

/// Residual of the impact-response identity `(1+b̃4)·f0 + b̃4·h0 − b̃4`.
pub fn demand_response_identity<S: Scalar>(p: &ModelParams<S>, f0: S, h0: S) -> Result<S> {
    let b4 = composite(p)?;
    require_limit(p, "demand_response_identity")?;
    Ok((S::one() + b4) * f0 + b4 * h0 - b4)
}
