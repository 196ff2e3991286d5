use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::scalar::Scalar;

/// Residual singular surface `g·π_t = g̃0·π_{t−1} + g̃1·ŷ_t + g̃2·Δ̂_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SurfaceCoefficients<S> {
    pub g: S,
    pub g0: S,
    pub g1: S,
    pub g2: S,
    /// True when the denominator `g` is non-positive at these parameters.
    pub sign_flip: bool,
    /// Inflation response at which `g` changes sign, holding the other parameters fixed.
    pub sign_flip_a_pi: S,
    /// Whether the σ=1, β=1 limit forms were used.
    pub limit_form: bool,
}

impl<S: Scalar> SurfaceCoefficients<S> {
    /// `(g̃0/g, g̃1/g, g̃2/g)`.
    pub fn normalized(&self) -> (S, S, S) {
        (self.g0 / self.g, self.g1 / self.g, self.g2 / self.g)
    }
}

/// Coefficients of the residual singular surface.
pub fn surface_coeffs<S: Scalar>(p: &ModelParams<S>) -> Result<SurfaceCoefficients<S>> {
    let one = S::one();
    let (a, be, sg, eta) = (p.alpha, p.beta, p.sigma, p.eta);
    if !(be > S::zero() && be <= one) {
        return Err(ModelError::domain(
            "beta",
            "surface coefficients need beta in (0,1]",
        ));
    }
    let policy = sg + be * p.a_y;
    if policy == S::zero() {
        return Err(ModelError::SingularPolicy("sigma + beta*a_y = 0".into()));
    }
    let limit_form = p.is_limit_regime();
    let (g, g0, g1, g2, flip_at) = if limit_form {
        let slope = (one - a).powi(2) / a * (one + eta) / (one + p.a_y);
        let b = one + a + slope;
        let two = S::lit(2.0);
        (
            one + a + (two - p.a_pi) * slope,
            -b,
            slope,
            eta * (one - a).powi(3) / (a * a) * (one + a),
            two + (one + a) / slope,
        )
    } else {
        let slope = (one - a) * (one - a * be) / a * (sg + eta) / policy;
        let level = be * be * (one + a) - (one - be);
        (
            level + (be * (one + be) - p.a_pi) * slope,
            -be * (one + a + slope),
            slope,
            eta * (one - a) * (one - a * be) / (a * a) * (be - a * a * (one - be)),
            be * (one + be) + level / slope,
        )
    };
    Ok(SurfaceCoefficients {
        g,
        g0,
        g1,
        g2,
        sign_flip: g <= S::zero(),
        sign_flip_a_pi: flip_at,
        limit_form,
    })
}
