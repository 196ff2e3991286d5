//! Structural and policy parameters, calibration presets and admissibility checks.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

/// Structural and policy parameters of the benchmark economy.
///
/// Serialized keys match the field names exactly (technology level is `A_bar`);
/// unknown keys are rejected when parsing configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: Scalar")]
pub struct ModelParams<S> {
    /// Probability a firm cannot reset its price in a given period.
    pub alpha: S,
    /// Discount factor; `1` selects the analytic limit formulas.
    pub beta: S,
    /// Elasticity of demand across varieties.
    pub theta: S,
    /// Inverse elasticity of intertemporal substitution.
    pub sigma: S,
    /// Inverse Frisch elasticity of labour supply.
    pub eta: S,
    /// Policy response to inflation.
    pub a_pi: S,
    /// Policy response to the output gap.
    pub a_y: S,
    /// Persistence of technology.
    pub rho_a: S,
    /// Trend (steady-state) net inflation per period.
    pub pi_bar: S,
    /// Steady-state technology level.
    #[serde(rename = "A_bar")]
    pub a_bar: S,
}

impl<S: Scalar> ModelParams<S> {
    /// The benchmark calibration: α=2/3, β=1, θ=6, σ=1, η=4, a_π=a_y=0.5, π̄=0.
    pub fn benchmark() -> Self {
        ModelParams {
            alpha: S::lit(2.0) / S::lit(3.0),
            beta: S::one(),
            theta: S::lit(6.0),
            sigma: S::one(),
            eta: S::lit(4.0),
            a_pi: S::lit(0.5),
            a_y: S::lit(0.5),
            rho_a: S::zero(),
            pi_bar: S::zero(),
            a_bar: S::one(),
        }
    }

    /// Gross trend inflation `1 + π̄`.
    #[inline]
    pub fn gross_trend(&self) -> S {
        S::one() + self.pi_bar
    }

    /// True when the analytic σ=1, β→1 limit formulas apply.
    pub fn is_limit_regime(&self) -> bool {
        self.sigma == S::one() && self.beta == S::one()
    }

    /// Upper admissible trend inflation `(1/α)^{1/(θ−1)} − 1`.
    pub fn max_trend_inflation(&self) -> S {
        (S::one() / self.alpha).powf(S::one() / (self.theta - S::one())) - S::one()
    }

    pub fn with_a_pi(mut self, a_pi: S) -> Self {
        self.a_pi = a_pi;
        self
    }

    pub fn with_pi_bar(mut self, pi_bar: S) -> Self {
        self.pi_bar = pi_bar;
        self
    }

    pub fn with_beta(mut self, beta: S) -> Self {
        self.beta = beta;
        self
    }

    /// Converts the parameter block into another scalar type.
    pub fn cast<T: Scalar>(&self) -> ModelParams<T> {
        let c = |x: S| T::lit(x.as_f64());
        ModelParams {
            alpha: c(self.alpha),
            beta: c(self.beta),
            theta: c(self.theta),
            sigma: c(self.sigma),
            eta: c(self.eta),
            a_pi: c(self.a_pi),
            a_y: c(self.a_y),
            rho_a: c(self.rho_a),
            pi_bar: c(self.pi_bar),
            a_bar: c(self.a_bar),
        }
    }
}

impl<S: Scalar> Default for ModelParams<S> {
    fn default() -> Self {
        Self::benchmark()
    }
}

/// Parameters that have passed [`validate`]. Dereferences to [`ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent, bound = "S: Scalar")]
pub struct ValidatedParams<S>(ModelParams<S>);

impl<S> Deref for ValidatedParams<S> {
    type Target = ModelParams<S>;
    fn deref(&self) -> &ModelParams<S> {
        &self.0
    }
}

impl<S: Scalar> ValidatedParams<S> {
    pub fn into_inner(self) -> ModelParams<S> {
        self.0
    }

    pub fn params(&self) -> &ModelParams<S> {
        &self.0
    }
}

/// Checks every admissibility bound and returns the parameters unchanged.
pub fn validate<S: Scalar>(p: ModelParams<S>) -> Result<ValidatedParams<S>> {
    let fields = [
        ("alpha", p.alpha),
        ("beta", p.beta),
        ("theta", p.theta),
        ("sigma", p.sigma),
        ("eta", p.eta),
        ("a_pi", p.a_pi),
        ("a_y", p.a_y),
        ("rho_a", p.rho_a),
        ("pi_bar", p.pi_bar),
        ("A_bar", p.a_bar),
    ];
    for (name, v) in fields {
        if !v.is_finite() {
            return Err(ModelError::domain(
                name,
                format!("{name} must be finite (got {v})"),
            ));
        }
    }
    let (zero, one) = (S::zero(), S::one());
    if !(p.theta > one) {
        return Err(ModelError::domain(
            "theta",
            format!("theta must exceed 1 (got {})", p.theta),
        ));
    }
    if !(p.alpha > zero && p.alpha < one) {
        return Err(ModelError::domain(
            "alpha",
            format!("alpha must lie in (0,1) (got {})", p.alpha),
        ));
    }
    if !(p.beta > zero && p.beta <= one) {
        return Err(ModelError::domain(
            "beta",
            format!("beta must lie in (0,1] (got {})", p.beta),
        ));
    }
    if !(p.sigma > zero) {
        return Err(ModelError::domain(
            "sigma",
            format!("sigma must be positive (got {})", p.sigma),
        ));
    }
    if !(p.eta > zero) {
        return Err(ModelError::domain(
            "eta",
            format!("eta must be positive (got {})", p.eta),
        ));
    }
    if !(p.rho_a >= zero && p.rho_a < one) {
        return Err(ModelError::domain(
            "rho_a",
            format!("rho_a must lie in [0,1) (got {})", p.rho_a),
        ));
    }
    if !(p.a_bar > zero) {
        return Err(ModelError::domain(
            "A_bar",
            format!("A_bar must be positive (got {})", p.a_bar),
        ));
    }
    if !(p.pi_bar > -one) {
        return Err(ModelError::domain(
            "pi_bar",
            format!("pi_bar must exceed -1 (got {})", p.pi_bar),
        ));
    }
    let bound = p.alpha * p.gross_trend().powf(p.theta - one);
    if !(bound < one) {
        return Err(ModelError::domain(
            "pi_bar",
            format!(
                "alpha(1+pi_bar)^(theta-1) = {bound} >= 1; pi_bar must stay below {}",
                p.max_trend_inflation()
            ),
        ));
    }
    Ok(ValidatedParams(p))
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 13] = [
    "benchmark",
    "eta1",
    "eta2",
    "eta6",
    "alpha06",
    "alpha08",
    "ay0",
    "ay1",
    "ay15",
    "ay2",
    "ay25",
    "inactive",
    "near_blowup",
];

/// A named calibration.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct CalibrationPreset<S> {
    pub name: String,
    pub params: ModelParams<S>,
}

/// Returns the benchmark calibration with the named field overridden.
pub fn preset<S: Scalar>(name: &str) -> Result<ModelParams<S>> {
    let mut p = ModelParams::<S>::benchmark();
    match name {
        "benchmark" => {}
        "eta1" => p.eta = S::lit(1.0),
        "eta2" => p.eta = S::lit(2.0),
        "eta6" => p.eta = S::lit(6.0),
        "alpha06" => p.alpha = S::lit(0.6),
        "alpha08" => p.alpha = S::lit(0.8),
        "ay0" => p.a_y = S::zero(),
        "ay1" => p.a_y = S::lit(1.0),
        "ay15" => p.a_y = S::lit(1.5),
        "ay2" => p.a_y = S::lit(2.0),
        "ay25" => p.a_y = S::lit(2.5),
        "inactive" => {
            p.a_pi = S::zero();
            p.a_y = S::zero();
        }
        "near_blowup" => p.a_pi = S::one() - S::lit(1e-6),
        other => return Err(ModelError::UnknownPreset(other.to_string())),
    }
    Ok(p)
}

/// Every preset, in [`PRESET_NAMES`] order.
pub fn all_presets<S: Scalar>() -> Vec<CalibrationPreset<S>> {
    PRESET_NAMES
        .iter()
        .map(|n| CalibrationPreset {
            name: n.to_string(),
            params: preset(n).expect("known preset"),
        })
        .collect()
}
