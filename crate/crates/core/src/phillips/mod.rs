//! Coefficient families of the linearized model.
//!
//! Every family is stored as raw numerators (tilde quantities) over a
//! denominator, so downstream code can form the exact ratios it needs:
//!
//! * Phillips curve: `b·π_t = b̃0·π_{t−1} + b̃1·ŷ_t + b̃2·Δ̂_t + b̃3·E_tπ_{t+1} + …`
//! * Euler equation: `c·ŷ_t = c̃0·π_{t−1} + c̃1·π_t + c̃2·Δ̂_t + c̃3·E_tŷ_{t+1} + …`
//! * Dispersion:     `d·Δ̂_t = d̃0·π_{t−1} + d̃1·π_t + d̃2·ŷ_t + d̃3·E_tΔ̂_{t+1}`
//!
//! The normalized coefficients reported in tables are `b_i = b̃_i / b`.

mod general;
mod limit;
mod moments;
mod surface;
mod trend;

use serde::Serialize;

pub use general::{general_coeffs, GeneralTerms};
pub use limit::{cutoff_lag, demand_response_identity, limit_coeffs};
pub use moments::MomentSet;
pub use surface::{surface_coeffs, SurfaceCoefficients};
pub use trend::trend_coeffs;

use crate::model_core::ModelParams;
use crate::scalar::Scalar;

/// Euler-equation family `c, c̃0..c̃3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct EulerCoefficients<S> {
    pub c: S,
    pub c0: S,
    pub c1: S,
    pub c2: S,
    pub c3: S,
}

/// Dispersion family `d, d̃0..d̃3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct DispersionCoefficients<S> {
    pub d: S,
    pub d0: S,
    pub d1: S,
    pub d2: S,
    pub d3: S,
}

/// Denominators and raw numerators of the linearized system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct CoefficientSet<S> {
    pub b: S,
    pub b0: S,
    pub b1: S,
    pub b2: S,
    pub b3: S,
    /// Error-term numerator; only defined in the limit regime.
    pub b4: Option<S>,
    #[serde(flatten)]
    pub euler: Option<EulerCoefficients<S>>,
    #[serde(flatten)]
    pub dispersion: Option<DispersionCoefficients<S>>,
}

/// Phillips-curve coefficients divided by their denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct NormalizedPhillips<S> {
    pub b0: S,
    pub b1: S,
    pub b2: S,
    pub b3: S,
    pub b4: Option<S>,
}

impl<S: Scalar> NormalizedPhillips<S> {
    pub fn as_array(&self) -> [S; 5] {
        [
            self.b0,
            self.b1,
            self.b2,
            self.b3,
            self.b4.unwrap_or_else(S::nan),
        ]
    }
}

impl<S: Scalar> CoefficientSet<S> {
    /// Phillips numerators `[b̃0, b̃1, b̃2, b̃3]`.
    pub fn phillips_numerators(&self) -> [S; 4] {
        [self.b0, self.b1, self.b2, self.b3]
    }

    /// Normalized Phillips coefficient `b̃_i / b` for `i ∈ 0..=4`.
    pub fn coeff(&self, i: usize) -> Option<S> {
        match i {
            0..=3 => Some(self.phillips_numerators()[i] / self.b),
            4 => self.b4.map(|v| v / self.b),
            _ => None,
        }
    }

    pub fn normalized(&self) -> NormalizedPhillips<S> {
        NormalizedPhillips {
            b0: self.b0 / self.b,
            b1: self.b1 / self.b,
            b2: self.b2 / self.b,
            b3: self.b3 / self.b,
            b4: self.b4.map(|v| v / self.b),
        }
    }

    /// Largest absolute difference between the Phillips families of two sets.
    pub fn phillips_distance(&self, other: &Self) -> S {
        let a = [self.b, self.b0, self.b1, self.b2, self.b3];
        let b = [other.b, other.b0, other.b1, other.b2, other.b3];
        a.iter()
            .zip(b.iter())
            .fold(S::zero(), |m, (x, y)| m.max((*x - *y).abs()))
    }

    /// Converts every entry to `f64`.
    pub fn to_f64(&self) -> CoefficientSet<f64> {
        let c = |x: S| x.as_f64();
        CoefficientSet {
            b: c(self.b),
            b0: c(self.b0),
            b1: c(self.b1),
            b2: c(self.b2),
            b3: c(self.b3),
            b4: self.b4.map(c),
            euler: self.euler.map(|e| EulerCoefficients {
                c: c(e.c),
                c0: c(e.c0),
                c1: c(e.c1),
                c2: c(e.c2),
                c3: c(e.c3),
            }),
            dispersion: self.dispersion.map(|d| DispersionCoefficients {
                d: c(d.d),
                d0: c(d.d0),
                d1: c(d.d1),
                d2: c(d.d2),
                d3: c(d.d3),
            }),
        }
    }
}

/// Slope `κ = (1−α)(1−αβ)/α` of the singular Phillips curve and the composite `ω = (σ+η)κ`.
pub fn singular_slopes<S: Scalar>(p: &ModelParams<S>) -> (S, S) {
    let one = S::one();
    let kappa = (one - p.alpha) * (one - p.alpha * p.beta) / p.alpha;
    (kappa, (p.sigma + p.eta) * kappa)
}
