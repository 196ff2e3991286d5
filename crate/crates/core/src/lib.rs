//! Numerical toolkit for the benchmark Calvo New Keynesian model.
//!
//! The crate evaluates closed-form steady states at any trend inflation rate,
//! the linearized Phillips/Euler/dispersion coefficient families, the
//! characteristic polynomials and root classification that decide existence
//! of a recursive equilibrium, lag-polynomial bifurcation checks, rival
//! pricing models, and Monte-Carlo stochastic-equilibrium fixed points.
//!
//! Formula-level modules are generic over [`Scalar`] (`f32`/`f64`); the
//! `f64` aliases at the crate root cover the common case. Linear-algebra and
//! simulation code works in `f64` internally.

// `!(x > 0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod determinacy;
pub mod dispersion;
pub mod dynamics;
pub mod error;
pub mod model_core;
pub mod phillips;
pub mod rivals;
pub mod scalar;
pub mod steady_state;

pub use error::{ModelError, Result};
pub use scalar::Scalar;

pub type Params = model_core::ModelParams<f64>;
pub type Validated = model_core::ValidatedParams<f64>;
pub type SteadyState = steady_state::SteadyState<f64>;
pub type CoefficientSet = phillips::CoefficientSet<f64>;
pub type SurfaceCoefficients = phillips::SurfaceCoefficients<f64>;
pub type MomentSet = phillips::MomentSet<f64>;
pub type CharPoly = determinacy::CharPoly<f64>;
