//! Linear rational-expectations solution, simulation and stochastic equilibrium.
//!
//! Simulation is deterministic given the seed: innovations are drawn in
//! fixed-size chunks, each from its own ChaCha stream, and every reduction
//! combines per-batch partial sums in a fixed order, so results do not depend
//! on the number of threads.

mod equilibrium;
mod ergodic;
mod natural_rate;
mod simulate;
mod state_space;

pub use equilibrium::{
    stochastic_equilibrium, theorem2_report, Inequality, InequalityReport, SeOptions, SeResult,
};
pub use ergodic::{default_burn_in, dispersion_path, ergodic_moments, ErgodicEstimate, BATCHES};
pub use natural_rate::{natural_rate_roots, unobserved_natural_rate, NaturalRateReport};
pub use simulate::{
    autocorrelation, persistence_stats, simulate, Path, Persistence, ShockDist, ShockSpec, CHUNK,
    TRUNCATION,
};
pub use state_space::{build_state_space, solve_re, SolvedSystem, StateSpace};
