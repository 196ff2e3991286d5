use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

use super::SolvedSystem;

/// Draws per seeding chunk. Chunk `k` uses stream `k` of the run seed, so the
/// innovations do not depend on how chunks are scheduled across threads.
pub const CHUNK: usize = 1 << 16;

/// Truncation point of normal draws, in standard deviations.
pub const TRUNCATION: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ShockDist {
    #[default]
    Normal,
    Uniform,
    TwoPoint,
}

impl std::str::FromStr for ShockDist {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "normal" => Ok(ShockDist::Normal),
            "uniform" => Ok(ShockDist::Uniform),
            "two_point" => Ok(ShockDist::TwoPoint),
            other => Err(format!(
                "unknown distribution `{other}` (expected normal, uniform or two_point)"
            )),
        }
    }
}

/// Innovation distribution (unit variance before scaling) and shock persistence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockSpec {
    #[serde(default)]
    pub dist: ShockDist,
    pub scale_psi: f64,
    pub scale_a: f64,
    #[serde(default)]
    pub rho_a: f64,
    #[serde(default)]
    pub seed: u64,
}

impl ShockSpec {
    pub fn new(scale_psi: f64, scale_a: f64, rho_a: f64, seed: u64) -> Self {
        ShockSpec {
            dist: ShockDist::Normal,
            scale_psi,
            scale_a,
            rho_a,
            seed,
        }
    }

    pub fn check(&self) -> Result<()> {
        if !(self.scale_psi >= 0.0 && self.scale_psi.is_finite()) {
            return Err(ModelError::domain(
                "scale_psi",
                "must be finite and non-negative",
            ));
        }
        if !(self.scale_a >= 0.0 && self.scale_a.is_finite()) {
            return Err(ModelError::domain(
                "scale_a",
                "must be finite and non-negative",
            ));
        }
        if !(self.rho_a >= 0.0 && self.rho_a < 1.0) {
            return Err(ModelError::domain("rho_a", "must lie in [0,1)"));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.scale_psi == 0.0 && self.scale_a == 0.0
    }
}

fn draw(dist: ShockDist, rng: &mut ChaCha8Rng) -> f64 {
    match dist {
        ShockDist::Normal => loop {
            let x: f64 = StandardNormal.sample(rng);
            if x.abs() <= TRUNCATION {
                return x;
            }
        },
        ShockDist::Uniform => (rng.random::<f64>() * 2.0 - 1.0) * 3f64.sqrt(),
        ShockDist::TwoPoint => {
            if rng.random::<bool>() {
                1.0
            } else {
                -1.0
            }
        }
    }
}

/// Standardized innovations `(ε_ψ, ε_a)` for periods `0..t`.
fn innovations(spec: &ShockSpec, t: usize) -> Vec<[f64; 2]> {
    let n_chunks = t.div_ceil(CHUNK);
    let chunks: Vec<Vec<[f64; 2]>> = (0..n_chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(k as u64);
            let len = CHUNK.min(t - k * CHUNK);
            (0..len)
                .map(|_| [draw(spec.dist, &mut rng), draw(spec.dist, &mut rng)])
                .collect()
        })
        .collect();
    chunks.concat()
}

/// Simulated deviations from trend, one series per system variable plus the shocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Path {
    pub variables: Vec<String>,
    /// `series[i][t]` is variable `i` at period `t`.
    pub series: Vec<Vec<f64>>,
    pub psi: Vec<f64>,
    pub a: Vec<f64>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| self.series[i].as_slice())
    }
}

/// Simulates `T` periods from the zero state.
pub fn simulate(sys: &SolvedSystem, shocks: &ShockSpec, t: usize) -> Result<Path> {
    shocks.check()?;
    if t == 0 {
        return Err(ModelError::domain("T", "path length must be positive"));
    }
    if shocks.rho_a != sys.rho_a {
        return Err(ModelError::domain(
            "rho_a",
            "shock persistence differs from the solved system's",
        ));
    }
    let eps = innovations(shocks, t);
    let n = sys.n_jumps + sys.n_states;
    let mut series = vec![Vec::with_capacity(t); n];
    let mut psi = Vec::with_capacity(t);
    let mut a = Vec::with_capacity(t);
    let mut s = DVector::<f64>::zeros(sys.n_states);
    let mut a_prev = 0.0;
    let mut e = DVector::<f64>::zeros(2);
    for inn in &eps {
        let psi_t = shocks.scale_psi * inn[0];
        let a_t = shocks.rho_a * a_prev + shocks.scale_a * inn[1];
        e[0] = psi_t;
        e[1] = a_t;
        let x = sys.observe(&s, &e);
        for (i, v) in x.iter().enumerate() {
            series[i].push(*v);
        }
        psi.push(psi_t);
        a.push(a_t);
        if sys.n_states > 0 {
            s = &sys.m * &s + &sys.n * &e;
        }
        a_prev = a_t;
    }
    Ok(Path {
        variables: sys.variables.clone(),
        series,
        psi,
        a,
    })
}

/// Lag-1 autocorrelation (product-moment) of a series.
pub fn autocorrelation(x: &[f64]) -> f64 {
    if x.len() < 3 {
        return f64::NAN;
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    if var == 0.0 {
        return 0.0;
    }
    let cov: f64 = x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    cov / var
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Persistence {
    pub pi: f64,
    pub y: f64,
}

/// Lag-1 autocorrelations of inflation and output.
pub fn persistence_stats(path: &Path) -> Persistence {
    let ac = |name: &str| path.get(name).map(autocorrelation).unwrap_or(f64::NAN);
    Persistence {
        pi: ac("pi"),
        y: ac("y"),
    }
}
