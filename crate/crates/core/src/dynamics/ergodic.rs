use rayon::prelude::*;
use serde::Serialize;

use crate::dispersion::{delta_nss, step};
use crate::error::{ModelError, Result};
use crate::model_core::{validate, ModelParams};
use crate::phillips::MomentSet;
use crate::steady_state::marginal_cost;

use super::Path;

/// Number of batches used for batch-means standard errors.
pub const BATCHES: usize = 32;

/// Default burn-in: 10% of the path, at least 1,000 periods, always leaving a sample.
pub fn default_burn_in(t: usize) -> usize {
    (t / 10).max(1000).min(t.saturating_sub(1))
}

/// Monte-Carlo estimate of the ergodic moments with batch-means standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErgodicEstimate {
    pub moment_set: MomentSet<f64>,
    pub standard_errors: MomentSet<f64>,
    pub n_draws: usize,
    pub burn_in: usize,
    /// Mean of the nonlinear dispersion path.
    pub delta_mean: f64,
}

const N_MOM: usize = 9;
const N_CTRL: usize = 2;
/// Control variate used by each moment (`None` for none).
const CONTROL: [Option<usize>; N_MOM] = [
    Some(0),
    Some(0),
    Some(0),
    Some(1),
    Some(1),
    Some(0),
    Some(0),
    None,
    None,
];

#[derive(Clone, Copy)]
struct Sums {
    n: f64,
    g: [f64; N_MOM],
    l: [f64; N_CTRL],
    gl: [f64; N_MOM],
    ll: [f64; N_CTRL],
}

impl Sums {
    fn zero() -> Self {
        Sums {
            n: 0.0,
            g: [0.0; N_MOM],
            l: [0.0; N_CTRL],
            gl: [0.0; N_MOM],
            ll: [0.0; N_CTRL],
        }
    }

    fn add(&mut self, o: &Sums) {
        self.n += o.n;
        for k in 0..N_MOM {
            self.g[k] += o.g[k];
            self.gl[k] += o.gl[k];
        }
        for j in 0..N_CTRL {
            self.l[j] += o.l[j];
            self.ll[j] += o.ll[j];
        }
    }
}

/// Nonlinear dispersion path driven by `π_t = π̄ + π̂_t`, started at `Δ^NSS(π̄)`.
pub fn dispersion_path(p: &ModelParams<f64>, pi_hat: &[f64]) -> Result<Vec<f64>> {
    let v = validate(*p)?;
    let mut d = delta_nss(&v, p.pi_bar)?;
    let mut out = Vec::with_capacity(pi_hat.len());
    for &x in pi_hat {
        if x != 0.0 {
            d = step(&v, d, p.pi_bar + x)?;
        }
        out.push(d);
    }
    Ok(out)
}

/// Sample analogues of every moment, evaluated at `π_t = π̄ + π̂_t`.
///
/// Moments are accumulated as deviations from their value at `π̂ = ψ̂ = ŷ = 0`, so a
/// zero-noise path returns the degenerate moments exactly. Each expectation uses a
/// control variate with known zero mean: `π̂_t` for inflation moments and
/// `ψ̂_t − σŷ_t − π̂_t` for the Euler moments. The output point value is the steady-state
/// level at the estimated dispersion and trend marginal cost; `ψ` and `A` stay at
/// their means.
pub fn ergodic_moments(
    path: &Path,
    p: &ModelParams<f64>,
    burn_in: usize,
) -> Result<ErgodicEstimate> {
    let t = path.len();
    if burn_in >= t {
        return Err(ModelError::domain(
            "burn_in",
            "must be shorter than the path",
        ));
    }
    let pi_hat = path
        .get("pi")
        .ok_or_else(|| ModelError::domain("path", "path has no inflation series"))?;
    let y_hat = path
        .get("y")
        .ok_or_else(|| ModelError::domain("path", "path has no output series"))?;
    let (a, th, sg) = (p.alpha, p.theta, p.sigma);
    let q0 = 1.0 + p.pi_bar;
    let delta = dispersion_path(p, pi_hat)?;
    for &x in &pi_hat[burn_in..] {
        if !(a * (1.0 + p.pi_bar + x).powf(th - 1.0) < 1.0) || !(1.0 + p.pi_bar + x > 0.0) {
            return Err(ModelError::MomentDivergence(format!(
                "inflation draw {} outside the admissible band",
                p.pi_bar + x
            )));
        }
    }
    let delta0 = delta_nss(&validate(*p)?, p.pi_bar)?;

    let funcs = |q: f64, e: f64| -> [f64; 7] {
        let br = 1.0 - a * q.powf(th - 1.0);
        [
            q.powf(th),
            q.powf(th - 1.0),
            q.powf(th - 2.0),
            e / q,
            e / (q * q),
            q.powf(th - 2.0) * br.powf(1.0 / (th - 1.0)),
            br.powf(th / (th - 1.0)),
        ]
    };
    let base = funcs(q0, 1.0);

    let n = t - burn_in;
    let bsize = n.div_ceil(BATCHES).max(1);
    let batches: Vec<Sums> = (0..n.div_ceil(bsize))
        .into_par_iter()
        .map(|b| {
            let mut s = Sums::zero();
            let lo = burn_in + b * bsize;
            let hi = (lo + bsize).min(t);
            for i in lo..hi {
                let x = pi_hat[i];
                let f = funcs(q0 + x, (path.psi[i] - sg * y_hat[i]).exp());
                let mut g = [0.0; N_MOM];
                for k in 0..7 {
                    g[k] = f[k] - base[k];
                }
                g[7] = delta[i] - delta0;
                g[8] = x;
                let l = [x, path.psi[i] - sg * y_hat[i] - x];
                s.n += 1.0;
                for k in 0..N_MOM {
                    s.g[k] += g[k];
                    if let Some(j) = CONTROL[k] {
                        s.gl[k] += g[k] * l[j];
                    }
                }
                for (j, lj) in l.iter().enumerate() {
                    s.l[j] += lj;
                    s.ll[j] += lj * lj;
                }
            }
            s
        })
        .collect();
    let mut total = Sums::zero();
    for b in &batches {
        total.add(b);
    }

    let nn = total.n;
    let mut est = [0.0; N_MOM];
    let mut se = [0.0; N_MOM];
    for k in 0..N_MOM {
        let mean_g = total.g[k] / nn;
        let c = match CONTROL[k] {
            Some(j) => {
                let ml = total.l[j] / nn;
                let var_l = total.ll[j] / nn - ml * ml;
                if var_l > 0.0 {
                    (total.gl[k] / nn - mean_g * ml) / var_l
                } else {
                    0.0
                }
            }
            None => 0.0,
        };
        let adj = |s: &Sums| {
            let m = s.g[k] / s.n;
            match CONTROL[k] {
                Some(j) => m - c * s.l[j] / s.n,
                None => m,
            }
        };
        // `adj` is reused for the batch means below.
        #[allow(clippy::redundant_closure_call)]
        {
            est[k] = adj(&total);
        }
        let bm: Vec<f64> = batches.iter().filter(|b| b.n > 0.0).map(adj).collect();
        let nb = bm.len() as f64;
        se[k] = if nb > 1.0 {
            let mu = bm.iter().sum::<f64>() / nb;
            (bm.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (nb - 1.0) / nb).sqrt()
        } else {
            0.0
        };
    }

    let delta_mean = delta0 + est[7];
    let v = validate(*p)?;
    let mc = marginal_cost(&v, p.pi_bar);
    let level_y = |d: f64| {
        let l = (mc * p.a_bar * (d / p.a_bar).powf(sg)).powf(1.0 / (sg + p.eta));
        p.a_bar * l / d
    };
    let y = level_y(delta_mean);
    let dy = (level_y(delta_mean + se[7]) - y).abs();
    let moment_set = MomentSet {
        m_theta: base[0] + est[0],
        m_theta_1: base[1] + est[1],
        m_theta_2: base[2] + est[2],
        m_euler_1: base[3] + est[3],
        m_euler_2: base[4] + est[4],
        m_joint_disp: base[5] + est[5],
        m_disp_pow: base[6] + est[6],
        pi: p.pi_bar + est[8],
        y,
        delta: delta_mean,
        psi: 1.0,
        a: p.a_bar,
    };
    moment_set.check(p.alpha, p.beta)?;
    let standard_errors = MomentSet {
        m_theta: se[0],
        m_theta_1: se[1],
        m_theta_2: se[2],
        m_euler_1: se[3],
        m_euler_2: se[4],
        m_joint_disp: se[5],
        m_disp_pow: se[6],
        pi: se[8],
        y: dy,
        delta: se[7],
        psi: 0.0,
        a: 0.0,
    };
    Ok(ErgodicEstimate {
        moment_set,
        standard_errors,
        n_draws: t,
        burn_in,
        delta_mean,
    })
}
