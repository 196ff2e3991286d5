//! Rival pricing models: Lucas signal extraction, Rotemberg adjustment costs, Taylor contracts.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LucasParams {
    pub eta: f64,
    /// Demand elasticity; `1.0` is the limiting case where the slope has a closed form.
    pub theta: f64,
    pub v_z: f64,
    pub v_m: f64,
}

impl LucasParams {
    fn check(&self) -> Result<()> {
        if !(self.eta > 0.0) {
            return Err(ModelError::domain("eta", "must be positive"));
        }
        if !(self.theta >= 1.0) {
            return Err(ModelError::domain("theta", "must be at least 1"));
        }
        if !(self.v_z > 0.0) {
            return Err(ModelError::domain("v_z", "variance must be positive"));
        }
        if !(self.v_m > 0.0) {
            return Err(ModelError::domain("v_m", "variance must be positive"));
        }
        Ok(())
    }

    fn rhs(&self, b: f64) -> f64 {
        let z = (1.0 + b).powi(2) * self.v_z;
        z / (self.eta * (z + (self.theta + b).powi(2) * self.v_m))
    }
}

const LUCAS_TOL: f64 = 1e-12;

/// Fixed point `b = (1/η)(1+b)²V_z / ((1+b)²V_z + (θ+b)²V_m)` on `(0, 1/η]`.
///
/// Damped iteration (weight ½) first; bisection on `b − rhs(b)` if that stalls.
pub fn lucas_slope(lp: &LucasParams) -> Result<f64> {
    lp.check()?;
    if lp.theta == 1.0 {
        return Ok(lp.v_z / (lp.eta * (lp.v_z + lp.v_m)));
    }
    let mut b = 0.5 / lp.eta;
    for _ in 0..10_000 {
        let next = 0.5 * b + 0.5 * lp.rhs(b);
        if (next - b).abs() < LUCAS_TOL {
            return Ok(next);
        }
        b = next;
    }
    let f = |b: f64| b - lp.rhs(b);
    let (mut lo, mut hi) = (0.0, 1.0 / lp.eta);
    if f(lo) > 0.0 || f(hi) < 0.0 {
        return Err(ModelError::NonConvergence {
            iterations: 10_000,
            detail: "no bracket for Lucas slope".into(),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < LUCAS_TOL {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Responses to money: `(anticipated → π, surprise → π, surprise → y)`.
pub fn lucas_responses(b: f64) -> (f64, f64, f64) {
    (1.0, 1.0 / (1.0 + b), b / (1.0 + b))
}

/// Rotemberg slope `ω̃ = (σ+η)(θ−1)/c_p`.
pub fn rotemberg_slope<S: Scalar>(p: &ModelParams<S>, c_p: S) -> Result<S> {
    if !(c_p > S::zero()) {
        return Err(ModelError::domain(
            "c_p",
            "adjustment cost must be positive",
        ));
    }
    Ok((p.sigma + p.eta) * (p.theta - S::one()) / c_p)
}

/// Adjustment cost `c_p = α(θ−1)/((1−α)(1−αβ))` equating the Rotemberg and singular Calvo slopes.
pub fn rotemberg_cp_equivalent<S: Scalar>(p: &ModelParams<S>) -> S {
    let one = S::one();
    p.alpha * (p.theta - one) / ((one - p.alpha) * (one - p.alpha * p.beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `ω̃` implied by `c_p`.
    pub omega_tilde: f64,
    /// Lucas slope consistent with the variance ratio, when equivalent.
    pub lucas_b: Option<f64>,
    pub vm_over_vz: Option<f64>,
}

/// Whether a Lucas economy with some variance ratio reproduces the Rotemberg slope.
///
/// Holds iff `ω̃ > η`; the slope `b` and the ratio `V_m/V_z = ((ω̃−η)/η)(1+b)²/(θ+b)²`
/// are solved jointly by alternating between the ratio and the Lucas fixed point.
pub fn observational_equivalence(p: &ModelParams<f64>, c_p: f64) -> Result<Equivalence> {
    let w = rotemberg_slope(p, c_p)?;
    let (eta, theta) = (p.eta, p.theta);
    if !(w > eta) {
        return Ok(Equivalence {
            equivalent: false,
            omega_tilde: w,
            lucas_b: None,
            vm_over_vz: None,
        });
    }
    let ratio_of = |b: f64| (w - eta) / eta * (1.0 + b).powi(2) / (theta + b).powi(2);
    let mut b = 0.5 / eta;
    for _ in 0..1_000 {
        // Damped: the undamped map oscillates around the fixed point.
        let ratio = ratio_of(b);
        let next = 0.5 * b
            + 0.5
                * lucas_slope(&LucasParams {
                    eta,
                    theta,
                    v_z: 1.0,
                    v_m: ratio,
                })?;
        if (next - b).abs() < 1e-10 {
            return Ok(Equivalence {
                equivalent: true,
                omega_tilde: w,
                lucas_b: Some(next),
                vm_over_vz: Some(ratio_of(next)),
            });
        }
        b = next;
    }
    Err(ModelError::NonConvergence {
        iterations: 1_000,
        detail: "joint Lucas slope / variance ratio".into(),
    })
}

/// Phillips curve of `M`-period staggered contracts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorCurve {
    pub m: usize,
    /// Weights on `π_{t−1}, …, π_{t−(M−1)}`.
    pub lag_coeffs: Vec<f64>,
    /// Weights on `E π_{t+1}, …, E π_{t+M−1}`.
    pub lead_coeffs: Vec<f64>,
    /// `(offset, weight)` for `mc_{t+offset}`, offsets `−M ..= M−1`.
    pub mc_coeffs: Vec<(i64, f64)>,
    /// Exact weights as `(numerator, denominator)`.
    #[serde(skip)]
    pub exact: TaylorExact,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaylorExact {
    pub lag: Vec<Ratio<i64>>,
    pub lead: Vec<Ratio<i64>>,
    pub mc: Vec<(i64, Ratio<i64>)>,
}

impl TaylorExact {
    pub fn inflation_sum(&self) -> Ratio<i64> {
        self.lag.iter().chain(&self.lead).copied().sum()
    }

    pub fn mc_sum(&self) -> Ratio<i64> {
        self.mc.iter().map(|(_, w)| *w).sum()
    }
}

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Inflation and marginal-cost weights of the `M`-period contract curve.
///
/// Lags and leads `s = 1..M−1` carry `(M−s)/(M(M−1))` each (½ and ½ when `M = 2`), so
/// the inflation weights sum to one. Marginal cost enters with `+1/(M(M−1))` on
/// `mc_t … mc_{t+M−1}` and `−1/(M(M−1))` on `mc_{t−1} … mc_{t−M}`.
pub fn taylor_phillips(m: usize) -> Result<TaylorCurve> {
    if m < 2 {
        return Err(ModelError::domain(
            "M",
            "contract length must be at least 2",
        ));
    }
    let mi = m as i64;
    let den = mi * (mi - 1);
    let infl: Vec<Ratio<i64>> = (1..mi).map(|s| Ratio::new(mi - s, den)).collect();
    let unit = Ratio::new(1, den);
    let mut mc: Vec<(i64, Ratio<i64>)> = (-mi..0).map(|k| (k, -unit)).collect();
    mc.extend((0..mi).map(|k| (k, unit)));
    let exact = TaylorExact {
        lag: infl.clone(),
        lead: infl,
        mc,
    };
    Ok(TaylorCurve {
        m,
        lag_coeffs: exact.lag.iter().map(|r| to_f64(*r)).collect(),
        lead_coeffs: exact.lead.iter().map(|r| to_f64(*r)).collect(),
        mc_coeffs: exact.mc.iter().map(|(k, r)| (*k, to_f64(*r))).collect(),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_examples() {
        let b = lucas_slope(&LucasParams {
            eta: 4.0,
            theta: 1.0,
            v_z: 1.0,
            v_m: 1.0,
        })
        .unwrap();
        assert_eq!(b, 0.125);
        let b = lucas_slope(&LucasParams {
            eta: 4.0,
            theta: 6.0,
            v_z: 1.0,
            v_m: 1e-12,
        })
        .unwrap();
        assert!((b - 0.25).abs() < 1e-9);
        let lp = LucasParams {
            eta: 4.0,
            theta: 6.0,
            v_z: 1.0,
            v_m: 1.0,
        };
        let b = lucas_slope(&lp).unwrap();
        assert!((b - lp.rhs(b)).abs() < 1e-12);
    }

    #[test]
    fn lucas_response_split() {
        let (a, p, y) = lucas_responses(0.125);
        assert_eq!(a, 1.0);
        assert!((p - 0.889).abs() < 5e-4 && (y - 0.111).abs() < 5e-4);
        assert_eq!(lucas_responses(0.0).1, 1.0);
    }

    #[test]
    fn rotemberg_examples() {
        let p = ModelParams::<f64>::benchmark();
        assert!((rotemberg_slope(&p, 50.0).unwrap() - 0.5).abs() < 1e-15);
        let mut q = p;
        q.theta = 8.0;
        assert!((rotemberg_slope(&q, 50.0).unwrap() - 0.7).abs() < 1e-15);
        let r = p.with_beta(0.99);
        assert!((rotemberg_cp_equivalent(&r) - 29.41).abs() < 5e-3);
        let mut s = p;
        s.alpha = 0.6;
        assert!((rotemberg_cp_equivalent(&s) - 18.75).abs() < 1e-12);
    }

    #[test]
    fn equivalence_examples() {
        let p = ModelParams::<f64>::benchmark();
        assert!(!observational_equivalence(&p, 50.0).unwrap().equivalent);
        let mut q = p;
        q.eta = 0.1;
        let c_p = (q.sigma + q.eta) * (q.theta - 1.0) / 0.5;
        let e = observational_equivalence(&q, c_p).unwrap();
        assert!(e.equivalent && e.vm_over_vz.unwrap() > 0.0);
        // The joint solution has b = 1/ω̃.
        assert!((e.lucas_b.unwrap() - 2.0).abs() < 1e-8);
        let c_eq = (q.sigma + q.eta) * (q.theta - 1.0) / q.eta;
        assert!(!observational_equivalence(&q, c_eq).unwrap().equivalent);
    }

    #[test]
    fn taylor_two_period() {
        let t = taylor_phillips(2).unwrap();
        assert_eq!(t.lag_coeffs, vec![0.5]);
        assert_eq!(t.lead_coeffs, vec![0.5]);
        // ½(mc_{t−1}−mc_{t−2}) + ½(mc_{t+1}−mc_t) + (mc_t−mc_{t−1}) collected by offset.
        let pairs = [
            (-1, 0.5),
            (-2, -0.5),
            (1, 0.5),
            (0, -0.5),
            (0, 1.0),
            (-1, -1.0),
        ];
        for (k, w) in &t.mc_coeffs {
            let expanded: f64 = pairs.iter().filter(|(o, _)| o == k).map(|(_, v)| v).sum();
            assert_eq!(*w, expanded, "offset {k}");
        }
        for m in [2, 3, 4, 8] {
            let t = taylor_phillips(m).unwrap();
            assert_eq!(t.exact.mc_sum(), Ratio::from_integer(0));
            assert_eq!(t.exact.inflation_sum(), Ratio::from_integer(1));
        }
        assert!(taylor_phillips(1).is_err());
    }
}
