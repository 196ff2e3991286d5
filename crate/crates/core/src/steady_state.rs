//! Closed-form non-stochastic steady state at an arbitrary trend inflation rate.

use serde::Serialize;

use crate::dispersion::delta_nss;
use crate::error::Result;
use crate::model_core::ValidatedParams;
use crate::scalar::Scalar;

/// Discounted welfare: finite for β<1, a tagged divergent value at β=1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(
    tag = "kind",
    content = "value",
    rename_all = "snake_case",
    bound = "S: Scalar"
)]
pub enum Welfare<S> {
    Finite(S),
    /// `u/(1−β)` with β=1; `positive` records the sign of the divergence.
    Unbounded {
        positive: bool,
    },
}

impl<S: Scalar> Welfare<S> {
    pub fn finite(&self) -> Option<S> {
        match *self {
            Welfare::Finite(v) => Some(v),
            Welfare::Unbounded { .. } => None,
        }
    }

    /// Value as a float (`±∞` when unbounded).
    pub fn as_value(&self) -> S {
        match *self {
            Welfare::Finite(v) => v,
            Welfare::Unbounded { positive: true } => S::infinity(),
            Welfare::Unbounded { positive: false } => S::neg_infinity(),
        }
    }
}

/// Non-stochastic steady-state quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SteadyState<S> {
    pub mc: S,
    pub w: S,
    pub delta: S,
    pub y: S,
    pub l: S,
    /// Aggregate profit share of output, `1 − mc·Δ`.
    pub profit_rate: S,
    pub u: S,
    pub welfare: Welfare<S>,
}

/// Real marginal cost that sustains trend inflation `π` (optimal reset price condition).
pub fn marginal_cost<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> S {
    let one = S::one();
    let q = one + pi;
    let ab = p.alpha * p.beta;
    let th = p.theta;
    let reset = ((one - p.alpha) / (one - p.alpha * q.powf(th - one))).powf(one / (th - one));
    (th - one) / th * (one - ab * q.powf(th)) / (one - ab * q.powf(th - one)) * reset
}

/// Period utility `u(Y) − L^{1+η}/(1+η)`, log utility at σ=1.
pub fn period_utility<S: Scalar>(sigma: S, eta: S, y: S, l: S) -> S {
    let one = S::one();
    let consumption = if (sigma - one).abs() <= S::lit(1e-12) {
        y.ln()
    } else {
        y.powf(one - sigma) / (one - sigma)
    };
    consumption - l.powf(one + eta) / (one + eta)
}

/// Evaluates the steady state at the parameter block's trend inflation.
pub fn compute_nss<S: Scalar>(p: &ValidatedParams<S>) -> Result<SteadyState<S>> {
    let one = S::one();
    let pi = p.pi_bar;
    let delta = delta_nss(p, pi)?;
    let mc = marginal_cost(p, pi);
    let a = p.a_bar;
    let w = mc * a;
    // Labour supply L^η = w·Y^{−σ} with market clearing Y = A·L/Δ.
    let l = (w * (delta / a).powf(p.sigma)).powf(one / (p.sigma + p.eta));
    let y = a * l / delta;
    let u = period_utility(p.sigma, p.eta, y, l);
    let welfare = if p.beta < one {
        Welfare::Finite(u / (one - p.beta))
    } else {
        Welfare::Unbounded {
            positive: u > S::zero(),
        }
    };
    Ok(SteadyState {
        mc,
        w,
        delta,
        y,
        l,
        profit_rate: one - mc * delta,
        u,
        welfare,
    })
}

/// Labour at zero trend inflation in the displayed exponent form, `((θ−1)/θ)^{1/(σ+η)}·A^{(1−σ)/(σ+η)}`.
pub fn labor_zinss_closed_form<S: Scalar>(p: &ValidatedParams<S>) -> S {
    let one = S::one();
    ((p.theta - one) / p.theta).powf(one / (p.sigma + p.eta))
        * p.a_bar.powf((one - p.sigma) / (p.sigma + p.eta))
}

/// Profit of a firm whose price was last reset `a` periods ago.
pub fn profit_by_age<S: Scalar>(p: &ValidatedParams<S>, ss: &SteadyState<S>, a: u32) -> S {
    let q = p.gross_trend();
    let age = S::from_u32(a).expect("age representable");
    (q.powf(-age) - ss.mc) * q.powf(-age * p.theta) * ss.y
}

const CUTOFF_SCAN_LIMIT: u32 = 10_000;

/// Smallest price age with negative profit, if any.
pub fn negative_profit_cutoff<S: Scalar>(
    p: &ValidatedParams<S>,
    ss: &SteadyState<S>,
) -> Option<u32> {
    let one = S::one();
    if ss.mc >= one {
        return Some(0);
    }
    if p.pi_bar <= S::zero() {
        return None;
    }
    if let Some(a) = (0..=CUTOFF_SCAN_LIMIT).find(|&a| profit_by_age(p, ss, a) < S::zero()) {
        return Some(a);
    }
    // Profit turns negative once (1+π̄)^{−a} < mc, i.e. a > −ln(mc)/ln(1+π̄).
    let bound = -ss.mc.ln() / p.gross_trend().ln();
    (bound.floor() + one).to_u32()
}

/// Whether preferences admit a balanced growth path (σ = 1 within 1e−12).
pub fn balanced_growth_admissible<S: Scalar>(sigma: S) -> bool {
    (sigma - S::one()).abs() <= S::lit(1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_core::{validate, ModelParams};

    fn bench() -> ValidatedParams<f64> {
        validate(ModelParams::benchmark()).unwrap()
    }

    #[test]
    fn zinss_values() {
        let ss = compute_nss(&bench()).unwrap();
        assert!((ss.mc - 5.0 / 6.0).abs() < 1e-14);
        assert!((ss.delta - 1.0).abs() < 1e-14);
        assert!((ss.l - (5.0f64 / 6.0).powf(0.2)).abs() < 1e-14);
        assert!((ss.l - 0.9642).abs() < 1e-4);
        assert!((ss.l - labor_zinss_closed_form(&bench())).abs() < 1e-14);
        assert!(matches!(ss.welfare, Welfare::Unbounded { positive: false }));
    }

    #[test]
    fn trend_dispersion_value() {
        let p = validate(ModelParams::<f64>::benchmark().with_pi_bar(0.02)).unwrap();
        let ss = compute_nss(&p).unwrap();
        assert!((ss.delta - 1.0107).abs() < 5e-4, "{}", ss.delta);
    }

    #[test]
    fn profit_age_examples() {
        let p = bench();
        let ss = compute_nss(&p).unwrap();
        assert!((profit_by_age(&p, &ss, 0) - (1.0 - ss.mc) * ss.y).abs() < 1e-15);
        assert_eq!(negative_profit_cutoff(&p, &ss), None);

        let p = validate(ModelParams::<f64>::benchmark().with_pi_bar(0.02)).unwrap();
        let ss = compute_nss(&p).unwrap();
        assert!(profit_by_age(&p, &ss, 0) > profit_by_age(&p, &ss, 4));
        let cut = negative_profit_cutoff(&p, &ss).unwrap();
        assert!(profit_by_age(&p, &ss, cut) < 0.0);
        assert!(profit_by_age(&p, &ss, cut - 1) >= 0.0);

        let p = validate(ModelParams::<f64>::benchmark().with_pi_bar(-0.01)).unwrap();
        let ss = compute_nss(&p).unwrap();
        assert_eq!(negative_profit_cutoff(&p, &ss), None);
    }

    #[test]
    fn balanced_growth() {
        assert!(balanced_growth_admissible(1.0f64));
        assert!(!balanced_growth_admissible(2.0f64));
        assert!(balanced_growth_admissible(1.0f64 + 1e-15));
    }
}
