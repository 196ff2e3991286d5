use serde::Serialize;

use crate::dispersion::delta_nss;
use crate::error::{ModelError, Result};
use crate::model_core::{validate, ModelParams};
use crate::scalar::Scalar;
use crate::steady_state::compute_nss;

/// Ergodic expectation functionals and the point values at which they are evaluated.
///
/// The Euler moments are normalized by the point value `ψu'(Y)`, so with no
/// uncertainty `m_euler_1 = 1/(1+π)` and `m_euler_2 = 1/(1+π)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct MomentSet<S> {
    /// `E(1+π)^θ`
    pub m_theta: S,
    /// `E(1+π)^{θ−1}`
    pub m_theta_1: S,
    /// `E(1+π)^{θ−2}`
    pub m_theta_2: S,
    /// `E[ψu'(Y)/(1+π)] / ψu'(Y)`
    pub m_euler_1: S,
    /// `E[ψu'(Y)/(1+π)²] / ψu'(Y)`
    pub m_euler_2: S,
    /// `E(1+π)^{θ−2}(1−α(1+π)^{θ−1})^{1/(θ−1)}`
    pub m_joint_disp: S,
    /// `E(1−α(1+π)^{θ−1})^{θ/(θ−1)}`
    pub m_disp_pow: S,
    pub pi: S,
    pub y: S,
    pub delta: S,
    pub psi: S,
    #[serde(rename = "A")]
    pub a: S,
}

impl<S: Scalar> MomentSet<S> {
    /// Moments of the degenerate distribution at the parameters' trend inflation,
    /// with point values at the non-stochastic steady state.
    pub fn degenerate(p: &ModelParams<S>) -> Result<Self> {
        let v = validate(*p)?;
        let one = S::one();
        let th = p.theta;
        let q = p.gross_trend();
        let ss = compute_nss(&v)?;
        let br = one - p.alpha * q.powf(th - one);
        Ok(MomentSet {
            m_theta: q.powf(th),
            m_theta_1: q.powf(th - one),
            m_theta_2: q.powf(th - S::lit(2.0)),
            m_euler_1: one / q,
            m_euler_2: one / (q * q),
            m_joint_disp: q.powf(th - S::lit(2.0)) * br.powf(one / (th - one)),
            m_disp_pow: br.powf(th / (th - one)),
            pi: p.pi_bar,
            y: ss.y,
            delta: ss.delta,
            psi: one,
            a: p.a_bar,
        })
    }

    /// Inflation-only moments from a sample of inflation rates; point values for `y`, `Δ`
    /// are taken from the non-stochastic steady state at the sample mean.
    pub fn from_inflation_sample(p: &ModelParams<S>, sample: &[S]) -> Result<Self> {
        if sample.is_empty() {
            return Err(ModelError::domain("sample", "empty inflation sample"));
        }
        let one = S::one();
        let th = p.theta;
        let n = S::from_usize(sample.len()).expect("length representable");
        let mean = |f: &dyn Fn(S) -> S| sample.iter().map(|&x| f(x)).sum::<S>() / n;
        let pi_mean = mean(&|x| x);
        if sample
            .iter()
            .any(|&x| !(p.alpha * (one + x).powf(th - one) < one))
        {
            return Err(ModelError::domain(
                "pi",
                "inflation draw outside the admissible band",
            ));
        }
        let mut base = *p;
        base.pi_bar = pi_mean;
        let v = validate(base)?;
        let ss = compute_nss(&v)?;
        let delta = delta_nss(&v, pi_mean)?;
        Ok(MomentSet {
            m_theta: mean(&|x| (one + x).powf(th)),
            m_theta_1: mean(&|x| (one + x).powf(th - one)),
            m_theta_2: mean(&|x| (one + x).powf(th - S::lit(2.0))),
            m_euler_1: mean(&|x| one / (one + x)),
            m_euler_2: mean(&|x| one / ((one + x) * (one + x))),
            m_joint_disp: mean(&|x| {
                (one + x).powf(th - S::lit(2.0))
                    * (one - p.alpha * (one + x).powf(th - one)).powf(one / (th - one))
            }),
            m_disp_pow: mean(&|x| (one - p.alpha * (one + x).powf(th - one)).powf(th / (th - one))),
            pi: pi_mean,
            y: ss.y,
            delta,
            psi: one,
            a: p.a_bar,
        })
    }

    /// Checks positivity and the convergence conditions `αβ·E(1+π)^θ < 1`, `αβ·E(1+π)^{θ−1} < 1`.
    pub fn check(&self, alpha: S, beta: S) -> Result<()> {
        let vals = [
            ("m_theta", self.m_theta),
            ("m_theta_1", self.m_theta_1),
            ("m_theta_2", self.m_theta_2),
            ("m_euler_1", self.m_euler_1),
            ("m_euler_2", self.m_euler_2),
            ("m_joint_disp", self.m_joint_disp),
            ("m_disp_pow", self.m_disp_pow),
            ("y", self.y),
            ("delta", self.delta),
            ("psi", self.psi),
            ("A", self.a),
        ];
        for (name, v) in vals {
            if !(v > S::zero() && v.is_finite()) {
                return Err(ModelError::MomentDivergence(format!(
                    "{name} = {v} must be positive and finite"
                )));
            }
        }
        let ab = alpha * beta;
        if !(ab * self.m_theta < S::one()) {
            return Err(ModelError::MomentDivergence(format!(
                "alpha*beta*E(1+pi)^theta = {} >= 1",
                ab * self.m_theta
            )));
        }
        if !(ab * self.m_theta_1 < S::one()) {
            return Err(ModelError::MomentDivergence(format!(
                "alpha*beta*E(1+pi)^(theta-1) = {} >= 1",
                ab * self.m_theta_1
            )));
        }
        Ok(())
    }

    /// Moment vector used for convergence checks, in field order.
    pub fn as_vec(&self) -> Vec<S> {
        vec![
            self.m_theta,
            self.m_theta_1,
            self.m_theta_2,
            self.m_euler_1,
            self.m_euler_2,
            self.m_joint_disp,
            self.m_disp_pow,
            self.pi,
            self.y,
            self.delta,
            self.psi,
            self.a,
        ]
    }

    /// Convex combination `(1−w)·self + w·other`, field by field.
    pub fn blend(&self, other: &Self, w: S) -> Self {
        let one = S::one();
        let mix = |a: S, b: S| (one - w) * a + w * b;
        MomentSet {
            m_theta: mix(self.m_theta, other.m_theta),
            m_theta_1: mix(self.m_theta_1, other.m_theta_1),
            m_theta_2: mix(self.m_theta_2, other.m_theta_2),
            m_euler_1: mix(self.m_euler_1, other.m_euler_1),
            m_euler_2: mix(self.m_euler_2, other.m_euler_2),
            m_joint_disp: mix(self.m_joint_disp, other.m_joint_disp),
            m_disp_pow: mix(self.m_disp_pow, other.m_disp_pow),
            pi: mix(self.pi, other.pi),
            y: mix(self.y, other.y),
            delta: mix(self.delta, other.delta),
            psi: mix(self.psi, other.psi),
            a: mix(self.a, other.a),
        }
    }
}
