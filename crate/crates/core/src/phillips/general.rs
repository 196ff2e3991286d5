use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::scalar::Scalar;

use super::{CoefficientSet, DispersionCoefficients, EulerCoefficients, MomentSet};

/// Named sub-expressions shared by the general coefficient formulas.
///
/// With `q = 1+π` at the point value and moments `mθ, mθ1, mθ2, me1, me2, md, mj`:
///
/// | name | expression |
/// |------|------------|
/// | `x`  | `ν'(ΔY/A)·Y/A` (marginal disutility of labour in output units) |
/// | `u`  | `ψu'(Y)Y` |
/// | `r`  | `((1−α)/(1−αq^{θ−1}))^{1/(θ−1)}` (relative reset price) |
/// | `k`  | `(1−αq^{θ−1})/q^{θ−2}` |
/// | `dx` | `x + αβmθ·x/(1−αβmθ)` (numerator level ℵ / ψ) |
/// | `du` | `u + αβmθ1·u/(1−αβmθ1)` (denominator level ℶ / ψ) |
/// | `s`  | `σ + a_y·β·me1` (policy-adjusted curvature) |
/// | `ratio` | `me2/me1` |
/// | `w_m`, `w_0` | marginal-cost channel with and without the `mθ1`/`mθ` weights |
/// | `jd` | dispersion elasticity bracket |
/// | `h`  | reset-price forward bracket |
/// | `t`  | `α·mθ1·mθ + k·h` |
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct GeneralTerms<S> {
    pub x: S,
    pub u: S,
    pub r: S,
    pub k: S,
    pub dx: S,
    pub du: S,
    pub s: S,
    pub ratio: S,
    pub w_m: S,
    pub w_0: S,
    pub jd: S,
    pub h: S,
    pub t: S,
}

impl<S: Scalar> GeneralTerms<S> {
    pub fn new(p: &ModelParams<S>, m: &MomentSet<S>) -> Result<Self> {
        let (one, two) = (S::one(), S::lit(2.0));
        let (a, be, th, sg, eta) = (p.alpha, p.beta, p.theta, p.sigma, p.eta);
        let ab = a * be;
        let q = one + m.pi;
        let br = one - a * q.powf(th - one);
        if !(br > S::zero()) {
            return Err(ModelError::domain(
                "pi",
                "point inflation outside the admissible band",
            ));
        }
        let labour = m.delta * m.y / m.a;
        let x = labour.powf(eta) * m.y / m.a;
        let u = m.psi * m.y.powf(-sg) * m.y;
        let r = ((one - a) / br).powf(one / (th - one));
        let k = br / q.powf(th - two);
        let dx = x + ab * m.m_theta * x / (one - ab * m.m_theta);
        let du = u + ab * m.m_theta_1 * u / (one - ab * m.m_theta_1);
        let s = sg + p.a_y * be * m.m_euler_1;
        if s == S::zero() {
            return Err(ModelError::SingularPolicy(
                "sigma + a_y*beta*E[psi u'(Y)/(1+pi)] = 0".into(),
            ));
        }
        let ratio = m.m_euler_2 / m.m_euler_1;
        let mc_share = (one - sg) * u * (th - one) / th * r;
        let w_m = (one + eta) * x * m.m_theta_1 - mc_share * m.m_theta;
        let w_0 = (one + eta) * x - mc_share;
        let gap = one - a * m.m_theta;
        let jd =
            (m.m_disp_pow * m.m_theta_1 - m.m_joint_disp * gap) / (m.m_disp_pow * m.m_theta * gap);
        let h = th * m.m_theta_1 * m.m_theta_1 * x / (one - ab * m.m_theta_1) / dx
            - (th - one) * m.m_theta * m.m_theta_2 * (u / (one - ab * m.m_theta_1)) / du;
        let t = a * m.m_theta_1 * m.m_theta + k * h;
        Ok(GeneralTerms {
            x,
            u,
            r,
            k,
            dx,
            du,
            s,
            ratio,
            w_m,
            w_0,
            jd,
            h,
            t,
        })
    }
}

/// Full stochastic-moment coefficient families (β<1).
///
/// The ratio `(u'/u'')·E[ψu''/(1+π)]/E[ψu'/(1+π)]` is closed at one (point-value closure),
/// so it enters as `σ`. The error coefficient `b̃4` is not defined away from the limit and is `None`.
pub fn general_coeffs<S: Scalar>(
    p: &ModelParams<S>,
    m: &MomentSet<S>,
) -> Result<CoefficientSet<S>> {
    let one = S::one();
    if !(p.beta < one) {
        return Err(ModelError::RequiresDiscounting(p.beta.as_f64()));
    }
    m.check(p.alpha, p.beta)?;
    let g = GeneralTerms::new(p, m)?;
    let (a, be, th, sg, eta) = (p.alpha, p.beta, p.theta, p.sigma, p.eta);
    let ab = a * be;
    let demand = g.ratio / (a * g.s);

    let forward = th * m.m_theta_1 * g.x / (one - ab * m.m_theta)
        - be * (th - one).powi(2) / th * g.r * m.m_theta_2 * g.u / (one - ab * m.m_theta_1)
        + g.w_m * demand;
    let b = ab * m.m_theta_1 * (S::lit(2.0) + m.pi)
        + (g.k / a) / g.dx * (ab * forward - eta * th * g.x * g.jd);
    let b0 = one + g.k / g.dx * p.a_pi * be * m.m_euler_1 * g.w_m / (a * g.s);
    let b1 = g.k / g.dx * (be * g.w_m - sg * g.w_0 / (a * g.s));
    let b2 = eta * g.k / (a * a) * (a * a * be * m.m_theta_1 * g.x - g.x / m.m_theta) / g.dx;
    let b3 = a * be * be * g.t;

    let euler = EulerCoefficients {
        c: be * be * g.t + b1 * demand,
        c0: -b0 * demand,
        c1: -be * be * g.t * p.a_pi * be * m.m_euler_1 / g.s + b * demand,
        c2: -b2 * demand,
        c3: demand * g.h * a * be * be * (a * m.m_theta_1 * m.m_theta + g.k),
    };
    let elasticity = th * g.jd;
    let dispersion = DispersionCoefficients {
        d: a * be * be * g.t
            + elasticity * eta * g.k / a * (g.x - be * m.m_theta_1 * g.x / m.m_theta) / g.dx,
        d0: b0 * elasticity,
        d1: -elasticity,
        d2: b1 * elasticity,
        d3: be * be * g.t / m.m_theta,
    };
    Ok(CoefficientSet {
        b,
        b0,
        b1,
        b2,
        b3,
        b4: None,
        euler: Some(euler),
        dispersion: Some(dispersion),
    })
}
