use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::scalar::Scalar;

use super::CoefficientSet;

/// Phillips-curve family at trend inflation and arbitrary discounting, in the small-noise limit.
///
/// Only the `b` family is defined here; Euler and dispersion families are `None`.
pub fn trend_coeffs<S: Scalar>(p: &ModelParams<S>) -> Result<CoefficientSet<S>> {
    let (one, two) = (S::one(), S::lit(2.0));
    let (a, be, th, sg, eta) = (p.alpha, p.beta, p.theta, p.sigma, p.eta);
    if !(be > S::zero() && be <= one) {
        return Err(ModelError::domain(
            "beta",
            "trend coefficients need beta in (0,1]",
        ));
    }
    let policy = sg + be * p.a_y;
    if policy == S::zero() {
        return Err(ModelError::SingularPolicy("sigma + beta*a_y = 0".into()));
    }
    let pi = p.pi_bar;
    let q = one + pi;
    let qt1 = q.powf(th - one);
    let qt2 = q.powf(th - two);
    let br = one - a * qt1;
    if !(br > S::zero()) {
        return Err(ModelError::domain(
            "pi_bar",
            "1 - alpha(1+pi_bar)^(theta-1) must be positive",
        ));
    }
    let scale = (one - a).powf(one / (th - one));
    let discount = one - a * be * q.powf(th);
    // Reset-price weight (1−αq^{θ−1})^{θ/(θ−1)} / ((1−α)^{1/(θ−1)} q^{θ−2}); equals 1−α at π=0.
    let reset = br.powf(th / (th - one)) / (scale * qt2);
    // (1−αq^{θ−1})/q^{θ−2} · (1−αβq^θ)(σ+η): the real-marginal-cost channel.
    let channel = br / qt2 * discount * (sg + eta);

    let b = be * (a * qt1 * (two + pi) + reset + channel / (a * policy))
        - eta * th * pi * scale / br.powf(two / (th - one));
    let b0 = one + p.a_pi * channel / (a * policy);
    let b1 = channel * (be * (one - a * pi * qt1) - one / (a * policy));
    let b2 = -eta * q * br / (a * a) * discount * (be - a * a * qt1);
    let b3 = a * be * be * (a * q.powf(two * th - one) + reset);
    Ok(CoefficientSet {
        b,
        b0,
        b1,
        b2,
        b3,
        b4: None,
        euler: None,
        dispersion: None,
    })
}
