//! Price dispersion: the recursion, its steady state, derivatives and linearization.

use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::model_core::ValidatedParams;
use crate::phillips::MomentSet;
use crate::scalar::Scalar;

/// Current dispersion together with the inflation that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct DispersionState<S> {
    pub delta: S,
    pub pi: S,
}

/// Linearization of the dispersion recursion around trend inflation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct DispersionLinearization<S> {
    /// Response of `Δ̂_t` to `π_t` at trend inflation (zero at π̄=0).
    pub slope: S,
    /// `αθ/(1−α)^{1/(θ−1)}` at π̄=0 (the π² curvature coefficient), otherwise `slope`.
    pub c0: S,
    /// Coefficient on `Δ̂_{t−1}`, `α(1+π̄)^θ`.
    pub persistence: S,
}

/// `(1−α)^{1/(θ−1)}`, the normalising constant of the reset-price term.
#[inline]
fn reset_scale<S: Scalar>(alpha: S, theta: S) -> S {
    (S::one() - alpha).powf(S::one() / (theta - S::one()))
}

/// Checked `1 − α(1+π)^{θ−1}`, the reset-share bracket.
fn reset_bracket<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> Result<S> {
    let one = S::one();
    let q = one + pi;
    if !(q > S::zero()) {
        return Err(ModelError::domain(
            "pi",
            format!("gross inflation 1+pi = {q} must be positive"),
        ));
    }
    let br = one - p.alpha * q.powf(p.theta - one);
    if !(br > S::zero()) {
        return Err(ModelError::domain(
            "pi",
            format!("1 - alpha(1+pi)^(theta-1) = {br} is not positive at pi = {pi}"),
        ));
    }
    Ok(br)
}

/// Checked `1 − α(1+π)^θ`, the discount on inherited dispersion.
fn persistence_gap<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> Result<S> {
    let gap = S::one() - p.alpha * (S::one() + pi).powf(p.theta);
    if !(gap > S::zero()) {
        return Err(ModelError::domain(
            "pi",
            format!("alpha(1+pi)^theta >= 1 at pi = {pi}: steady-state dispersion is unbounded"),
        ));
    }
    Ok(gap)
}

/// One period of the dispersion recursion.
pub fn step<S: Scalar>(p: &ValidatedParams<S>, delta_prev: S, pi_t: S) -> Result<S> {
    let one = S::one();
    let th = p.theta;
    let br = reset_bracket(p, pi_t)?;
    let q = one + pi_t;
    Ok(br.powf(th / (th - one)) / reset_scale(p.alpha, th) + p.alpha * q.powf(th) * delta_prev)
}

/// Steady-state dispersion `Δ^NSS(π)`.
pub fn delta_nss<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> Result<S> {
    let one = S::one();
    let th = p.theta;
    let br = reset_bracket(p, pi)?;
    let gap = persistence_gap(p, pi)?;
    Ok(br.powf(th / (th - one)) / (reset_scale(p.alpha, th) * gap))
}

/// Iterates [`step`] at constant inflation until successive values agree to `tol`.
pub fn iterate_to_fixed_point<S: Scalar>(
    p: &ValidatedParams<S>,
    delta0: S,
    pi: S,
    tol: S,
    max_iter: usize,
) -> Result<S> {
    let mut d = delta0;
    for _ in 0..max_iter {
        let next = step(p, d, pi)?;
        if (next - d).abs() <= tol {
            return Ok(next);
        }
        d = next;
    }
    Err(ModelError::NonConvergence {
        iterations: max_iter,
        detail: format!("dispersion recursion at pi = {pi}"),
    })
}

/// `dΔ^NSS/dπ`; zero at π=0 with the sign of π elsewhere.
pub fn d_delta_dpi_nss<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> Result<S> {
    let one = S::one();
    let (a, th) = (p.alpha, p.theta);
    let q = one + pi;
    let s = reset_bracket(p, pi)?.powf(one / (th - one));
    let gap = persistence_gap(p, pi)?;
    Ok(a * th * pi * q.powf(th - S::lit(2.0)) * s / (reset_scale(a, th) * gap * gap))
}

/// `d²Δ^NSS/dπ²`; equals `αθ/(1−α)²` at π=0.
pub fn d2_delta_dpi2_nss<S: Scalar>(p: &ValidatedParams<S>, pi: S) -> Result<S> {
    let (one, two) = (S::one(), S::lit(2.0));
    let (a, th) = (p.alpha, p.theta);
    let q = one + pi;
    let br = reset_bracket(p, pi)?;
    let s = br.powf(one / (th - one));
    let gap = persistence_gap(p, pi)?;
    let lead = q.powf(th - two) * s / (gap * gap);
    let log_slope =
        (th - two) / q - a * q.powf(th - two) / br + two * a * th * q.powf(th - one) / gap;
    Ok(a * th / reset_scale(a, th) * lead * (one + pi * log_slope))
}

/// Linearization coefficients of the recursion around `pi_bar`.
pub fn linearization_coeffs<S: Scalar>(
    p: &ValidatedParams<S>,
    pi_bar: S,
) -> Result<DispersionLinearization<S>> {
    let one = S::one();
    let (a, th) = (p.alpha, p.theta);
    let q = one + pi_bar;
    let k = reset_scale(a, th);
    let s = reset_bracket(p, pi_bar)?.powf(one / (th - one));
    let delta = delta_nss(p, pi_bar)?;
    // ∂step/∂π divided by Δ, evaluated on the steady state.
    let slope = a * th * q.powf(th - S::lit(2.0)) / (delta * k) * (q * delta * k - s);
    let c0 = if pi_bar == S::zero() {
        a * th / k
    } else {
        slope
    };
    Ok(DispersionLinearization {
        slope,
        c0,
        persistence: a * q.powf(th),
    })
}

/// First derivative of stochastic-equilibrium dispersion with respect to mean inflation,
/// evaluated from a supplied moment set.
pub fn d_delta_dpi_stochastic<S: Scalar>(p: &ValidatedParams<S>, m: &MomentSet<S>) -> Result<S> {
    let one = S::one();
    let (a, th) = (p.alpha, p.theta);
    let gap = one - a * m.m_theta;
    if !(gap > S::zero()) {
        return Err(ModelError::MomentDivergence(format!(
            "alpha*E(1+pi)^theta = {} >= 1",
            a * m.m_theta
        )));
    }
    let bracket = m.m_theta_1 * m.m_disp_pow / (gap * gap) - m.m_joint_disp / gap;
    Ok(a * th / reset_scale(a, th) * bracket)
}

/// Locates the stationary point of stochastic dispersion in mean inflation by bisection on
/// `[−0.5, 0]` (tolerance 1e−10). `moments_at(π)` supplies the moment set at mean inflation π.
pub fn stationary_point<S, F>(p: &ValidatedParams<S>, moments_at: F) -> Result<S>
where
    S: Scalar,
    F: Fn(S) -> Result<MomentSet<S>>,
{
    let deriv = |pi: S| -> Result<S> { d_delta_dpi_stochastic(p, &moments_at(pi)?) };
    let (mut lo, mut hi) = (S::lit(-0.5), S::zero());
    let (f_lo, f_hi) = (deriv(lo)?, deriv(hi)?);
    if f_hi == S::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(ModelError::NoFlip {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let tol = S::lit(1e-10);
    while hi - lo > tol {
        let mid = (lo + hi) / S::lit(2.0);
        let f_mid = deriv(mid)?;
        if f_mid == S::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / S::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_core::{validate, ModelParams};

    fn bench() -> ValidatedParams<f64> {
        validate(ModelParams::benchmark()).unwrap()
    }

    #[test]
    fn step_examples() {
        let p = bench();
        assert_eq!(step(&p, 1.0, 0.0).unwrap(), 1.0);
        // Direct evaluation: (1−(2/3)1.02^5)^{6/5}/(1/3)^{1/5} + (2/3)1.02^6.
        assert!((step(&p, 1.0, 0.02).unwrap() - 1.002_683_324_304_661).abs() < 1e-12);
        let fixed = iterate_to_fixed_point(&p, 1.0, 0.02, 1e-13, 10_000).unwrap();
        assert!((fixed - delta_nss(&p, 0.02).unwrap()).abs() < 1e-10);
        assert!((fixed - 1.010_766_671_582_528).abs() < 1e-10);
    }

    #[test]
    fn derivative_signs() {
        let p = bench();
        assert_eq!(d_delta_dpi_nss(&p, 0.0).unwrap(), 0.0);
        assert!(d_delta_dpi_nss(&p, 0.01).unwrap() > 0.0);
        assert!(d_delta_dpi_nss(&p, -0.01).unwrap() < 0.0);
    }

    #[test]
    fn second_derivative_at_zinss() {
        let p = bench();
        let d2 = d2_delta_dpi2_nss(&p, 0.0).unwrap();
        assert!((d2 - 36.0).abs() < 1e-10);
        let h = 1e-6;
        let fd = (d_delta_dpi_nss(&p, h).unwrap() - d_delta_dpi_nss(&p, -h).unwrap()) / (2.0 * h);
        assert!((fd - d2).abs() < 1e-6);
        assert!(d2_delta_dpi2_nss(&p, 0.02).unwrap() > 0.0);
    }

    #[test]
    fn linearization_examples() {
        let p = bench();
        let z = linearization_coeffs(&p, 0.0).unwrap();
        assert!((z.persistence - 2.0 / 3.0).abs() < 1e-15);
        assert!((z.c0 - 4.0 * 3f64.powf(0.2)).abs() < 1e-12);
        assert_eq!(z.slope, 0.0);
        let t = linearization_coeffs(&p, 0.02).unwrap();
        assert!((t.persistence - 2.0 / 3.0 * 1.02f64.powi(6)).abs() < 1e-15);
        assert!((t.persistence - 0.7508).abs() < 1e-4);
    }

    #[test]
    fn slope_matches_partial_derivative_of_step() {
        let p = bench();
        let pi = 0.015;
        let d = delta_nss(&p, pi).unwrap();
        let h = 1e-6;
        let fd = (step(&p, d, pi + h).unwrap() - step(&p, d, pi - h).unwrap()) / (2.0 * h) / d;
        let lin = linearization_coeffs(&p, pi).unwrap();
        assert!((fd - lin.slope).abs() < 1e-7);
    }

    #[test]
    fn degenerate_moments_reproduce_nss_derivative() {
        let p = bench();
        for &pi in &[-0.01, 0.0, 0.01, 0.03] {
            let m = MomentSet::degenerate(&p.with_pi_bar(pi)).unwrap();
            let st = d_delta_dpi_stochastic(&p, &m).unwrap();
            let nss = d_delta_dpi_nss(&p, pi).unwrap();
            assert!((st - nss).abs() < 1e-12, "{pi}: {st} vs {nss}");
        }
        let sp = stationary_point(&p, |pi| MomentSet::degenerate(&p.with_pi_bar(pi))).unwrap();
        assert!(sp.abs() < 1e-9);
    }

    #[test]
    fn bounds_are_reported() {
        let p = bench();
        assert!(matches!(
            delta_nss(&p, 0.08),
            Err(ModelError::Domain { .. })
        ));
        assert!(step(&p, 1.0, 0.08).is_ok());
        assert!(step(&p, 1.0, 0.09).is_err());
    }
}
