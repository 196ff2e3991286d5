//! Characteristic polynomials, root finding and existence classification.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::phillips::{general_coeffs, limit_coeffs, singular_slopes, CoefficientSet, MomentSet};
use crate::scalar::Scalar;

/// Unit-circle tolerance used by every classification.
pub const UNIT_CIRCLE_TOL: f64 = 1e-8;

/// Which linearized system is being analysed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Small-noise system in `(π, y, π₋₁)`: two jumps, one state.
    SqrtEps,
    /// System with dispersion, `(π, y, Δ, π₋₁)`: two jumps, two states.
    Full,
    /// Standard forward-looking `(π, y)` system: two jumps, no states.
    Singular,
}

impl Variant {
    pub fn jumps_and_states(self) -> (usize, usize) {
        match self {
            Variant::SqrtEps => (2, 1),
            Variant::Full => (2, 2),
            Variant::Singular => (2, 0),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sqrt_eps" => Ok(Variant::SqrtEps),
            "full" => Ok(Variant::Full),
            "singular" => Ok(Variant::Singular),
            other => Err(format!(
                "unknown variant `{other}` (expected sqrt_eps, full or singular)"
            )),
        }
    }
}

/// Monic polynomial, coefficients highest degree first.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct CharPoly<S> {
    pub coefficients: Vec<S>,
}

impl<S: Scalar> CharPoly<S> {
    /// Builds a monic polynomial, dividing through by the leading coefficient.
    pub fn monic(coefficients: Vec<S>) -> Result<Self> {
        let lead = *coefficients
            .first()
            .ok_or_else(|| ModelError::DegenerateSystem("empty polynomial".into()))?;
        if lead == S::zero() || !lead.is_finite() {
            return Err(ModelError::DegenerateSystem(
                "leading coefficient is zero".into(),
            ));
        }
        Ok(CharPoly {
            coefficients: coefficients.into_iter().map(|c| c / lead).collect(),
        })
    }

    /// Expands `∏(λ − r_i)` for real roots.
    pub fn from_real_roots(roots: &[S]) -> Self {
        let mut c = vec![S::one()];
        for &r in roots {
            let mut next = vec![S::zero(); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i] = next[i] + ci;
                next[i + 1] = next[i + 1] - ci * r;
            }
            c = next;
        }
        CharPoly { coefficients: c }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![S::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        CharPoly { coefficients: c }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c.as_f64())
    }

    fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let n = self.degree();
        self.coefficients[..n]
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc * z + c.as_f64() * (n - i) as f64
            })
    }

    pub fn to_f64(&self) -> CharPoly<f64> {
        CharPoly {
            coefficients: self.coefficients.iter().map(|c| c.as_f64()).collect(),
        }
    }
}

/// Characteristic polynomial `det(λI − A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly_of_matrix<S: Scalar>(a: &[Vec<S>]) -> CharPoly<S> {
    let n = a.len();
    let mut coeffs = vec![S::one()];
    let mut m = vec![vec![S::zero(); n]; n];
    let mut c_prev = S::one();
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for l in 0..n {
                    acc = acc + a[i][l] * m[l][j];
                }
                next[i][j] = acc;
            }
            next[i][i] = next[i][i] + c_prev;
        }
        m = next;
        let mut trace = S::zero();
        for i in 0..n {
            for l in 0..n {
                trace = trace + a[i][l] * m[l][i];
            }
        }
        c_prev = -trace / S::from_usize(k).expect("small integer");
        coeffs.push(c_prev);
    }
    CharPoly {
        coefficients: coeffs,
    }
}

fn euler_of<S: Scalar>(cs: &CoefficientSet<S>) -> Result<crate::phillips::EulerCoefficients<S>> {
    cs.euler
        .ok_or_else(|| ModelError::DegenerateSystem("coefficient set has no Euler family".into()))
}

fn nonzero<S: Scalar>(v: S, name: &str) -> Result<()> {
    if v == S::zero() || !v.is_finite() {
        return Err(ModelError::DegenerateSystem(format!(
            "{name} is zero or not finite"
        )));
    }
    Ok(())
}

/// Transition matrix of `E_t X_{t+1} = B X_t`, `X = (π, y, π₋₁)`.
pub fn transition_sqrt_eps<S: Scalar>(cs: &CoefficientSet<S>) -> Result<Vec<Vec<S>>> {
    let e = euler_of(cs)?;
    nonzero(cs.b3, "b3")?;
    nonzero(e.c3, "c3")?;
    let (z, o) = (S::zero(), S::one());
    Ok(vec![
        vec![cs.b / cs.b3, -cs.b1 / cs.b3, -cs.b0 / cs.b3],
        vec![-e.c1 / e.c3, e.c / e.c3, -e.c0 / e.c3],
        vec![o, z, z],
    ])
}

/// Transition matrix of `E_t X_{t+1} = B X_t`, `X = (π, y, Δ, π₋₁)`.
pub fn transition_full<S: Scalar>(cs: &CoefficientSet<S>) -> Result<Vec<Vec<S>>> {
    let e = euler_of(cs)?;
    let d = cs.dispersion.ok_or_else(|| {
        ModelError::DegenerateSystem("coefficient set has no dispersion family".into())
    })?;
    nonzero(cs.b3, "b3")?;
    nonzero(e.c3, "c3")?;
    nonzero(d.d3, "d3")?;
    let (z, o) = (S::zero(), S::one());
    Ok(vec![
        vec![cs.b / cs.b3, -cs.b1 / cs.b3, -cs.b2 / cs.b3, -cs.b0 / cs.b3],
        vec![-e.c1 / e.c3, e.c / e.c3, -e.c2 / e.c3, -e.c0 / e.c3],
        vec![-d.d1 / d.d3, -d.d2 / d.d3, d.d / d.d3, -d.d0 / d.d3],
        vec![o, z, z, z],
    ])
}

/// Forward map of the standard `(π, y)` system with slope κ and the Taylor rule.
pub fn transition_singular<S: Scalar>(p: &ModelParams<S>) -> Result<Vec<Vec<S>>> {
    let (kappa, _) = singular_slopes(p);
    let (be, sg) = (p.beta, p.sigma);
    nonzero(be * sg, "beta*sigma")?;
    Ok(vec![
        vec![S::one() / be, -kappa / be],
        vec![
            (be * p.a_pi - S::one()) / (be * sg),
            (kappa + be * (sg + p.a_y)) / (be * sg),
        ],
    ])
}

/// Cubic of the small-noise system, written out term by term.
pub fn char_poly_sqrt_eps<S: Scalar>(cs: &CoefficientSet<S>) -> Result<CharPoly<S>> {
    let e = euler_of(cs)?;
    nonzero(cs.b3, "b3")?;
    nonzero(e.c3, "c3")?;
    let bb = cs.b3 * e.c3;
    Ok(CharPoly {
        coefficients: vec![
            S::one(),
            -(cs.b / cs.b3 + e.c / e.c3),
            cs.b0 / cs.b3 + cs.b * e.c / bb - cs.b1 * e.c1 / bb,
            -(cs.b1 * e.c0 + cs.b0 * e.c) / bb,
        ],
    })
}

/// Quartic of the system with dispersion, `det(λI − B)`.
pub fn char_poly_full<S: Scalar>(cs: &CoefficientSet<S>) -> Result<CharPoly<S>> {
    Ok(char_poly_of_matrix(&transition_full(cs)?))
}

/// Roots of a monic polynomial of degree ≤ 4, sorted by modulus.
///
/// Eigenvalues of the companion matrix are refined by one Newton step; the refinement is kept
/// only when it reduces the residual.
pub fn find_roots<S: Scalar>(poly: &CharPoly<S>) -> Result<Vec<Complex64>> {
    let p = poly.to_f64();
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    if p.coefficients.iter().any(|c| !c.is_finite()) {
        return Err(ModelError::DegenerateSystem(
            "non-finite polynomial coefficient".into(),
        ));
    }
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        companion[(0, j)] = -p.coefficients[j + 1] / p.coefficients[0];
    }
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    let eig = companion.complex_eigenvalues();
    let scale = p
        .coefficients
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs()))
        .max(1.0);
    let mut roots = Vec::with_capacity(n);
    for z in eig.iter() {
        let mut z = Complex64::new(z.re, z.im);
        let r0 = p.eval(z).norm();
        let d = p.eval_derivative(z);
        if d.norm() > 0.0 {
            let cand = z - p.eval(z) / d;
            if p.eval(cand).norm() < r0 {
                z = cand;
            }
        }
        if p.eval(z).norm() >= 1e-9 * scale {
            return Err(ModelError::NonConvergence {
                iterations: 1,
                detail: format!("root {z} leaves residual {}", p.eval(z).norm()),
            });
        }
        roots.push(z);
    }
    roots.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal))
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(roots)
}

/// Existence verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ExistsUnique,
    NonexistenceExplosive,
    NonexistenceIndeterminate,
    Boundary,
}

impl Classification {
    pub fn exists(self) -> bool {
        self == Classification::ExistsUnique
    }
}

/// Roots with inside/on/outside counts and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminacyReport {
    pub roots: Vec<Complex64>,
    pub n_inside: usize,
    pub n_on: usize,
    pub n_outside: usize,
    pub n_jumps: usize,
    pub n_states: usize,
    pub classification: Classification,
}

/// Counts roots against the unit circle (band `UNIT_CIRCLE_TOL`) and classifies.
pub fn classify(roots: &[Complex64], n_jumps: usize, n_states: usize) -> DeterminacyReport {
    let mut n_inside = 0;
    let mut n_on = 0;
    let mut n_outside = 0;
    for z in roots {
        let m = z.norm();
        if (m - 1.0).abs() <= UNIT_CIRCLE_TOL {
            n_on += 1;
        } else if m < 1.0 {
            n_inside += 1;
        } else {
            n_outside += 1;
        }
    }
    let classification = if n_on > 0 {
        Classification::Boundary
    } else if n_outside == n_jumps && n_inside == n_states {
        Classification::ExistsUnique
    } else if n_outside > n_jumps {
        Classification::NonexistenceExplosive
    } else {
        Classification::NonexistenceIndeterminate
    };
    DeterminacyReport {
        roots: roots.to_vec(),
        n_inside,
        n_on,
        n_outside,
        n_jumps,
        n_states,
        classification,
    }
}

/// Coefficients used for existence analysis: the limit family in the limit regime,
/// otherwise the general family at degenerate moments (β < 1).
pub fn coefficients_for<S: Scalar>(p: &ModelParams<S>) -> Result<CoefficientSet<S>> {
    if p.is_limit_regime() && p.pi_bar == S::zero() {
        limit_coeffs(p)
    } else {
        general_coeffs(p, &MomentSet::degenerate(p)?)
    }
}

/// Polynomial, roots and verdict for a coefficient set and variant.
pub fn analyze<S: Scalar>(cs: &CoefficientSet<S>, variant: Variant) -> Result<DeterminacyReport> {
    let poly = match variant {
        Variant::SqrtEps => char_poly_sqrt_eps(cs)?,
        Variant::Full => char_poly_full(cs)?,
        Variant::Singular => {
            return Err(ModelError::DegenerateSystem(
                "the singular system is built from parameters; use analyze_params".into(),
            ))
        }
    };
    let (j, s) = variant.jumps_and_states();
    Ok(classify(&find_roots(&poly)?, j, s))
}

/// Verdict for a parameter block and variant.
pub fn analyze_params<S: Scalar>(
    p: &ModelParams<S>,
    variant: Variant,
) -> Result<DeterminacyReport> {
    match variant {
        Variant::Singular => {
            let poly = char_poly_of_matrix(&transition_singular(p)?);
            Ok(classify(&find_roots(&poly)?, 2, 0))
        }
        v => analyze(&coefficients_for(p)?, v),
    }
}

/// Bisection on `a_π` for the switch between existence and nonexistence (tolerance 1e−10).
///
/// The bisection predicate counts roots strictly outside the unit circle without the
/// classification band, so the located switch is not shifted by the band's width.
pub fn existence_boundary<S: Scalar>(p: &ModelParams<S>, lo: S, hi: S) -> Result<S> {
    let exists = |a: S| -> Result<bool> {
        let roots = find_roots(&char_poly_sqrt_eps(&coefficients_for(&p.with_a_pi(a))?)?)?;
        let (n_jumps, _) = Variant::SqrtEps.jumps_and_states();
        Ok(roots.iter().filter(|z| z.norm() > 1.0).count() == n_jumps)
    };
    let (mut lo, mut hi) = (lo, hi);
    let e_lo = exists(lo)?;
    if e_lo == exists(hi)? {
        return Err(ModelError::NoFlip {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let tol = S::lit(1e-10);
    let two = S::lit(2.0);
    while hi - lo > tol {
        let mid = (lo + hi) / two;
        if exists(mid)? == e_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Closed-form quadratic factor `λ² − (2+a_y+G')λ + 1+a_y+a_πG'` left after removing `λ = 1/α`.
pub fn limit_quadratic<S: Scalar>(p: &ModelParams<S>) -> CharPoly<S> {
    let one = S::one();
    let gp = (one - p.alpha).powi(2) * (one + p.eta) / p.alpha;
    CharPoly {
        coefficients: vec![one, -(S::lit(2.0) + p.a_y + gp), one + p.a_y + p.a_pi * gp],
    }
}

/// Inflation response above which the quadratic factor has complex roots.
pub fn complex_root_threshold<S: Scalar>(p: &ModelParams<S>) -> S {
    let one = S::one();
    let om2 = (one - p.alpha).powi(2);
    let gp = om2 * (one + p.eta) / p.alpha;
    one + (p.a_y + gp).powi(2) * p.alpha / (S::lit(4.0) * om2 * (one + p.eta))
}

/// Prop 8 inequality `a_π + (1−β)a_y/κ > 1` for the singular system.
pub fn singular_determinacy<S: Scalar>(p: &ModelParams<S>) -> bool {
    let (kappa, _) = singular_slopes(p);
    p.a_pi + (S::one() - p.beta) * p.a_y / kappa > S::one()
}

/// Inverse-eigenvalue polynomial coefficients `(q0, q1)` of the singular system.
pub fn singular_q<S: Scalar>(p: &ModelParams<S>) -> (S, S) {
    let (kappa, _) = singular_slopes(p);
    let (be, sg) = (p.beta, p.sigma);
    let den = sg + p.a_y + kappa * p.a_pi;
    (
        -(kappa + (S::one() + be) * sg + be * p.a_y) / den,
        be * sg / den,
    )
}

/// Explicit stability conditions `|q0| < 1 + q1` and `|q1| < 1`.
pub fn singular_q_conditions<S: Scalar>(p: &ModelParams<S>) -> bool {
    let (q0, q1) = singular_q(p);
    q0.abs() < S::one() + q1 && q1.abs() < S::one()
}

/// Rotemberg existence condition `a_π > 1`.
pub fn rotemberg_exists<S: Scalar>(p: &ModelParams<S>) -> bool {
    p.a_pi > S::one()
}

/// Rouché dominance test on coefficient `k` (highest degree first): true when
/// `|a_k|` exceeds the sum of the other magnitudes, which implies exactly
/// `degree − k` roots inside the unit circle.
pub fn rouche_diagnostics<S: Scalar>(poly: &CharPoly<S>, k: usize) -> bool {
    let Some(&ak) = poly.coefficients.get(k) else {
        return false;
    };
    let rest: S = poly
        .coefficients
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, c)| c.abs())
        .sum();
    ak.abs() > rest
}

/// Unconventional-policy scenarios: persistence-eliminating policy and the persistence-only policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct G3Report {
    /// Inflation response that removes lagged inflation from the Phillips curve.
    pub a_star_pi: f64,
    /// Characteristic quadratic under that policy.
    pub no_persistence_poly: Vec<f64>,
    pub no_persistence: DeterminacyReport,
    /// Roots `(αβ, β)` of the persistence-only polynomial `λ² − β(1+α)λ + αβ²`.
    pub persistence_roots: (f64, f64),
    pub persistence_only: DeterminacyReport,
    /// The displayed polynomial's constant (`−α`) disagrees with its stated roots.
    pub displayed_constant_inconsistent: bool,
}

pub fn g3_scenarios<S: Scalar>(p: &ModelParams<S>) -> Result<G3Report> {
    if !p.is_limit_regime() {
        return Err(ModelError::RequiresLimitRegime("g3_scenarios".into()));
    }
    let one = S::one();
    let (a, eta, ay, be) = (p.alpha, p.eta, p.a_y, p.beta);
    let om2 = (one - a).powi(2);
    let a_star = a * (one + ay) / (om2 * (one + eta));
    let poly = CharPoly {
        coefficients: vec![
            one,
            -((one + a) / a + om2 * (one + eta) / (a * a * (one + ay)) + one + ay),
            (S::lit(2.0) + ay) / a + om2 * (one + eta) / (a * a),
        ],
    };
    let no_persistence = classify(&find_roots(&poly)?, 2, 0);
    let pers = CharPoly {
        coefficients: vec![one, -be * (one + a), a * be * be],
    };
    let persistence_only = classify(&find_roots(&pers)?, 2, 0);
    Ok(G3Report {
        a_star_pi: a_star.as_f64(),
        no_persistence_poly: poly.coefficients.iter().map(|c| c.as_f64()).collect(),
        no_persistence,
        persistence_roots: ((a * be).as_f64(), be.as_f64()),
        persistence_only,
        displayed_constant_inconsistent: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench() -> ModelParams<f64> {
        ModelParams::benchmark()
    }

    #[test]
    fn cubic_has_inverse_alpha_root() {
        let cs = limit_coeffs(&bench()).unwrap();
        let poly = char_poly_sqrt_eps(&cs).unwrap();
        let want = [1.0, -4.833_333_333_333_333, 6.916_666_666_666_667, -2.875];
        for (c, w) in poly.coefficients.iter().zip(want) {
            assert!((c - w).abs() < 1e-12, "{c} vs {w}");
        }
        let roots = find_roots(&poly).unwrap();
        assert!(roots.iter().any(|z| (z - 1.5).norm() < 1e-10));
        let quad = limit_quadratic(&bench());
        let expanded = CharPoly::from_real_roots(&[1.5]).mul(&quad);
        for (c, w) in expanded.coefficients.iter().zip(&poly.coefficients) {
            assert!((c - w).abs() < 1e-12);
        }
        let qr = find_roots(&quad).unwrap();
        assert!((qr[0].re - 0.7387).abs() < 1e-4);
        assert!((qr[1].re - 2.5946).abs() < 1e-4);
    }

    #[test]
    fn explicit_cubic_matches_determinant() {
        let cs = limit_coeffs(&bench()).unwrap();
        let explicit = char_poly_sqrt_eps(&cs).unwrap();
        let det = char_poly_of_matrix(&transition_sqrt_eps(&cs).unwrap());
        for (a, b) in explicit.coefficients.iter().zip(&det.coefficients) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn quartic_adds_alpha() {
        let cs = limit_coeffs(&bench()).unwrap();
        let roots = find_roots(&char_poly_full(&cs).unwrap()).unwrap();
        assert!(roots.iter().any(|z| (z - 2.0 / 3.0).norm() < 1e-10));
        assert!(roots.iter().any(|z| (z - 1.5).norm() < 1e-10));
        let mut zero_d = cs;
        zero_d.dispersion.as_mut().unwrap().d3 = 0.0;
        assert!(matches!(
            char_poly_full(&zero_d),
            Err(ModelError::DegenerateSystem(_))
        ));
    }

    #[test]
    fn root_finder_examples() {
        let r = find_roots(&CharPoly {
            coefficients: vec![1.0, 0.0, -1.0],
        })
        .unwrap();
        assert!((r[0].norm() - 1.0).abs() < 1e-12 && (r[1].norm() - 1.0).abs() < 1e-12);
        assert!(r.iter().any(|z| (z + 1.0).norm() < 1e-12));
        let p = CharPoly::from_real_roots(&[1.5, 0.5, 2.0]);
        let r = find_roots(&p).unwrap();
        for (z, w) in r.iter().zip([0.5, 1.5, 2.0]) {
            assert!((z - w).norm() < 1e-10);
        }
    }

    #[test]
    fn classification_examples() {
        let v = |a: f64| {
            analyze_params(&bench().with_a_pi(a), Variant::SqrtEps)
                .unwrap()
                .classification
        };
        assert_eq!(v(0.5), Classification::ExistsUnique);
        assert_eq!(v(1.5), Classification::NonexistenceExplosive);
        assert_eq!(v(1.0), Classification::Boundary);
    }

    #[test]
    fn boundary_is_one() {
        let b = existence_boundary(&bench(), 0.0, 3.0).unwrap();
        assert!((b - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rouche_examples() {
        let p = CharPoly {
            coefficients: vec![1.0, -10.0, 1.0],
        };
        assert!(rouche_diagnostics(&p, 1));
        let p = CharPoly {
            coefficients: vec![1.0, 0.1, 0.01],
        };
        assert!(rouche_diagnostics(&p, 0));
        assert!(!rouche_diagnostics(&p, 2));
        let cubic = char_poly_sqrt_eps(&limit_coeffs(&bench()).unwrap()).unwrap();
        assert!((0..=3).all(|k| !rouche_diagnostics(&cubic, k)));
    }

    #[test]
    fn singular_conditions() {
        assert!(singular_determinacy(&bench().with_a_pi(1.5)));
        let mut p = bench();
        p.a_y = 0.0;
        assert!(!singular_determinacy(&p));
        let q = bench().with_beta(0.99).with_a_pi(0.9);
        assert_eq!(singular_determinacy(&q), singular_q_conditions(&q));
    }

    #[test]
    fn rotemberg_direction() {
        assert!(rotemberg_exists(&bench().with_a_pi(1.5)));
        assert!(!rotemberg_exists(&bench().with_a_pi(0.5)));
        assert!(!rotemberg_exists(&bench().with_a_pi(1.0)));
    }

    #[test]
    fn g3_examples() {
        let r = g3_scenarios(&bench()).unwrap();
        assert!((r.a_star_pi - 1.8).abs() < 1e-12);
        assert_eq!(
            r.no_persistence.classification,
            Classification::ExistsUnique
        );
        assert_eq!(r.persistence_only.classification, Classification::Boundary);
        assert!((r.persistence_roots.0 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn complex_threshold_matches_discriminant() {
        let p = bench();
        let t = complex_root_threshold(&p);
        let disc = |a: f64| {
            let q = limit_quadratic(&p.with_a_pi(a)).coefficients;
            q[1] * q[1] - 4.0 * q[2]
        };
        assert!(disc(t - 1e-8) > 0.0 && disc(t + 1e-8) < 0.0);
    }
}
