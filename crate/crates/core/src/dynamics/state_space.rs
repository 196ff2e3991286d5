use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::determinacy::{
    classify, transition_full, transition_singular, transition_sqrt_eps, Variant, UNIT_CIRCLE_TOL,
};
use crate::error::{ModelError, Result};
use crate::model_core::ModelParams;
use crate::phillips::CoefficientSet;

/// `E_t X_{t+1} = B X_t + Φ e_t` with `e_t = (ψ̂_t, â_t)`.
///
/// Jumps come first in the variable order, predetermined states last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateSpace {
    pub variant: Variant,
    pub variables: Vec<String>,
    pub transition: DMatrix<f64>,
    pub shock_loading: DMatrix<f64>,
    pub n_jumps: usize,
    pub n_states: usize,
    /// Persistence of the productivity shock; the demand shock is i.i.d.
    pub rho_a: f64,
}

fn to_matrix(rows: Vec<Vec<f64>>) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

/// Builds the linear system for a variant.
///
/// `cs` is required for the `SqrtEps` and `Full` variants; the singular variant is
/// built from `p` alone. Shocks load on the output row as
/// `(1/σ)ψ̂_t − (1−ρ_a)(σ+η)/σ·â_t`: the demand shock and the movement of the
/// natural rate driven by productivity.
///
/// When the coefficient set carries the error term `b̃4(ψ̂_t − ψ̂_{t−1})` (limit
/// regime), the Phillips row loads on `ψ̂_t` and a predetermined `psi_lag` state is
/// appended; its transition row is zero, so it adds an eigenvalue at 0.
pub fn build_state_space(
    p: &ModelParams<f64>,
    cs: Option<&CoefficientSet<f64>>,
    variant: Variant,
) -> Result<StateSpace> {
    let need = || {
        cs.ok_or_else(|| {
            ModelError::DegenerateSystem(format!("{variant:?} system needs a coefficient set"))
        })
    };
    let (rows, variables): (Vec<Vec<f64>>, Vec<&str>) = match variant {
        Variant::SqrtEps => (transition_sqrt_eps(need()?)?, vec!["pi", "y", "pi_lag"]),
        Variant::Full => (
            transition_full(need()?)?,
            vec!["pi", "y", "delta", "pi_lag"],
        ),
        Variant::Singular => (transition_singular(p)?, vec!["pi", "y"]),
    };
    let mut variables: Vec<String> = variables.into_iter().map(String::from).collect();
    let mut transition = to_matrix(rows);
    if transition.iter().any(|v| !v.is_finite()) {
        return Err(ModelError::DegenerateSystem(
            "non-finite transition entry".into(),
        ));
    }
    let (n_jumps, mut n_states) = variant.jumps_and_states();
    let error_term = match (variant, cs) {
        (Variant::Singular, _) | (_, None) => None,
        (_, Some(c)) => c.b4.filter(|b4| *b4 != 0.0).map(|b4| b4 / c.b3),
    };
    if error_term.is_some() {
        let n = transition.nrows();
        transition = transition.insert_row(n, 0.0).insert_column(n, 0.0);
        variables.push("psi_lag".into());
        n_states += 1;
    }
    let n = transition.nrows();
    let mut shock_loading = DMatrix::zeros(n, 2);
    shock_loading[(1, 0)] = 1.0 / p.sigma;
    shock_loading[(1, 1)] = -(1.0 - p.rho_a) * (p.sigma + p.eta) / p.sigma;
    if let Some(e) = error_term {
        // b3·E π' = … − b̃4(ψ̂_t − ψ̂_{t−1}); psi_lag' = ψ̂_t.
        shock_loading[(0, 0)] = -e;
        transition[(0, n - 1)] = e;
        shock_loading[(n - 1, 0)] = 1.0;
    }
    Ok(StateSpace {
        variant,
        variables,
        transition,
        shock_loading,
        n_jumps,
        n_states,
        rho_a: p.rho_a,
    })
}

/// Decision rules `j_t = G s_t + H e_t` and state law `s_{t+1} = M s_t + N e_t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvedSystem {
    pub variant: Variant,
    pub variables: Vec<String>,
    pub n_jumps: usize,
    pub n_states: usize,
    pub g: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub n: DMatrix<f64>,
    pub rho_a: f64,
    pub eigenvalues: Vec<Complex64>,
    /// Whether the fallback (stable-subspace) partition was needed.
    pub used_alternate: bool,
}

impl SolvedSystem {
    /// Spectral radius of the state law.
    pub fn state_spectral_radius(&self) -> f64 {
        if self.n_states == 0 {
            return 0.0;
        }
        self.m
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

type CMat = DMatrix<Complex64>;

/// Orthonormal basis (as rows) of the row space of `a`, of the given rank.
fn row_basis(a: &CMat, rank: usize) -> CMat {
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });
    CMat::from_fn(rank, a.ncols(), |r, c| vt[(order[r], c)])
}

/// Orthonormal basis (as columns) of the column space of `a`, of the given rank.
fn col_basis(a: &CMat, rank: usize) -> CMat {
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });
    CMat::from_fn(a.nrows(), rank, |r, c| u[(r, order[c])])
}

fn product_of_shifts(b: &CMat, roots: &[Complex64]) -> CMat {
    let n = b.nrows();
    let mut acc = CMat::identity(n, n);
    for &l in roots {
        acc = &acc * (b - CMat::identity(n, n) * l);
    }
    acc
}

fn real_part(m: &CMat, what: &str) -> Result<DMatrix<f64>> {
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if m.iter().any(|z| z.im.abs() > 1e-8 * scale) {
        return Err(ModelError::DegenerateSystem(format!(
            "{what} has a non-negligible imaginary part"
        )));
    }
    Ok(m.map(|z| z.re))
}

/// Blanchard–Kahn solution.
///
/// The unstable left-invariant subspace is the row space of `∏_{|λ|<1}(B − λI)`; its
/// coordinates `z = W_U X` are solved forward, giving `z_t = D e_t` with
/// `(Λ_U − r_j I) d_j = −W_U φ_j` for each shock with persistence `r_j`. The jumps
/// follow from `W_Uj j + W_Us s = D e`. If `W_Uj` is singular the stable right
/// subspace (column space of `∏_{|λ|>1}(B − λI)`) is used instead.
pub fn solve_re(ss: &StateSpace) -> Result<SolvedSystem> {
    let n = ss.transition.nrows();
    let (nj, ns) = (ss.n_jumps, ss.n_states);
    if nj + ns != n {
        return Err(ModelError::DegenerateSystem(
            "jump and state counts do not match the system size".into(),
        ));
    }
    let eig: Vec<Complex64> = ss
        .transition
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();
    if let Some(z) = eig
        .iter()
        .find(|z| (z.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL)
    {
        return Err(ModelError::NonHyperbolic { modulus: z.norm() });
    }
    let report = classify(&eig, nj, ns);
    if report.n_outside != nj {
        return Err(ModelError::WrongCount {
            n_outside: report.n_outside,
            n_jumps: nj,
        });
    }
    let stable: Vec<Complex64> = eig.iter().copied().filter(|z| z.norm() < 1.0).collect();
    let unstable: Vec<Complex64> = eig.iter().copied().filter(|z| z.norm() > 1.0).collect();

    let b = ss.transition.map(|v| Complex64::new(v, 0.0));
    let phi = ss.shock_loading.map(|v| Complex64::new(v, 0.0));
    let w_u = row_basis(&product_of_shifts(&b, &stable), nj);
    // Λ_U = W_U B W_Uᴴ (rows of W_U are orthonormal and span a left-invariant subspace).
    let lam_u = &w_u * &b * w_u.adjoint();
    let rhs = -(&w_u * &phi);
    let persist = [0.0, ss.rho_a];
    let mut d = CMat::zeros(nj, 2);
    for (j, &r) in persist.iter().enumerate() {
        let lhs = &lam_u - CMat::identity(nj, nj) * Complex64::new(r, 0.0);
        let col = lhs.lu().solve(&rhs.column(j).into_owned()).ok_or_else(|| {
            ModelError::DegenerateSystem("shock persistence equals an unstable root".into())
        })?;
        d.set_column(j, &col);
    }

    let w_uj = w_u.columns(0, nj).into_owned();
    let w_us = w_u.columns(nj, ns).into_owned();
    let cond = {
        let sv = w_uj.clone().singular_values();
        let max = sv.iter().fold(0.0f64, |m, v| m.max(*v));
        let min = sv.iter().fold(f64::INFINITY, |m, v| m.min(*v));
        if max > 0.0 {
            min / max
        } else {
            0.0
        }
    };
    let (g_c, h_c, used_alternate) = if cond > 1e-10 {
        let inv = w_uj
            .try_inverse()
            .ok_or_else(|| ModelError::DegenerateSystem("jump block singular".into()))?;
        (-(&inv * &w_us), &inv * &d, false)
    } else {
        let v_s = col_basis(&product_of_shifts(&b, &unstable), ns);
        let v_js = v_s.rows(0, nj).into_owned();
        let v_ss = v_s.rows(nj, ns).into_owned();
        let v_ss_inv = v_ss.try_inverse().ok_or_else(|| {
            ModelError::DegenerateSystem("both partition blocks are singular".into())
        })?;
        // Particular solution X_p = W_Uᴴ D e (minimum norm, W_U has orthonormal rows).
        let xp = w_u.adjoint() * &d;
        let (jp, sp) = (xp.rows(0, nj).into_owned(), xp.rows(nj, ns).into_owned());
        let g = &v_js * &v_ss_inv;
        let h = &jp - &g * &sp;
        (g, h, true)
    };
    let g = real_part(&g_c, "jump rule G")?;
    let h = real_part(&h_c, "jump rule H")?;

    let bt = &ss.transition;
    let b_sj = bt.view((nj, 0), (ns, nj)).into_owned();
    let b_ss = bt.view((nj, nj), (ns, ns)).into_owned();
    let phi_s = ss.shock_loading.rows(nj, ns).into_owned();
    let m = &b_sj * &g + b_ss;
    let nmat = &b_sj * &h + phi_s;
    let out = SolvedSystem {
        variant: ss.variant,
        variables: ss.variables.clone(),
        n_jumps: nj,
        n_states: ns,
        g,
        h,
        m,
        n: nmat,
        rho_a: ss.rho_a,
        eigenvalues: report.roots,
        used_alternate,
    };
    if out.state_spectral_radius() >= 1.0 {
        return Err(ModelError::DegenerateSystem(
            "state recursion is not stable".into(),
        ));
    }
    Ok(out)
}

impl SolvedSystem {
    /// Full variable vector at `t` from the states and shocks.
    pub fn observe(&self, s: &DVector<f64>, e: &DVector<f64>) -> DVector<f64> {
        let j = &self.g * s + &self.h * e;
        DVector::from_iterator(
            self.n_jumps + self.n_states,
            j.iter().chain(s.iter()).copied(),
        )
    }
}
