//! Pointwise residuals of the time-dependent ansatz
//! `X_i(t) = (a/hbar) sum_j (exp(A (a t + b)))_ij M_j` for the membrane
//! equations `X'' = -hbar^2 Delta_X(X)` and `sum_j [X_j', X_j] = 0`.

use crate::matkernel::{CMatrix, RMatrix};

use super::{combine, delta_unchecked, DmsaError, Rep};

/// Relative bound on the mismatch between `A^2` and `-Delta` on the span.
const A_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct MembraneParams {
    pub a: f64,
    pub b: f64,
    pub hbar: f64,
    /// Real antisymmetric `d x d` generator of the rotation.
    pub generator: RMatrix,
}

impl MembraneParams {
    /// Block-diagonal generator `sqrt(mu_k) J` on consecutive pairs, with
    /// `J = [[0, 1], [-1, 0]]`. Needs even `d`, `mu_{2k-1} = mu_{2k}` and
    /// non-negative values.
    pub fn paired(a: f64, b: f64, hbar: f64, mu: &[f64]) -> Result<Self, DmsaError> {
        let d = mu.len();
        if d % 2 != 0 {
            return Err(DmsaError::InvalidA { reason: format!("odd number of generators ({d})") });
        }
        let scale = mu.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let mut g = RMatrix::zeros(d, d);
        for k in 0..d / 2 {
            let (m1, m2) = (mu[2 * k], mu[2 * k + 1]);
            if (m1 - m2).abs() > A_TOL * scale {
                return Err(DmsaError::InvalidA { reason: format!("pair {} has unequal values {m1} and {m2}", k + 1) });
            }
            let m = 0.5 * (m1 + m2);
            if m < -A_TOL * scale {
                return Err(DmsaError::InvalidA { reason: format!("pair {} has negative value {m}", k + 1) });
            }
            let w = m.max(0.0).sqrt();
            g[(2 * k, 2 * k + 1)] = w;
            g[(2 * k + 1, 2 * k)] = -w;
        }
        Ok(MembraneParams { a, b, hbar, generator: g })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneCheck {
    /// `max_i |D2_h X_i(t) + hbar^2 Delta_{X(t)}(X_i(t))|`.
    pub eom_residual: f64,
    /// `|sum_j [D1_h X_j(t), X_j(t)]|`; reported, not required to vanish.
    pub constraint_residual: f64,
    /// `max_i |sum_k (A^2)_ik M_k + Delta(M_i)|`, i.e. `A^2 + diag(mu)` seen
    /// through the generators.
    pub generator_residual: f64,
}

/// Evaluates the ansatz at `t` with central differences of step `h`.
pub fn membrane_check(r: &Rep, params: &MembraneParams, t: f64, h: f64) -> Result<MembraneCheck, DmsaError> {
    let d = r.d();
    let g = &params.generator;
    if g.nrows() != d || g.ncols() != d {
        return Err(DmsaError::InvalidA { reason: format!("generator is {}x{}, expected {d}x{d}", g.nrows(), g.ncols()) });
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(DmsaError::InvalidParameter(format!("step must be positive, got {h}")));
    }
    if !(params.hbar > 0.0 && params.hbar.is_finite()) {
        return Err(DmsaError::InvalidParameter(format!("hbar must be positive, got {}", params.hbar)));
    }
    let skew = (g + g.transpose()).norm();
    if skew > A_TOL * g.norm().max(1.0) {
        return Err(DmsaError::InvalidA { reason: format!("not antisymmetric (|A + A^T| = {skew:e})") });
    }
    // Operator form of A^2 = -diag(mu): sum_k (A^2)_ik M_k = -Delta(M_i). A
    // zero generator constrains only the mixing, not its own eigenvalue.
    let mats = r.matrices();
    let g2 = g * g;
    let mixed = combine(mats, &g2);
    let mut generator_residual = 0.0f64;
    let mut scale = 1.0f64;
    for (m, mx) in mats.iter().zip(&mixed) {
        let dm = delta_unchecked(mats, m);
        scale = scale.max(dm.norm()).max(mx.norm());
        generator_residual = generator_residual.max((mx + dm).norm());
    }
    if generator_residual > A_TOL * scale {
        return Err(DmsaError::InvalidA { reason: format!("|A^2 M + Delta(M)| = {generator_residual:e}") });
    }

    let at = |time: f64| -> Vec<CMatrix> {
        let rot = (g * (params.a * time + params.b)).exp();
        let pre = params.a / params.hbar;
        combine(r.matrices(), &rot).into_iter().map(|x| x * crate::matkernel::c(pre, 0.0)).collect()
    };
    let (xm, x0, xp) = (at(t - h), at(t), at(t + h));
    let hbar2 = params.hbar * params.hbar;
    let mut eom_residual = 0.0f64;
    for i in 0..d {
        let second = (&xp[i] - &x0[i] * crate::matkernel::c(2.0, 0.0) + &xm[i]) / crate::matkernel::c(h * h, 0.0);
        let rhs = delta_unchecked(&x0, &x0[i]) * crate::matkernel::c(hbar2, 0.0);
        eom_residual = eom_residual.max((second + rhs).norm());
    }
    let n = r.size();
    let mut constraint = CMatrix::zeros(n, n);
    for j in 0..d {
        let first = (&xp[j] - &xm[j]) / crate::matkernel::c(2.0 * h, 0.0);
        constraint += &first * &x0[j] - &x0[j] * &first;
    }
    Ok(MembraneCheck { eom_residual, constraint_residual: constraint.norm(), generator_residual })
}
