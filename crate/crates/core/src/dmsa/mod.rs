//! The double-commutator operator `Delta_X(a) = sum_j [[a, X_j], X_j]` and
//! representation-level algebra built on it.

mod membrane;
mod sphere;
mod symmetrize;

pub use membrane::{membrane_check, MembraneCheck, MembraneParams};
pub use sphere::{check_sphere_constraint, classify_d2, D2Class, SphereConstraint};
pub use symmetrize::{symmetrize, Symmetrized};

use crate::matkernel::{c, hermitian_defect, kron, CMatrix, KernelError, RMatrix, C64};
use crate::par::{self, Exec};

/// Hermiticity tolerance applied by [`Rep::new`], relative to `max(|X|, 1)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DmsaError {
    #[error("representation needs at least 2 generators, got {d}")]
    DimensionTooSmall { d: usize },
    #[error("generator {index} has size {got}, expected {expected}")]
    SizeMismatch { index: usize, expected: usize, got: usize },
    #[error("generator counts differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation needs d = {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("generator {index} is not Hermitian (defect {defect:e})")]
    NotHermitian { index: usize, defect: f64 },
    #[error("matrix is not orthogonal (|R^T R - I| = {defect:e})")]
    NotOrthogonal { defect: f64 },
    #[error("span of the generators is not closed under Delta (fit residual {residual:e})")]
    SpanNotClosed { residual: f64 },
    #[error("restricted Delta is not symmetric (asymmetry {asymmetry:e})")]
    NotRealDiagonalizable { asymmetry: f64 },
    #[error("invalid membrane generator: {reason}")]
    InvalidA { reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Generators `X_1..X_d` of common size `n`. Hermitian unless built with
/// [`Rep::non_hermitian`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rep {
    mats: Vec<CMatrix>,
    hermitian: bool,
}

impl Rep {
    pub fn new(mats: Vec<CMatrix>) -> Result<Rep, DmsaError> {
        Rep::with_tolerance(mats, HERMITIAN_TOL)
    }

    /// Hermitian representation; each generator's defect must be at most
    /// `tol * max(|X|, 1)`.
    pub fn with_tolerance(mats: Vec<CMatrix>, tol: f64) -> Result<Rep, DmsaError> {
        check_shapes(&mats)?;
        for (index, m) in mats.iter().enumerate() {
            let defect = hermitian_defect(m);
            if defect > tol * m.norm().max(1.0) {
                return Err(DmsaError::NotHermitian { index, defect });
            }
        }
        Ok(Rep { mats, hermitian: true })
    }

    /// Generators without a Hermiticity requirement (e.g. Clifford
    /// generators squaring to `-1`).
    pub fn non_hermitian(mats: Vec<CMatrix>) -> Result<Rep, DmsaError> {
        check_shapes(&mats)?;
        Ok(Rep { mats, hermitian: false })
    }

    pub fn zero(d: usize, n: usize) -> Rep {
        Rep { mats: vec![CMatrix::zeros(n, n); d], hermitian: true }
    }

    /// Hermitian coordinates of a pair: `Lambda = X1 + i X2`, `T = X3 + i X4`.
    pub fn from_pair(lambda: &CMatrix, t: &CMatrix) -> Result<Rep, DmsaError> {
        let re = |m: &CMatrix| (m + m.adjoint()) * c(0.5, 0.0);
        let im = |m: &CMatrix| (m - m.adjoint()) * c(0.0, -0.5);
        Rep::new(vec![re(lambda), im(lambda), re(t), im(t)])
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn size(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn into_matrices(self) -> Vec<CMatrix> {
        self.mats
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `X1 + i X2` for `d = 4`.
    pub fn lambda(&self) -> Option<CMatrix> {
        (self.d() == 4).then(|| &self.mats[0] + &self.mats[1] * c(0.0, 1.0))
    }

    /// `X3 + i X4` for `d = 4`.
    pub fn t(&self) -> Option<CMatrix> {
        (self.d() == 4).then(|| &self.mats[2] + &self.mats[3] * c(0.0, 1.0))
    }

    pub fn pair(&self) -> Result<(CMatrix, CMatrix), DmsaError> {
        match (self.lambda(), self.t()) {
            (Some(l), Some(t)) => Ok((l, t)),
            _ => Err(DmsaError::WrongDimension { expected: 4, got: self.d() }),
        }
    }

    /// Restriction `Q^H X Q` to the subspace with orthonormal columns `q`.
    pub fn restrict(&self, q: &CMatrix) -> Rep {
        Rep { mats: crate::matkernel::restrict(&self.mats, q), hermitian: self.hermitian }
    }

    /// Unitary change of basis `U^H X U`.
    pub fn conjugate(&self, u: &CMatrix) -> Rep {
        self.restrict(u)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[&Rep]) -> Result<Rep, DmsaError> {
        let d = parts.first().map_or(0, |r| r.d());
        if let Some(bad) = parts.iter().find(|r| r.d() != d) {
            return Err(DmsaError::DimensionMismatch(d, bad.d()));
        }
        let mats = (0..d)
            .map(|i| crate::matkernel::direct_sum(&parts.iter().map(|r| &r.mats[i]).collect::<Vec<_>>()))
            .collect();
        Ok(Rep { mats, hermitian: parts.iter().all(|r| r.hermitian) })
    }
}

fn check_shapes(mats: &[CMatrix]) -> Result<(), DmsaError> {
    if mats.len() < 2 {
        return Err(DmsaError::DimensionTooSmall { d: mats.len() });
    }
    let n = mats[0].nrows();
    for (index, m) in mats.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(DmsaError::SizeMismatch { index, expected: n, got: m.nrows().max(m.ncols()) });
        }
    }
    Ok(())
}

/// `sum_j [[a, X_j], X_j]`.
pub fn delta(rep: &Rep, a: &CMatrix) -> Result<CMatrix, DmsaError> {
    let n = rep.size();
    if a.nrows() != n || a.ncols() != n {
        return Err(DmsaError::SizeMismatch { index: 0, expected: n, got: a.nrows().max(a.ncols()) });
    }
    Ok(delta_unchecked(rep.matrices(), a))
}

pub(crate) fn delta_unchecked(mats: &[CMatrix], a: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), a.ncols());
    for x in mats {
        let xx = x * x;
        out += a * &xx + &xx * a - (x * a * x) * c(2.0, 0.0);
    }
    out
}

/// Spectrum estimates and eigenrelation residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub mu: Vec<f64>,
    pub residuals: Vec<f64>,
    pub tol: f64,
    /// Every residual is at most `tol * max(|X_i|, 1)`.
    pub verdict: bool,
    pub notes: Vec<String>,
}

/// `mu_i = Re<X_i, Delta X_i> / <X_i, X_i>` (Frobenius), residual
/// `|Delta X_i - mu_i X_i|`. A zero generator gets `mu_i = 0`.
pub fn verify(rep: &Rep, tol: f64) -> VerificationReport {
    let mut mu = Vec::with_capacity(rep.d());
    let mut residuals = Vec::with_capacity(rep.d());
    let mut notes = Vec::new();
    let mut verdict = true;
    for (i, x) in rep.matrices().iter().enumerate() {
        let dx = delta_unchecked(rep.matrices(), x);
        let norm2 = x.norm_squared();
        let m = if norm2 == 0.0 {
            notes.push(format!("x{} is zero; its eigenvalue is undetermined and reported as 0", i + 1));
            0.0
        } else {
            crate::matkernel::frobenius_inner(x, &dx).re / norm2
        };
        let r = (dx - x * c(m, 0.0)).norm();
        verdict &= r <= tol * x.norm().max(1.0);
        mu.push(m);
        residuals.push(r);
    }
    VerificationReport { mu, residuals, tol, verdict, notes }
}

/// Verification of many representations; results keep input order.
pub fn verify_batch(exec: Exec, reps: &[Rep], tol: f64) -> Vec<VerificationReport> {
    par::map(exec, reps, |r| verify(r, tol))
}

/// `X_i'' = X_i (x) I + I (x) X_i'`.
pub fn tensor(r: &Rep, s: &Rep) -> Result<Rep, DmsaError> {
    if r.d() != s.d() {
        return Err(DmsaError::DimensionMismatch(r.d(), s.d()));
    }
    let (ir, is) = (CMatrix::identity(r.size(), r.size()), CMatrix::identity(s.size(), s.size()));
    let mats = r.mats.iter().zip(&s.mats).map(|(a, b)| kron(a, &is) + kron(&ir, b)).collect();
    Ok(Rep { mats, hermitian: r.hermitian && s.hermitian })
}

/// `Lambda -> e^{i theta} Lambda`, `T -> e^{i theta'} T` (a rotation inside
/// each coordinate pair).
pub fn phase_act(r: &Rep, theta: f64, thetap: f64) -> Result<Rep, DmsaError> {
    if r.d() != 4 {
        return Err(DmsaError::WrongDimension { expected: 4, got: r.d() });
    }
    let mut rot = RMatrix::zeros(4, 4);
    for (k, ang) in [theta, thetap].into_iter().enumerate() {
        let (s, co) = ang.sin_cos();
        rot[(2 * k, 2 * k)] = co;
        rot[(2 * k, 2 * k + 1)] = -s;
        rot[(2 * k + 1, 2 * k)] = s;
        rot[(2 * k + 1, 2 * k + 1)] = co;
    }
    orthogonal_transform(r, &rot)
}

/// `X_i' = sum_j R_ij X_j` for real orthogonal `R`.
pub fn orthogonal_transform(r: &Rep, rot: &RMatrix) -> Result<Rep, DmsaError> {
    let d = r.d();
    if rot.nrows() != d || rot.ncols() != d {
        return Err(DmsaError::DimensionMismatch(d, rot.nrows()));
    }
    let defect = (rot.transpose() * rot - RMatrix::identity(d, d)).norm();
    if defect > 1e-10 {
        return Err(DmsaError::NotOrthogonal { defect });
    }
    Ok(Rep { mats: combine(&r.mats, rot), hermitian: r.hermitian })
}

/// `Y_i = sum_j M_ij X_j` without checks.
pub(crate) fn combine(mats: &[CMatrix], m: &RMatrix) -> Vec<CMatrix> {
    let n = mats[0].nrows();
    (0..m.nrows())
        .map(|i| {
            let mut acc = CMatrix::zeros(n, n);
            for (j, x) in mats.iter().enumerate() {
                let w = m[(i, j)];
                if w != 0.0 {
                    acc += x * C64::new(w, 0.0);
                }
            }
            acc
        })
        .collect()
}
