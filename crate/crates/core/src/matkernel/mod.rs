//! Dense complex linear algebra used by every other module.
//!
//! Matrices are plain `nalgebra` dynamic matrices over `Complex64`. The
//! module adds what nalgebra does not ship: eigenvectors of general complex
//! matrices, a numerical Jordan form, decomposition of a self-adjoint set of
//! matrices into irreducible invariant subspaces, and seeded random
//! orthogonal/unitary matrices.

mod commutant;
mod eig;
mod jordan;
mod random;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use commutant::{commutant_basis, commutant_basis_with, commutant_decompose, restrict};
pub use eig::{eig, eig_hermitian, sort_key, Eigen};
pub use jordan::{jordan_form, JordanBlock, JordanDecomposition, JORDAN_MAX_DIM};
pub use random::{random_hermitian, random_orthogonal, random_unitary, rng_from_seed};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type RMatrix = DMatrix<f64>;

/// Default relative singular-value threshold used for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix sizes do not match ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("Schur iteration did not converge")]
    NoConvergence,
    #[error("rank decision ambiguous: singular value {sigma:e} lies near threshold {threshold:e}; adjust rank_tol")]
    RankAmbiguous { sigma: f64, threshold: f64 },
    #[error("matrix dimension {n} exceeds the supported limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("Jordan basis residual {residual:e} exceeds bound {bound:e}")]
    JordanResidual { residual: f64, bound: f64 },
    #[error("invariant-subspace residual {residual:e} exceeds tolerance {bound:e}")]
    ToleranceFailure { residual: f64, bound: f64 },
    #[error("matrix contains non-finite entries")]
    NotFinite,
    #[error("empty generator list")]
    Empty,
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn ensure_square(m: &CMatrix) -> Result<usize, KernelError> {
    if m.nrows() != m.ncols() {
        return Err(KernelError::NonSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(m.nrows())
}

pub fn ensure_finite(m: &CMatrix) -> Result<(), KernelError> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(KernelError::NotFinite)
    }
}

/// `[a, b] = ab - ba`.
pub fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `[[a, b], b]`, the summand of the double-commutator operator.
pub fn double_comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    comm(&comm(a, b), b)
}

/// Frobenius inner product `tr(a^H b)`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && hermitian_defect(m) <= tol * m.norm().max(1.0)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn to_complex(r: &RMatrix) -> CMatrix {
    r.map(|x| c(x, 0.0))
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[&CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let m: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(n, m);
    let (mut r, mut col) = (0, 0);
    for b in blocks {
        out.view_mut((r, col), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        col += b.ncols();
    }
    out
}

/// Orthonormal basis of the column span, dropping directions whose singular
/// value falls below `rel_tol * sigma_max`.
pub(crate) fn orthonormal_span(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let n = m.nrows();
    if m.ncols() == 0 || m.norm() == 0.0 {
        return CMatrix::zeros(n, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > rel_tol * smax)
        .collect();
    let mut out = CMatrix::zeros(n, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

/// Orthonormal basis of the null space of `m` from the right singular
/// vectors whose singular value is at most `abs_tol`. Returns the basis and
/// the smallest singular value that was classified as non-zero (if any),
/// which callers use for ambiguity checks.
pub(crate) fn null_space(m: &CMatrix, abs_tol: f64) -> (CMatrix, Vec<f64>) {
    let n = m.ncols();
    // Pad short matrices so that nalgebra returns a full V.
    let work = if m.nrows() < n {
        let mut padded = CMatrix::zeros(n, n);
        padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigmas: Vec<f64> = svd.singular_values.iter().copied().collect();
    let idx: Vec<usize> = (0..sigmas.len()).filter(|&i| sigmas[i] <= abs_tol).collect();
    let mut out = CMatrix::zeros(n, idx.len());
    for (j, &i) in idx.iter().enumerate() {
        let row = v_t.row(i).adjoint();
        out.set_column(j, &row);
    }
    (out, sigmas)
}
