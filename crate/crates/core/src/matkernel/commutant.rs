//! Decomposition of a self-adjoint family of matrices into irreducible
//! invariant subspaces through its commutant.
//!
//! The commutant `{M : [M, G] = 0 for all G}` of a family closed under
//! adjoints is itself a *-algebra. A random Hermitian element of it has
//! eigenspaces that are invariant under every generator; splitting along
//! them and recursing until the commutant is one-dimensional yields the
//! irreducible decomposition.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::eig::eig_hermitian;
use super::{c, ensure_square, kron, random::rng_from_seed, CMatrix, KernelError, C64};
use crate::par::{self, Exec};

const MAX_SPLIT_ATTEMPTS: usize = 8;

/// Basis (as matrices) of the commutant of `gens`. A matrix counts as
/// commuting when its residual is below `sqrt(tol)` relative to the size of
/// the commutator map.
pub fn commutant_basis(gens: &[CMatrix], tol: f64) -> Result<Vec<CMatrix>, KernelError> {
    commutant_basis_with(Exec::default(), gens, tol)
}

pub fn commutant_basis_with(exec: Exec, gens: &[CMatrix], tol: f64) -> Result<Vec<CMatrix>, KernelError> {
    let n = check_gens(gens)?;
    if n == 1 {
        return Ok(vec![CMatrix::identity(1, 1)]);
    }
    // Gram matrix of the stacked commutator map M -> ([M, G])_G acting on
    // column-major vec(M):  sum_G K_G^H K_G with K_G = I (x) G - G^T (x) I.
    let id = CMatrix::identity(n, n);
    let terms = par::map(exec, gens, |g| {
        let gh = g.adjoint();
        let gt = g.transpose();
        let gbar = g.conjugate();
        kron(&id, &(&gh * g)) + kron(&(&gbar * &gt), &id) - kron(&gt, &gh) - kron(&gbar, g)
    });
    let mut gram = CMatrix::zeros(n * n, n * n);
    for t in terms {
        gram += t;
    }
    let (values, vectors) = eig_hermitian(&gram)?;
    let top = values.last().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    let basis = values
        .iter()
        .enumerate()
        .filter(|(_, &w)| w <= tol * top)
        .map(|(k, _)| CMatrix::from_column_slice(n, n, vectors.column(k).as_slice()))
        .collect();
    Ok(basis)
}

/// Orthonormal bases (columns) of pairwise-orthogonal subspaces, each
/// invariant under every generator and irreducible, spanning the whole
/// space. `gens` must be closed under conjugate transpose.
pub fn commutant_decompose(gens: &[CMatrix], tol: f64, seed: u64) -> Result<Vec<CMatrix>, KernelError> {
    let n = check_gens(gens)?;
    let mut rng = rng_from_seed(seed);
    let parts = split(gens, tol, &mut rng)?;
    let total: usize = parts.iter().map(|q| q.ncols()).sum();
    debug_assert_eq!(total, n);

    // Cross-subspace blocks must vanish.
    for g in gens {
        let gnorm = g.norm().max(1.0);
        for (a, qa) in parts.iter().enumerate() {
            for (b, qb) in parts.iter().enumerate() {
                if a == b {
                    continue;
                }
                let residual = (qa.adjoint() * g * qb).norm();
                if residual > tol * gnorm {
                    return Err(KernelError::ToleranceFailure { residual, bound: tol * gnorm });
                }
            }
        }
    }
    Ok(parts)
}

/// Restriction `Q^H G Q` of each generator to the subspace spanned by `q`.
pub fn restrict(gens: &[CMatrix], q: &CMatrix) -> Vec<CMatrix> {
    gens.iter().map(|g| q.adjoint() * g * q).collect()
}

fn check_gens(gens: &[CMatrix]) -> Result<usize, KernelError> {
    let first = gens.first().ok_or(KernelError::Empty)?;
    let n = ensure_square(first)?;
    for g in gens {
        let m = ensure_square(g)?;
        if m != n {
            return Err(KernelError::SizeMismatch(n, m));
        }
    }
    Ok(n)
}

fn split<R: Rng>(gens: &[CMatrix], tol: f64, rng: &mut R) -> Result<Vec<CMatrix>, KernelError> {
    let n = gens[0].nrows();
    let basis = commutant_basis_with(Exec::Parallel, gens, tol)?;
    if basis.len() <= 1 {
        return Ok(vec![CMatrix::identity(n, n)]);
    }
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let h = random_hermitian_element(&basis, rng);
        let (values, vectors) = eig_hermitian(&h)?;
        let spread = values.iter().fold(0.0f64, |m, w| m.max(w.abs())).max(f64::MIN_POSITIVE);
        let gap = tol.sqrt() * spread;
        let mut groups: Vec<Vec<usize>> = vec![vec![0]];
        for k in 1..n {
            if values[k] - values[k - 1] > gap {
                groups.push(vec![k]);
            } else {
                groups.last_mut().unwrap().push(k);
            }
        }
        if groups.len() < 2 {
            continue;
        }
        let mut out = Vec::new();
        for group in groups {
            let q = CMatrix::from_columns(&group.iter().map(|&k| vectors.column(k)).collect::<Vec<_>>());
            let sub = restrict(gens, &q);
            for inner in split(&sub, tol, rng)? {
                out.push(&q * inner);
            }
        }
        return Ok(out);
    }
    Err(KernelError::ToleranceFailure { residual: basis.len() as f64, bound: 1.0 })
}

fn random_hermitian_element<R: Rng>(basis: &[CMatrix], rng: &mut R) -> CMatrix {
    let n = basis[0].nrows();
    let mut h = CMatrix::zeros(n, n);
    for m in basis {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        // Hermitian parts of M and iM span the Hermitian part of the algebra.
        let herm = (m + m.adjoint()) * c(0.5, 0.0);
        let skew = (m - m.adjoint()) * C64::new(0.0, 0.5);
        h += herm * c(a, 0.0) + skew * c(b, 0.0);
    }
    h
}
