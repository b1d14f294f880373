use nalgebra::{Schur, SymmetricEigen};

use super::{ensure_finite, ensure_square, CMatrix, KernelError, C64};

/// Eigenvalues with matching unit-norm eigenvectors (one per column).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: CMatrix,
}

impl Eigen {
    /// `|M V - V diag(w)|_F`.
    pub fn residual(&self, m: &CMatrix) -> f64 {
        let mut vd = self.vectors.clone();
        for (j, w) in self.values.iter().enumerate() {
            vd.column_mut(j).scale_mut_complex(*w);
        }
        (m * &self.vectors - vd).norm()
    }
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, w: C64);
}

impl<S> ScaleComplex for nalgebra::Matrix<C64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<C64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, w: C64) {
        for z in self.iter_mut() {
            *z *= w;
        }
    }
}

/// Deterministic sort key: real part first, then imaginary part, each
/// quantized to `quantum` so that rounding noise cannot flip the order of
/// values that are equal in exact arithmetic.
pub fn sort_key(z: C64, quantum: f64) -> (i64, i64) {
    ((z.re / quantum).round() as i64, (z.im / quantum).round() as i64)
}

pub(crate) fn sort_quantum(m: &CMatrix) -> f64 {
    1e-9 * m.norm().max(1.0)
}

/// Eigendecomposition of a general square complex matrix via the complex
/// Schur form followed by triangular back-substitution. Values are sorted
/// by (real, imaginary). For defective inputs the returned vectors are
/// (nearly) parallel inside each defective cluster; use [`super::jordan_form`]
/// when the Jordan structure matters.
pub fn eig(m: &CMatrix, tol: f64) -> Result<Eigen, KernelError> {
    let n = ensure_square(m)?;
    ensure_finite(m)?;
    if n == 0 {
        return Ok(Eigen { values: vec![], vectors: CMatrix::zeros(0, 0) });
    }
    let (q, t) = schur(m)?;
    let scale = t.norm().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * scale;

    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for l in (j + 1)..=k {
                acc += t[(j, l)] * y[(l, k)];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < small {
                denom = C64::new(small, 0.0);
            }
            y[(j, k)] = -acc / denom;
        }
    }
    let mut vectors = q * y;
    for mut col in vectors.column_iter_mut() {
        let nrm = col.norm();
        if nrm > 0.0 {
            col /= C64::new(nrm, 0.0);
        }
    }
    let values: Vec<C64> = (0..n).map(|k| t[(k, k)]).collect();
    let eig = sorted(values, vectors, sort_quantum(m));
    // The reconstruction contract only binds when the spectrum is simple.
    let gap = min_gap(&eig.values);
    if gap > tol.sqrt() * scale && eig.residual(m) > tol * scale {
        return Err(KernelError::NoConvergence);
    }
    Ok(eig)
}

/// Eigendecomposition of a Hermitian matrix (real values, orthonormal
/// vectors), sorted ascending.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix), KernelError> {
    let n = ensure_square(m)?;
    ensure_finite(m)?;
    if n == 0 {
        return Ok((vec![], CMatrix::zeros(0, 0)));
    }
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let se = SymmetricEigen::try_new(herm, f64::EPSILON, 0).ok_or(KernelError::NoConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (j, &i) in order.iter().enumerate() {
        vectors.set_column(j, &se.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

pub(crate) fn schur(m: &CMatrix) -> Result<(CMatrix, CMatrix), KernelError> {
    let n = m.nrows();
    let max_iter = 1000 * n.max(1);
    // Shifted QR can stall on permutation-like matrices (e.g. a cyclic
    // shift); a fixed random unitary similarity breaks the symmetry.
    let (q, mut t) = match Schur::try_new(m.clone(), f64::EPSILON, max_iter) {
        Some(s) => s.unpack(),
        None => (1..=3u64)
            .find_map(|seed| {
                let u = super::random_unitary(n, seed);
                Schur::try_new(u.adjoint() * m * &u, f64::EPSILON, max_iter).map(|s| {
                    let (q, t) = s.unpack();
                    (u * q, t)
                })
            })
            .ok_or(KernelError::NoConvergence)?,
    };
    // The complex Schur form is upper triangular; scrub sub-diagonal noise.
    for j in 0..n {
        for i in (j + 1)..n {
            t[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok((q, t))
}

pub(crate) fn min_gap(values: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            gap = gap.min((a - b).norm());
        }
    }
    gap
}

fn sorted(values: Vec<C64>, vectors: CMatrix, quantum: f64) -> Eigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| sort_key(values[i], quantum));
    let mut v = CMatrix::zeros(vectors.nrows(), n);
    for (j, &i) in order.iter().enumerate() {
        v.set_column(j, &vectors.column(i));
    }
    Eigen { values: order.iter().map(|&i| values[i]).collect(), vectors: v }
}
