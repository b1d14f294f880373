use crate::matkernel::RMatrix;

use super::{delta_unchecked, orthogonal_transform, DmsaError, Rep};

#[derive(Debug, Clone)]
pub struct Symmetrized {
    /// Orthogonal `R` with `X' = R X`.
    pub rotation: RMatrix,
    pub rep: Rep,
    /// Matrix of `Delta` restricted to the span: `Delta X_i = sum_k X0_ik X_k`.
    pub restricted: RMatrix,
    /// Largest least-squares fit residual over the generators.
    pub fit_residual: f64,
}

/// Diagonalizes `Delta` on the span of the generators by an orthogonal
/// change of generators, turning a closed span into a DMSA.
///
/// Fails with `SpanNotClosed` when some `Delta X_i` leaves the span by more
/// than `tol * max(|Delta X_i|, 1)`, and with `NotRealDiagonalizable` when the
/// restricted matrix is not symmetric within `sqrt(tol)` relative.
pub fn symmetrize(r: &Rep, tol: f64) -> Result<Symmetrized, DmsaError> {
    let d = r.d();
    let mats = r.matrices();
    let deltas: Vec<_> = mats.iter().map(|x| delta_unchecked(mats, x)).collect();
    let real_inner = |a: &crate::matkernel::CMatrix, b: &crate::matkernel::CMatrix| crate::matkernel::frobenius_inner(a, b).re;
    let gram = RMatrix::from_fn(d, d, |k, l| real_inner(&mats[k], &mats[l]));
    let proj = RMatrix::from_fn(d, d, |i, k| real_inner(&mats[k], &deltas[i]));
    let scale = gram.norm().max(f64::MIN_POSITIVE);
    let ginv = gram.clone().pseudo_inverse(1e-12 * scale).map_err(|e| DmsaError::InvalidParameter(e.to_string()))?;
    let x0 = &proj * ginv;

    let fitted = super::combine(mats, &x0);
    let mut fit_residual = 0.0f64;
    for (i, (dx, fx)) in deltas.iter().zip(&fitted).enumerate() {
        let res = (dx - fx).norm();
        fit_residual = fit_residual.max(res);
        if res > tol * deltas[i].norm().max(1.0) {
            return Err(DmsaError::SpanNotClosed { residual: res });
        }
    }

    let asymmetry = (&x0 - x0.transpose()).norm();
    if asymmetry > tol.sqrt() * x0.norm().max(1.0) {
        return Err(DmsaError::NotRealDiagonalizable { asymmetry });
    }
    let sym = (&x0 + x0.transpose()) * 0.5;
    let eigen = sym.symmetric_eigen();
    let rotation = align_to_identity(&eigen.eigenvectors).transpose();
    let rep = orthogonal_transform(r, &rotation)?;
    Ok(Symmetrized { rotation, rep, restricted: x0, fit_residual })
}

/// Reorders and re-signs eigenvector columns so the result is as close to
/// the identity as a greedy assignment allows.
fn align_to_identity(q: &RMatrix) -> RMatrix {
    let d = q.ncols();
    let mut taken = vec![false; d];
    let mut out = RMatrix::zeros(d, d);
    let mut cells: Vec<(usize, usize, f64)> =
        (0..d).flat_map(|row| (0..d).map(move |col| (row, col, q[(row, col)].abs()))).collect();
    cells.sort_by(|a, b| b.2.total_cmp(&a.2));
    let mut row_done = vec![false; d];
    for (row, col, _) in cells {
        if row_done[row] || taken[col] {
            continue;
        }
        row_done[row] = true;
        taken[col] = true;
        let sign = if q[(row, col)] < 0.0 { -1.0 } else { 1.0 };
        out.set_column(row, &(q.column(col) * sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::spin_matrices;
    use crate::dmsa::verify;
    use crate::matkernel::{c, random_orthogonal, CMatrix};

    fn anisotropic_triple() -> Rep {
        let (s1, s2, s3) = spin_matrices(3).unwrap();
        Rep::new(vec![s3 * c(1., 0.), s1 * c(2., 0.), s2 * c(3., 0.)]).unwrap()
    }

    #[test]
    fn dmsa_input_gives_identity() {
        let r = anisotropic_triple();
        let s = symmetrize(&r, 1e-10).unwrap();
        assert!((s.rotation.clone() - RMatrix::identity(3, 3)).norm() < 1e-10);
        let expected = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![13.0, 10.0, 5.0]));
        assert!((s.restricted - expected).norm() < 1e-10);
    }

    #[test]
    fn recovers_scrambled_generators() {
        let r = anisotropic_triple();
        for seed in 0..5 {
            let q = random_orthogonal(3, seed);
            let scrambled = orthogonal_transform(&r, &q).unwrap();
            assert!(!verify(&scrambled, 1e-8).verdict);
            let s = symmetrize(&scrambled, 1e-10).unwrap();
            let report = verify(&s.rep, 1e-10);
            assert!(report.verdict, "{report:?}");
            let mut mu = report.mu.clone();
            mu.sort_by(f64::total_cmp);
            for (m, e) in mu.iter().zip([5.0, 10.0, 13.0]) {
                assert!((m - e).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn pair_scramble_of_normal_su2() {
        let r = crate::catalog::su2_normal(3, c(1.2, 1.6), c(0.6, 0.8), 0.0).unwrap().rep;
        let mut rot = RMatrix::identity(4, 4);
        rot.view_mut((0, 0), (2, 2)).copy_from(&random_orthogonal(2, 1));
        rot.view_mut((2, 2), (2, 2)).copy_from(&random_orthogonal(2, 2));
        let s = symmetrize(&orthogonal_transform(&r, &rot).unwrap(), 1e-10).unwrap();
        assert!(verify(&s.rep, 1e-10).verdict);
    }

    #[test]
    fn non_orthogonal_mixing_rejected() {
        // Two independent triples; mixing across them keeps the span closed
        // but makes the restricted matrix non-symmetric.
        let (a1, a2, a3) = spin_matrices(2).unwrap();
        let (b1, b2, b3) = spin_matrices(3).unwrap();
        let z2 = CMatrix::zeros(2, 2);
        let z3 = CMatrix::zeros(3, 3);
        let left = Rep::new(vec![a1, a2, a3, z2.clone(), z2.clone(), z2]).unwrap();
        let right = Rep::new(vec![z3.clone(), z3.clone(), z3, b1, b2, b3]).unwrap();
        let r = Rep::direct_sum(&[&left, &right]).unwrap();
        let mut m = RMatrix::identity(6, 6);
        m[(0, 3)] = 0.5;
        m[(4, 1)] = -0.3;
        let skewed = Rep::new(super::super::combine(r.matrices(), &m)).unwrap();
        assert!(matches!(symmetrize(&skewed, 1e-10), Err(DmsaError::NotRealDiagonalizable { .. })));
        let fine = orthogonal_transform(&r, &random_orthogonal(6, 9)).unwrap();
        assert!(verify(&symmetrize(&fine, 1e-10).unwrap().rep, 1e-10).verdict);
    }

    #[test]
    fn open_span_rejected() {
        let mut rng = crate::matkernel::rng_from_seed(4);
        let mats = (0..2).map(|_| crate::matkernel::random_hermitian(3, &mut rng)).collect();
        let r = Rep::new(mats).unwrap();
        assert!(matches!(symmetrize(&r, 1e-10), Err(DmsaError::SpanNotClosed { .. })));
    }
}
