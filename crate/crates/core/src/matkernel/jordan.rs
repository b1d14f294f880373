//! Numerical Jordan form: Schur eigenvalues, clustering, then a staircase of
//! ranks of `(M - lambda I)^k` decided by singular values.

use super::eig::{schur, sort_key, sort_quantum};
use super::{ensure_finite, ensure_square, null_space, orthonormal_span, CMatrix, KernelError, C64};

/// Practical size limit; rank decisions are tolerance based.
pub const JORDAN_MAX_DIM: usize = 64;

/// Singular values within this factor of the rank threshold are ambiguous.
const AMBIGUITY_BAND: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: C64,
    pub size: usize,
}

/// `basis^{-1} M basis` equals the block-diagonal Jordan matrix assembled
/// from `blocks` (upper ones on the superdiagonal, blocks in order).
#[derive(Debug, Clone)]
pub struct JordanDecomposition {
    pub basis: CMatrix,
    pub blocks: Vec<JordanBlock>,
}

impl JordanDecomposition {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    /// Eigenvalue belonging to each basis column.
    pub fn column_eigenvalues(&self) -> Vec<C64> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(b.eigenvalue, b.size)).collect()
    }

    pub fn jordan_matrix(&self) -> CMatrix {
        let n = self.dim();
        let mut j = CMatrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            for k in 0..b.size {
                j[(off + k, off + k)] = b.eigenvalue;
                if k + 1 < b.size {
                    j[(off + k, off + k + 1)] = C64::new(1.0, 0.0);
                }
            }
            off += b.size;
        }
        j
    }

    /// `|P^{-1} M P - J|_F`, or infinity if `P` is singular.
    pub fn residual(&self, m: &CMatrix) -> f64 {
        match self.basis.clone().lu().solve(&(m * &self.basis)) {
            Some(pmp) => (pmp - self.jordan_matrix()).norm(),
            None => f64::INFINITY,
        }
    }
}

/// Jordan decomposition of a square matrix with relative rank threshold
/// `rank_tol` (the default is [`super::DEFAULT_RANK_TOL`]).
///
/// Eigenvalues closer than `sqrt(rank_tol) * |M|` are treated as one
/// cluster. Blocks are ordered by cluster eigenvalue (real, then imaginary)
/// and by decreasing size inside a cluster.
pub fn jordan_form(m: &CMatrix, rank_tol: f64) -> Result<JordanDecomposition, KernelError> {
    let n = ensure_square(m)?;
    ensure_finite(m)?;
    if n > JORDAN_MAX_DIM {
        return Err(KernelError::TooLarge { n, max: JORDAN_MAX_DIM });
    }
    if n == 0 {
        return Ok(JordanDecomposition { basis: CMatrix::zeros(0, 0), blocks: vec![] });
    }
    let scale = m.norm().max(1.0);
    let (_, t) = schur(m)?;
    let values: Vec<C64> = (0..n).map(|k| t[(k, k)]).collect();
    let mut clusters = cluster(&values, rank_tol.sqrt() * scale);
    let quantum = sort_quantum(m);
    clusters.sort_by_key(|cl| sort_key(cl.0, quantum));

    let mut basis = CMatrix::zeros(n, n);
    let mut blocks = Vec::new();
    let mut col = 0;
    for (lambda, mult) in clusters {
        let shifted = m - CMatrix::identity(n, n) * lambda;
        let chains = cluster_chains(&shifted, mult, rank_tol, scale)?;
        for chain in chains {
            blocks.push(JordanBlock { eigenvalue: lambda, size: chain.len() });
            for v in chain {
                basis.set_column(col, &v);
                col += 1;
            }
        }
    }
    let dec = JordanDecomposition { basis, blocks };
    let residual = dec.residual(m);
    let bound = rank_tol.sqrt() * scale;
    if residual > bound {
        return Err(KernelError::JordanResidual { residual, bound });
    }
    Ok(dec)
}

/// Single-linkage clustering; returns (centroid, multiplicity). The centroid
/// of a defective cluster is accurate even when its members are perturbed
/// by `eps^(1/k)`, because the perturbations sum to (nearly) zero.
fn cluster(values: &[C64], radius: f64) -> Vec<(C64, usize)> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, C64, usize)> = Vec::new();
    for i in 0..n {
        let r = root(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += values[i];
                g.2 += 1;
            }
            None => groups.push((r, values[i], 1)),
        }
    }
    groups.into_iter().map(|(_, s, k)| (s / k as f64, k)).collect()
}

fn rank_with_check(m: &CMatrix, threshold: f64) -> Result<(usize, CMatrix), KernelError> {
    let (ker, sigmas) = null_space(m, threshold);
    for &s in &sigmas {
        if s > threshold / AMBIGUITY_BAND && s < threshold * AMBIGUITY_BAND {
            return Err(KernelError::RankAmbiguous { sigma: s, threshold });
        }
    }
    Ok((m.ncols() - ker.ncols(), ker))
}

/// Jordan chains for one eigenvalue cluster of multiplicity `mult`, where
/// `shifted = M - lambda I`. Each chain is returned bottom-up
/// (`N^{k-1} v, ..., N v, v`).
fn cluster_chains(
    shifted: &CMatrix,
    mult: usize,
    rank_tol: f64,
    scale: f64,
) -> Result<Vec<Vec<nalgebra::DVector<C64>>>, KernelError> {
    let n = shifted.nrows();
    // kernels[k] = basis of ker N^k, k = 0..=index
    let mut kernels: Vec<CMatrix> = vec![CMatrix::zeros(n, 0)];
    let mut ranks = vec![n];
    let mut power = CMatrix::identity(n, n);
    loop {
        power = shifted * &power;
        let k = ranks.len();
        let threshold = rank_tol * scale.powi(k as i32);
        let (r, ker) = rank_with_check(&power, threshold)?;
        let prev = *ranks.last().unwrap();
        if r == prev {
            break;
        }
        ranks.push(r);
        kernels.push(ker);
        if k > mult {
            break;
        }
    }
    let index = ranks.len() - 1;
    if n - ranks[index] != mult {
        let sigma = (n - ranks[index]) as f64;
        return Err(KernelError::RankAmbiguous { sigma, threshold: mult as f64 });
    }
    // Number of blocks of size >= k is ranks[k-1] - ranks[k].
    let at_least = |k: usize| -> usize {
        if k > index {
            0
        } else {
            ranks[k - 1] - ranks[k]
        }
    };

    let mut tops: Vec<(usize, nalgebra::DVector<C64>)> = Vec::new();
    for k in (1..=index).rev() {
        let count = at_least(k) - at_least(k + 1);
        if count == 0 {
            continue;
        }
        // Span that new chain tops at level k must avoid.
        let mut avoid_cols: Vec<nalgebra::DVector<C64>> = kernels[k - 1].column_iter().map(|c| c.into_owned()).collect();
        for (len, v) in &tops {
            let mut w = v.clone();
            for _ in 0..(len - k) {
                w = shifted * w;
            }
            avoid_cols.push(w);
        }
        let avoid = if avoid_cols.is_empty() {
            CMatrix::zeros(n, 0)
        } else {
            orthonormal_span(&CMatrix::from_columns(&avoid_cols), 1e-10)
        };
        let projector = CMatrix::identity(n, n) - &avoid * avoid.adjoint();
        let candidates = &projector * &kernels[k];
        let svd = candidates.clone().svd(true, false);
        let u = svd.u.expect("requested U");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        if order.len() < count || svd.singular_values[order[count - 1]] < 1e-6 {
            let sigma = order.get(count.saturating_sub(1)).map_or(0.0, |&i| svd.singular_values[i]);
            return Err(KernelError::RankAmbiguous { sigma, threshold: 1e-6 });
        }
        for &i in order.iter().take(count) {
            tops.push((k, u.column(i).into_owned()));
        }
    }
    tops.sort_by(|a, b| b.0.cmp(&a.0));
    let chains = tops
        .into_iter()
        .map(|(len, v)| {
            let mut chain = vec![v];
            for _ in 1..len {
                let next = shifted * chain.last().unwrap();
                chain.push(next);
            }
            chain.reverse();
            chain
        })
        .collect();
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::{c, random_unitary};

    fn sizes(d: &JordanDecomposition) -> Vec<usize> {
        d.blocks.iter().map(|b| b.size).collect()
    }

    #[test]
    fn nilpotent_two_by_two() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        let d = jordan_form(&m, 1e-8).unwrap();
        assert_eq!(sizes(&d), vec![2]);
        assert!(d.blocks[0].eigenvalue.norm() < 1e-12);
        assert!(d.residual(&m) < 1e-12);
    }

    #[test]
    fn diagonal_gives_unit_blocks() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2., 0.), c(0., 0.), c(0., 0.), c(3., 0.)]);
        let d = jordan_form(&m, 1e-8).unwrap();
        assert_eq!(sizes(&d), vec![1, 1]);
        assert!((d.blocks[0].eigenvalue - c(2., 0.)).norm() < 1e-12);
        assert!((d.blocks[1].eigenvalue - c(3., 0.)).norm() < 1e-12);
    }

    #[test]
    fn similarity_preserves_structure() {
        // J = J_3(1) + J_1(1) + J_2(-2)
        let mut j = CMatrix::zeros(6, 6);
        for i in 0..4 {
            j[(i, i)] = c(1., 0.);
        }
        j[(0, 1)] = c(1., 0.);
        j[(1, 2)] = c(1., 0.);
        j[(4, 4)] = c(-2., 0.);
        j[(5, 5)] = c(-2., 0.);
        j[(4, 5)] = c(1., 0.);
        let u = random_unitary(6, 4);
        let m = &u * &j * u.adjoint();
        let d = jordan_form(&m, 1e-8).unwrap();
        let mut got: Vec<(i64, usize)> = d.blocks.iter().map(|b| (b.eigenvalue.re.round() as i64, b.size)).collect();
        got.sort();
        assert_eq!(got, vec![(-2, 2), (1, 1), (1, 3)]);
        assert!(d.residual(&m) < 1e-6);
    }

    #[test]
    fn too_large_rejected() {
        let m = CMatrix::identity(65, 65);
        assert!(matches!(jordan_form(&m, 1e-8), Err(KernelError::TooLarge { .. })));
    }
}
