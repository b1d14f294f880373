//! Named matrix representations: spin matrices, fuzzy sphere, normal su(2)
//! representations, the clock and shift torus and Clifford generators.

use std::f64::consts::PI;

use crate::dmsa::{verify, DmsaError, Rep, VerificationReport};
use crate::matkernel::{c, kron, CMatrix, C64};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("size {n} is below the minimum {min}")]
    SizeTooSmall { n: usize, min: usize },
    #[error("unsupported Clifford signature ({p}, {q}); p + q must be 4")]
    UnsupportedSignature { p: usize, q: usize },
    #[error(transparent)]
    Dmsa(#[from] DmsaError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedRep {
    pub name: String,
    pub rep: Rep,
    /// Eigenvalue of each generator under `Delta`, when known in closed form.
    pub expected_spectrum: Option<Vec<f64>>,
    pub notes: Vec<String>,
}

impl NamedRep {
    pub fn d(&self) -> usize {
        self.rep.d()
    }

    /// [`verify`], with the expected eigenvalue substituted for generators
    /// that vanish and so carry no measurable eigenvalue.
    pub fn verify(&self, tol: f64) -> VerificationReport {
        let mut report = verify(&self.rep, tol);
        if let Some(expected) = &self.expected_spectrum {
            for (i, x) in self.rep.matrices().iter().enumerate() {
                if x.norm_squared() == 0.0 {
                    report.mu[i] = expected[i];
                    report.notes.push(format!("x{} takes its eigenvalue {} from the construction", i + 1, expected[i]));
                }
            }
        }
        report.notes.extend(self.notes.iter().cloned());
        report
    }
}

fn ensure_size(n: usize, min: usize) -> Result<(), CatalogError> {
    if n < min {
        return Err(CatalogError::SizeTooSmall { n, min });
    }
    Ok(())
}

/// Spin-`(n-1)/2` matrices with `S3 = diag((n-1)/2, ..., -(n-1)/2)` and
/// `(S1)_{k,k+1} = sqrt(k (n-k)) / 2`; `[S_i, S_j] = i eps_ijk S_k`.
pub fn spin_matrices(n: usize) -> Result<(CMatrix, CMatrix, CMatrix), CatalogError> {
    ensure_size(n, 1)?;
    let mut s1 = CMatrix::zeros(n, n);
    let mut s2 = CMatrix::zeros(n, n);
    let s3 = CMatrix::from_fn(n, n, |r, col| if r == col { c((n as f64 - 1.0) / 2.0 - r as f64, 0.0) } else { c(0.0, 0.0) });
    for k in 1..n {
        let v = 0.5 * ((k * (n - k)) as f64).sqrt();
        s1[(k - 1, k)] = c(v, 0.0);
        s1[(k, k - 1)] = c(v, 0.0);
        s2[(k - 1, k)] = c(0.0, -v);
        s2[(k, k - 1)] = c(0.0, v);
    }
    Ok((s1, s2, s3))
}

/// `Lambda = e^{i theta} S3`, `T = S1 + i S2`.
pub fn fuzzy_sphere(n: usize, theta: f64) -> Result<NamedRep, CatalogError> {
    ensure_size(n, 2)?;
    let (s1, s2, s3) = spin_matrices(n)?;
    let (sin, cos) = theta.sin_cos();
    let rep = Rep::new(vec![&s3 * c(cos, 0.0), &s3 * c(sin, 0.0), s1, s2])?;
    let mut notes = Vec::new();
    if sin == 0.0 {
        notes.push("x2 vanishes; (x1, x3, x4) is also a d = 3 representation".to_string());
    }
    Ok(NamedRep { name: format!("fuzzy_sphere(n={n}, theta={theta})"), rep, expected_spectrum: Some(vec![2.0; 4]), notes })
}

/// `Lambda = z S3`, `T = w (S1 + a S2)`. The `Lambda` pair carries
/// `|w|^2 (1 + a^2)` and the `T` pair carries `|z|^2`.
pub fn su2_normal(n: usize, z: C64, w: C64, a: f64) -> Result<NamedRep, CatalogError> {
    ensure_size(n, 2)?;
    let (s1, s2, s3) = spin_matrices(n)?;
    let lambda = s3 * z;
    let t = (s1 + s2 * c(a, 0.0)) * w;
    let rep = Rep::from_pair(&lambda, &t)?;
    let first = w.norm_sqr() * (1.0 + a * a);
    let second = z.norm_sqr();
    Ok(NamedRep {
        name: format!("su2_normal(n={n}, z={z}, w={w}, a={a})"),
        rep,
        expected_spectrum: Some(vec![first, first, second, second]),
        notes: Vec::new(),
    })
}

/// `e^{2 pi i j / n}`, exact at multiples of a quarter turn so that real or
/// imaginary parts which vanish are exactly zero.
pub fn root_of_unity(j: usize, n: usize) -> C64 {
    let j = j % n;
    if (4 * j) % n == 0 {
        return [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][4 * j / n];
    }
    C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

/// Clock `g = diag(q^{k-1})` and cyclic shift `h` with `h_{k,k+1} = h_{n,1} = 1`,
/// `q = e^{2 pi i / n}`, so that `h g = q g h`.
pub fn clock_shift(n: usize) -> Result<(CMatrix, CMatrix), CatalogError> {
    ensure_size(n, 2)?;
    Ok(crate::unitary::clock_shift_power(n, 1))
}

/// `Lambda = e^{i theta} g`, `T = e^{i theta'} h`. Every generator has
/// eigenvalue `|1 - q|^2 = 4 sin^2(pi / n)`.
pub fn fuzzy_torus(n: usize, theta: f64, thetap: f64) -> Result<NamedRep, CatalogError> {
    let (g, h) = clock_shift(n)?;
    let rep = Rep::from_pair(&(g * C64::from_polar(1.0, theta)), &(h * C64::from_polar(1.0, thetap)))?;
    let mu = 4.0 * (PI / n as f64).sin().powi(2);
    let notes = vec![format!(
        "measured eigenvalue |1-q|^2 = {mu:.12}; the closed form |1-q|^2/2 = {:.12} differs by a factor of 2",
        mu / 2.0
    )];
    Ok(NamedRep {
        name: format!("fuzzy_torus(n={n}, theta={theta}, thetap={thetap})"),
        rep,
        expected_spectrum: Some(vec![mu; 4]),
        notes,
    })
}

fn pauli() -> [CMatrix; 4] {
    let m = |v: [C64; 4]| CMatrix::from_row_slice(2, 2, &v);
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    [m([l, o, o, l]), m([o, l, l, o]), m([o, -i, i, o]), m([l, o, o, -l])]
}

/// `e_i = sigma_1 (x) sigma_i` for `i = 1, 2, 3` and `e_4 = sigma_3 (x) 1`,
/// with the last `q` generators multiplied by `i` so they square to `-1`.
/// For `q > 0` those generators are anti-Hermitian.
pub fn clifford_rep(p: usize, q: usize) -> Result<NamedRep, CatalogError> {
    if p + q != 4 {
        return Err(CatalogError::UnsupportedSignature { p, q });
    }
    let [id, s1, s2, s3] = pauli();
    let base = [kron(&s1, &s1), kron(&s1, &s2), kron(&s1, &s3), kron(&s3, &id)];
    let mats: Vec<CMatrix> =
        base.into_iter().enumerate().map(|(k, e)| if k < p { e } else { e * c(0.0, 1.0) }).collect();
    let rep = if q == 0 { Rep::new(mats)? } else { Rep::non_hermitian(mats)? };
    let diff = p as f64 - q as f64;
    let expected = (0..4).map(|k| if k < p { 4.0 * (diff - 1.0) } else { 4.0 * (diff + 1.0) }).collect();
    let mut notes = Vec::new();
    if q > 0 {
        notes.push(format!("the last {q} generators are anti-Hermitian"));
    }
    Ok(NamedRep { name: format!("clifford({p},{q})"), rep, expected_spectrum: Some(expected), notes })
}
