//! Unitary representations with a single eigenvalue `mu`: the pair
//! equations in `lambda = 2 - mu`, simultaneous diagonalization of
//! `D = Lambda T` and `D~ = T Lambda`, the orbit map `s`, and a
//! constructive classification.

use std::f64::consts::PI;

use num_integer::gcd;

use crate::matkernel::{c, eig_hermitian, CMatrix, KernelError, C64};
use crate::repgraph::{cartesian_product, is_isomorphic, rep_graph, GraphError, RepGraph, DEFAULT_EDGE_EPS};

/// Tolerance used for the graphs of emitted representations.
const GRAPH_TOL: f64 = 1e-9;
/// Allowed drift of `|x|` along an orbit of `s`.
const ORBIT_TOL: f64 = 1e-9;
/// Phase difference `phi - phi~` of the generic `mu = 2` representation.
pub const MU2_GENERIC_PHASE: f64 = PI / 3.0;
/// Phase difference at which the `mu = 2` representation is a clock/shift pair.
pub const MU2_SHIFT_PHASE: f64 = -PI / 2.0;

#[derive(Debug, thiserror::Error)]
pub enum UnitaryError {
    #[error("{which} is not unitary (|M^H M - I| = {defect:e})")]
    NotUnitary { which: &'static str, defect: f64 },
    #[error("Lambda T and T Lambda do not commute (residual {residual:e})")]
    NotCommuting { residual: f64 },
    #[error("starting point is not on the torus (moduli {0}, {1})")]
    NotUnitModulus(f64, f64),
    #[error("orbit leaves the torus at step {step} (modulus {modulus})")]
    LeavesTorus { step: usize, modulus: f64 },
    #[error("matrix sizes do not match ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

fn check_unitary_pair(lambda: &CMatrix, t: &CMatrix, tol: f64) -> Result<(), UnitaryError> {
    if lambda.shape() != t.shape() || lambda.nrows() != lambda.ncols() {
        return Err(UnitaryError::SizeMismatch(lambda.nrows(), t.nrows()));
    }
    for (which, m) in [("Lambda", lambda), ("T", t)] {
        let defect = unitarity_defect(m);
        if defect > tol {
            return Err(UnitaryError::NotUnitary { which, defect });
        }
    }
    Ok(())
}

/// Residual norms of `lambda Lambda = T^H Lambda T + T Lambda T^H` and
/// `lambda T = Lambda^H T Lambda + Lambda T Lambda^H`, `lambda = 2 - mu`.
pub fn check_unitary_equations(lambda: &CMatrix, t: &CMatrix, mu: f64, tol: f64) -> Result<(f64, f64), UnitaryError> {
    check_unitary_pair(lambda, t, tol)?;
    let l = c(2.0 - mu, 0.0);
    let (lh, th) = (lambda.adjoint(), t.adjoint());
    let res1 = (lambda * l - &th * lambda * t - t * lambda * &th).norm();
    let res2 = (t * l - &lh * t * lambda - lambda * t * &lh).norm();
    Ok((res1, res2))
}

#[derive(Debug, Clone)]
pub struct DdDecomposition {
    /// Diagonal of `U^H Lambda T U`.
    pub d: Vec<C64>,
    /// Diagonal of `U^H T Lambda U`.
    pub dt: Vec<C64>,
    pub u: CMatrix,
    /// Largest off-diagonal magnitude left after the change of basis.
    pub off_diagonal: f64,
}

/// Simultaneous unitary diagonalization of `D = Lambda T` and `D~ = T Lambda`.
pub fn dd_decompose(lambda: &CMatrix, t: &CMatrix, tol: f64) -> Result<DdDecomposition, UnitaryError> {
    check_unitary_pair(lambda, t, tol)?;
    let d = lambda * t;
    let dt = t * lambda;
    let residual = (&d * &dt - &dt * &d).norm();
    if residual > tol {
        return Err(UnitaryError::NotCommuting { residual });
    }
    // Commuting normal matrices: the Hermitian and anti-Hermitian parts of
    // both commute, so one generic real combination diagonalizes all four.
    let herm = |m: &CMatrix| (m + m.adjoint()) * c(0.5, 0.0);
    let skew = |m: &CMatrix| (m - m.adjoint()) * c(0.0, -0.5);
    let weights = [1.0, 2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()];
    let parts = [herm(&d), skew(&d), herm(&dt), skew(&dt)];
    let mix = parts.iter().zip(weights).fold(CMatrix::zeros(d.nrows(), d.nrows()), |acc, (p, w)| acc + p * c(w, 0.0));
    let (_, u) = eig_hermitian(&mix)?;
    let dd = u.adjoint() * &d * &u;
    let ddt = u.adjoint() * &dt * &u;
    let n = d.nrows();
    let mut off_diagonal = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_diagonal = off_diagonal.max(dd[(i, j)].norm()).max(ddt[(i, j)].norm());
            }
        }
    }
    Ok(DdDecomposition { d: dd.diagonal().iter().copied().collect(), dt: ddt.diagonal().iter().copied().collect(), u, off_diagonal })
}

/// `s(d, d~) = (lambda d - d~, d)`.
pub fn s_map(lambda: f64, x: (C64, C64)) -> (C64, C64) {
    (x.0 * lambda - x.1, x.0)
}

/// `x, s(x), ..., s^k(x)`. Fails once an iterate leaves the unit torus,
/// which signals `lambda != 2 cos(phi - phi~)`.
pub fn s_orbit(lambda: f64, x: (C64, C64), k: usize) -> Result<Vec<(C64, C64)>, UnitaryError> {
    let (m0, m1) = (x.0.norm(), x.1.norm());
    if (m0 - 1.0).abs() > 1e-12 || (m1 - 1.0).abs() > 1e-12 {
        return Err(UnitaryError::NotUnitModulus(m0, m1));
    }
    let mut out = Vec::with_capacity(k + 1);
    out.push(x);
    let mut cur = x;
    for step in 1..=k {
        cur = s_map(lambda, cur);
        let modulus = cur.0.norm();
        if (modulus - 1.0).abs() > ORBIT_TOL {
            return Err(UnitaryError::LeavesTorus { step, modulus });
        }
        out.push(cur);
    }
    Ok(out)
}

/// A unitary representation exists exactly for `0 <= mu <= 4`.
pub fn exists_unitary(mu: f64) -> bool {
    (0.0..=4.0).contains(&mu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitaryVerdict {
    NoUnitary,
    AllOneDimensional,
    FourDimTypes,
    TorusFamily,
}

#[derive(Debug, Clone)]
pub struct UnitaryRep {
    pub name: String,
    pub lambda: CMatrix,
    pub t: CMatrix,
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub verdict: UnitaryVerdict,
    pub mu: f64,
    pub n: usize,
    /// `beta` of the first emitted torus representation.
    pub beta: Option<f64>,
    pub reps: Vec<UnitaryRep>,
    pub graphs: Vec<RepGraph>,
    pub notes: Vec<String>,
}

/// Clock and shift with `q = e^{2 pi i k / n}`: `g = diag(q^j)` and
/// `h_{j,j+1} = h_{n,1} = 1`.
pub fn clock_shift_power(n: usize, k: usize) -> (CMatrix, CMatrix) {
    let g = CMatrix::from_fn(n, n, |r, col| if r == col { crate::catalog::root_of_unity(k * r, n) } else { c(0.0, 0.0) });
    let h = CMatrix::from_fn(n, n, |r, col| if col == (r + 1) % n { c(1.0, 0.0) } else { c(0.0, 0.0) });
    (g, h)
}

/// Four-dimensional solution for `mu = 2`: `Lambda` is the cyclic shift
/// along the orbit `x, s(x), s^2(x), s^3(x)` of `x = (1, e^{-i delta})`,
/// and `T = D~ Lambda^H`.
pub fn mu2_rep(delta: f64) -> (CMatrix, CMatrix) {
    let mut x = (c(1.0, 0.0), C64::from_polar(1.0, -delta));
    let mut dt = Vec::with_capacity(4);
    for _ in 0..4 {
        dt.push(x.1);
        x = s_map(0.0, x);
    }
    let lambda = CMatrix::from_fn(4, 4, |r, col| if col == (r + 1) % 4 { c(1.0, 0.0) } else { c(0.0, 0.0) });
    let t = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(dt)) * lambda.adjoint();
    (lambda, t)
}

fn graph(lambda: &CMatrix, t: &CMatrix) -> Result<RepGraph, UnitaryError> {
    Ok(rep_graph(lambda, t, DEFAULT_EDGE_EPS, GRAPH_TOL, 0)?)
}

/// Whether the 4-vertex graph `g` has the shape of a Cartesian product of
/// two 2-vertex graphs, labels ignored.
fn factors_as_product(g: &RepGraph) -> Result<bool, UnitaryError> {
    if g.n() != 4 {
        return Ok(false);
    }
    let blank = |x: &RepGraph| RepGraph::new(vec![c(0.0, 0.0); x.n()], x.edges.iter().copied());
    let target = blank(g);
    let all = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let twos: Vec<RepGraph> = (0u8..16)
        .map(|mask| RepGraph::new(vec![c(0.0, 0.0); 2], all.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e)))
        .collect();
    for a in &twos {
        for b in &twos {
            if is_isomorphic(&target, &cartesian_product(a, b), 0.5)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Irreducible unitary representations of size `n` for `Spec = {mu}`.
///
/// `mu = 2` always yields the two 4-dimensional types regardless of `n`.
/// Otherwise the torus family lists every `beta = k pi / n` with
/// `gcd(k, n) = 1` and `4 sin^2(beta) = mu` within `tol`; other `k` give
/// representations of smaller size.
pub fn classify(mu: f64, n: usize, tol: f64) -> Result<ClassificationResult, UnitaryError> {
    let mut result =
        ClassificationResult { verdict: UnitaryVerdict::NoUnitary, mu, n, beta: None, reps: vec![], graphs: vec![], notes: vec![] };
    if !exists_unitary(mu) {
        result.notes.push(format!("mu = {mu} lies outside [0, 4]"));
        return Ok(result);
    }
    if mu.abs() <= tol {
        result.verdict = UnitaryVerdict::AllOneDimensional;
        for (a, b) in [(0.0, 0.0), (PI / 3.0, PI / 4.0)] {
            let lambda = CMatrix::from_element(1, 1, C64::from_polar(1.0, a));
            let t = CMatrix::from_element(1, 1, C64::from_polar(1.0, b));
            result.graphs.push(graph(&lambda, &t)?);
            result.reps.push(UnitaryRep { name: format!("scalar(theta={a:.6}, theta'={b:.6})"), lambda, t });
        }
        result.notes.push("every irreducible representation is 1-dimensional; any pair of unit scalars works".into());
        return Ok(result);
    }
    if (mu - 2.0).abs() <= tol {
        result.verdict = UnitaryVerdict::FourDimTypes;
        if n != 4 {
            result.notes.push(format!("irreducible representations for mu = 2 are 4-dimensional; requested size {n} ignored"));
        }
        for (name, delta) in [("shift", MU2_SHIFT_PHASE), ("generic", MU2_GENERIC_PHASE)] {
            let (lambda, t) = mu2_rep(delta);
            let g = graph(&lambda, &t)?;
            let factors = factors_as_product(&g)?;
            result.notes.push(format!(
                "{name} type (phi - phi~ = {delta:.6}): {} edges, {}",
                g.edge_count(),
                if factors { "shaped as a product of two 2-vertex graphs" } else { "not a product of two 2-vertex graphs, so not a tensor product of 2-dimensional representations" }
            ));
            result.graphs.push(g);
            result.reps.push(UnitaryRep { name: format!("mu2_{name}"), lambda, t });
        }
        return Ok(result);
    }
    result.verdict = UnitaryVerdict::TorusFamily;
    if n == 0 {
        return Ok(result);
    }
    let mut skipped = Vec::new();
    for k in 1..=n / 2 {
        let beta = k as f64 * PI / n as f64;
        if (4.0 * beta.sin().powi(2) - mu).abs() > tol {
            continue;
        }
        if gcd(k, n) != 1 {
            skipped.push(k);
            continue;
        }
        let (lambda, t) = clock_shift_power(n, k);
        result.beta.get_or_insert(beta);
        result.graphs.push(graph(&lambda, &t)?);
        result.reps.push(UnitaryRep { name: format!("clock_shift(n={n}, k={k}, beta={beta:.12})"), lambda, t });
    }
    for k in skipped {
        let m = n / gcd(k, n);
        result.notes.push(format!("beta = {k} pi / {n} matches mu but gives irreducible representations of size {m}"));
    }
    if result.reps.is_empty() {
        result.notes.push(format!("no beta = k pi / {n} with 4 sin^2(beta) = {mu}"));
    }
    Ok(result)
}
