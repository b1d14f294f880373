//! Representation graphs of a pair `(Lambda, T)`: vertices are the vectors
//! of a Jordan basis of `Lambda` adapted to the irreducible decomposition,
//! labelled by their eigenvalue, with an edge `(i, j)` whenever the matrix
//! `alpha = P^{-1} T P` has a non-negligible entry `alpha_ij`.

mod iso;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use petgraph::unionfind::UnionFind;

use crate::matkernel::{commutant_decompose, ensure_square, jordan_form, CMatrix, KernelError, C64};

pub use iso::{is_isomorphic, is_isomorphic_brute, MAX_ISO_VERTICES};

pub const DEFAULT_EDGE_EPS: f64 = 1e-9;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("isomorphism search limited to {max} vertices with repeated labels, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("Jordan basis is singular")]
    SingularBasis,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepGraph {
    /// `labels[i]` is the eigenvalue of basis vector `i` (0-based).
    pub labels: Vec<C64>,
    pub edges: BTreeSet<(usize, usize)>,
    pub notes: Vec<String>,
}

impl RepGraph {
    pub fn new(labels: Vec<C64>, edges: impl IntoIterator<Item = (usize, usize)>) -> RepGraph {
        let n = labels.len();
        let edges: BTreeSet<_> = edges.into_iter().collect();
        assert!(edges.iter().all(|&(a, b)| a < n && b < n), "edge endpoint out of range");
        RepGraph { labels, edges, notes: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    /// True when some pair of labels lies within `tol`.
    pub fn has_repeated_labels(&self, tol: f64) -> bool {
        let l = &self.labels;
        (0..l.len()).any(|a| (0..a).any(|b| (l[a] - l[b]).norm() <= tol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReprClass {
    pub diagonalizable: bool,
    pub non_degenerate: bool,
    pub semi_normal: bool,
    pub normal: bool,
    pub unitary: bool,
    pub tol: f64,
}

fn normality_defect(m: &CMatrix) -> f64 {
    let mh = m.adjoint();
    (m * &mh - &mh * m).norm()
}

fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

fn check_pair(lambda: &CMatrix, t: &CMatrix) -> Result<usize, KernelError> {
    let n = ensure_square(lambda)?;
    let m = ensure_square(t)?;
    if n != m {
        return Err(KernelError::SizeMismatch(n, m));
    }
    Ok(n)
}

/// Normality and unitarity are tested against `tol * max(|M|^2, 1)` and
/// `tol` respectively; eigenvalues are distinct when the Jordan form at
/// rank threshold `tol` separates them into singleton blocks.
pub fn classify_rep(lambda: &CMatrix, t: &CMatrix, tol: f64) -> Result<ReprClass, GraphError> {
    check_pair(lambda, t)?;
    let jf = jordan_form(lambda, tol)?;
    let diagonalizable = jf.is_diagonal();
    let vals: Vec<C64> = jf.blocks.iter().map(|b| b.eigenvalue).collect();
    let sep = tol.sqrt() * lambda.norm().max(1.0);
    let distinct = (0..vals.len()).all(|a| (0..a).all(|b| (vals[a] - vals[b]).norm() > sep));
    let non_degenerate = diagonalizable && distinct;
    let is_normal = |m: &CMatrix| normality_defect(m) <= tol * m.norm_squared().max(1.0);
    let unitary = unitarity_defect(lambda) <= tol && unitarity_defect(t) <= tol;
    // Unitary matrices are normal; the explicit implication keeps the flags
    // consistent at the tolerance boundary.
    let semi_normal = unitary || is_normal(lambda);
    let normal = unitary || (semi_normal && is_normal(t));
    Ok(ReprClass { diagonalizable, non_degenerate, semi_normal, normal, unitary, tol })
}

/// Jordan basis of `Lambda` with respect to `T`, with the eigenvalue of
/// each column and the number of irreducible subspaces it spans.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    pub basis: CMatrix,
    pub eigenvalues: Vec<C64>,
    /// Column ranges of the irreducible subspaces, in order.
    pub subspaces: Vec<std::ops::Range<usize>>,
}

/// Columns ordered subspace by subspace over the irreducible decomposition
/// of the *-algebra generated by `Lambda` and `T`; inside each subspace a
/// Jordan basis of the restricted `Lambda`.
pub fn jordan_basis_wrt_t(lambda: &CMatrix, t: &CMatrix, tol: f64, seed: u64) -> Result<AdaptedBasis, GraphError> {
    let n = check_pair(lambda, t)?;
    let gens = [lambda.clone(), lambda.adjoint(), t.clone(), t.adjoint()];
    let parts = commutant_decompose(&gens, tol, seed)?;
    let mut basis = CMatrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut subspaces = Vec::with_capacity(parts.len());
    let mut col = 0;
    for q in &parts {
        let restricted = q.adjoint() * lambda * q;
        let jf = jordan_form(&restricted, tol)?;
        let block = q * &jf.basis;
        let k = block.ncols();
        basis.view_mut((0, col), (n, k)).copy_from(&block);
        eigenvalues.extend(jf.column_eigenvalues());
        subspaces.push(col..col + k);
        col += k;
    }
    Ok(AdaptedBasis { basis, eigenvalues, subspaces })
}

/// `alpha = P^{-1} T P`.
pub fn alpha_matrix(basis: &CMatrix, t: &CMatrix) -> Result<CMatrix, GraphError> {
    basis.clone().lu().solve(&(t * basis)).ok_or(GraphError::SingularBasis)
}

/// Edge `(i, j)` iff `|alpha_ij| > eps * |alpha|`.
pub fn rep_graph(lambda: &CMatrix, t: &CMatrix, eps: f64, tol: f64, seed: u64) -> Result<RepGraph, GraphError> {
    let adapted = jordan_basis_wrt_t(lambda, t, tol, seed)?;
    let alpha = alpha_matrix(&adapted.basis, t)?;
    let cutoff = eps * alpha.norm();
    let n = alpha.nrows();
    let edges = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| alpha[(i, j)].norm() > cutoff);
    let mut g = RepGraph::new(adapted.eigenvalues, edges);
    let sep = tol.sqrt() * lambda.norm().max(1.0);
    if g.has_repeated_labels(sep) {
        g.notes.push(format!("repeated eigenvalues: the graph depends on the basis chosen with seed {seed}"));
    }
    Ok(g)
}

/// Weakly connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &RepGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    let labels = uf.into_labeling();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let root = labels[v];
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(v);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMethod {
    GraphConnected,
    SemiNormalGraph,
    Commutant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibilityVerdict {
    pub verdict: Irreducibility,
    pub method: VerdictMethod,
    pub components: usize,
}

/// A connected graph proves irreducibility. A disconnected graph proves
/// reducibility only for normal `Lambda`; otherwise the commutant decides.
pub fn irreducibility_verdict(lambda: &CMatrix, t: &CMatrix, tol: f64, seed: u64) -> Result<IrreducibilityVerdict, GraphError> {
    let g = rep_graph(lambda, t, DEFAULT_EDGE_EPS, tol, seed)?;
    let comps = components(&g).len();
    let (verdict, method) = if comps <= 1 {
        (Irreducibility::Irreducible, VerdictMethod::GraphConnected)
    } else if normality_defect(lambda) <= tol * lambda.norm_squared().max(1.0) {
        (Irreducibility::Reducible, VerdictMethod::SemiNormalGraph)
    } else {
        let gens = [lambda.clone(), lambda.adjoint(), t.clone(), t.adjoint()];
        let parts = commutant_decompose(&gens, tol, seed)?;
        let v = if parts.len() == 1 { Irreducibility::Irreducible } else { Irreducibility::Reducible };
        (v, VerdictMethod::Commutant)
    };
    Ok(IrreducibilityVerdict { verdict, method, components: comps })
}

/// Vertex `(v, u)` has index `v * |U| + u` and label `lambda(v) + lambda'(u)`.
/// Edges `(v, u) -> (v', u)` for `v -> v'` and `(v, u) -> (v, u')` for `u -> u'`.
pub fn cartesian_product(g: &RepGraph, h: &RepGraph) -> RepGraph {
    let m = h.n();
    let labels = g.labels.iter().flat_map(|a| h.labels.iter().map(move |b| a + b)).collect();
    let mut edges = BTreeSet::new();
    for &(a, b) in &g.edges {
        for u in 0..m {
            edges.insert((a * m + u, b * m + u));
        }
    }
    for &(a, b) in &h.edges {
        for v in 0..g.n() {
            edges.insert((v * m + a, v * m + b));
        }
    }
    RepGraph { labels, edges, notes: Vec::new() }
}

fn fmt_fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|ch| ch == '0' || ch == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// DOT text with 1-based vertex names; edges in sorted order.
pub fn dot_string(g: &RepGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for (i, z) in g.labels.iter().enumerate() {
        let im = fmt_fixed(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        let _ = writeln!(out, "  v{} [label=\"{}: {}{}{}i\"]", i + 1, i + 1, fmt_fixed(z.re), sign, im);
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  v{} -> v{}", a + 1, b + 1);
    }
    out.push_str("}\n");
    out
}

pub fn to_dot(g: &RepGraph, path: &Path) -> Result<(), GraphError> {
    std::fs::write(path, dot_string(g))?;
    Ok(())
}

#[cfg(test)]
mod tests;
