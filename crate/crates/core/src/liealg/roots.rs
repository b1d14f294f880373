use crate::matkernel::{c, comm, frobenius_inner, CMatrix, C64};

use super::LieError;

/// Root `eps_i - eps_j` of `sl_n` (0-based, `i != j`). Positive when `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "a root needs distinct indices");
        Root { i, j }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn neg(&self) -> Root {
        Root { i: self.j, j: self.i }
    }

    /// Coordinates in the `eps` basis of `R^n`.
    pub fn vector(&self, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        v[self.i] += 1;
        v[self.j] -= 1;
        v
    }

    /// Parses a weight vector back into a root if it is one.
    pub fn from_vector(v: &[i32]) -> Option<Root> {
        let plus: Vec<usize> = v.iter().enumerate().filter(|(_, &x)| x == 1).map(|(k, _)| k).collect();
        let minus: Vec<usize> = v.iter().enumerate().filter(|(_, &x)| x == -1).map(|(k, _)| k).collect();
        let rest = v.iter().filter(|&&x| x != 0 && x != 1 && x != -1).count();
        (plus.len() == 1 && minus.len() == 1 && rest == 0).then(|| Root::new(plus[0], minus[0]))
    }

    /// `self + other` when it is a root.
    pub fn add(&self, other: &Root, n: usize) -> Option<Root> {
        let v: Vec<i32> = self.vector(n).iter().zip(other.vector(n)).map(|(a, b)| a + b).collect();
        Root::from_vector(&v)
    }

    /// `alpha(h) = h_ii - h_jj` for diagonal (Cartan) `h`.
    pub fn eval(&self, h: &CMatrix) -> C64 {
        h[(self.i, self.i)] - h[(self.j, self.j)]
    }
}

/// `sl_n` in its defining representation with `K(x, y) = 2n tr(xy)`,
/// `e_alpha = E_ij / sqrt(2n)` and `h_alpha` the Killing dual of `alpha`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    n: usize,
    positive: Vec<Root>,
    /// Common squared root length `alpha(h_alpha)`.
    pub l2: f64,
}

impl RootDatum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn roots(&self) -> Vec<Root> {
        self.positive.iter().flat_map(|r| [*r, r.neg()]).collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.n - 1).map(|k| Root::new(k, k + 1)).collect()
    }

    pub fn e(&self, r: Root) -> CMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        m[(r.i, r.j)] = c(1.0 / (2.0 * self.n as f64).sqrt(), 0.0);
        m
    }

    /// `h_alpha = [e_alpha, e_-alpha]`; `h_-alpha = -h_alpha`.
    pub fn h(&self, r: Root) -> CMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        let s = 1.0 / (2.0 * self.n as f64);
        m[(r.i, r.i)] = c(s, 0.0);
        m[(r.j, r.j)] = c(-s, 0.0);
        m
    }

    pub fn killing(&self, x: &CMatrix, y: &CMatrix) -> C64 {
        (x * y).trace() * c(2.0 * self.n as f64, 0.0)
    }

    /// `(alpha, beta) = K(h_alpha, h_beta)`.
    pub fn inner(&self, a: Root, b: Root) -> f64 {
        self.killing(&self.h(a), &self.h(b)).re
    }

    /// `N(alpha, beta)` read off `[e_alpha, e_beta] = N e_{alpha+beta}`;
    /// zero when `alpha + beta` is not a root.
    pub fn structure_constant(&self, a: Root, b: Root) -> C64 {
        match a.add(&b, self.n) {
            None => c(0.0, 0.0),
            Some(s) => {
                let bracket = comm(&self.e(a), &self.e(b));
                let target = self.e(s);
                frobenius_inner(&target, &bracket) / frobenius_inner(&target, &target)
            }
        }
    }
}

/// Root datum of `sl_n`; the squared root length is computed from the
/// Killing form.
pub fn sl_n_basis(n: usize) -> Result<RootDatum, LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall { n });
    }
    let mut positive = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            positive.push(Root::new(i, j));
        }
    }
    let mut datum = RootDatum { n, positive, l2: 0.0 };
    let a = datum.positive[0];
    datum.l2 = a.eval(&datum.h(a)).re;
    Ok(datum)
}

/// Compact-form pair `e+ = i c (e_a + e_-a)`, `e- = c (e_a - e_-a)`; both
/// anti-Hermitian.
pub fn compact_elements(datum: &RootDatum, alpha: Root, scale: f64) -> (CMatrix, CMatrix) {
    let (ep, em) = (datum.e(alpha), datum.e(alpha.neg()));
    let plus = (&ep + &em) * c(0.0, scale);
    let minus = (&ep - &em) * c(scale, 0.0);
    (plus, minus)
}
