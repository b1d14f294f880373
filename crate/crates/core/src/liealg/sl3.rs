use std::f64::consts::PI;

use crate::matkernel::{c, CMatrix, C64};

use super::roots::{sl_n_basis, Root, RootDatum};
use super::LieError;

/// Images of the `sl_3` Cartan and root vectors in some representation.
/// Simple roots are `alpha = (0,1)` and `beta = (1,2)`.
#[derive(Debug, Clone)]
pub struct Sl3Rep {
    pub h_alpha: CMatrix,
    pub h_beta: CMatrix,
    pub e_alpha: CMatrix,
    pub e_beta: CMatrix,
    pub e_alpha_beta: CMatrix,
    pub f_alpha: CMatrix,
    pub f_beta: CMatrix,
    pub f_alpha_beta: CMatrix,
}

pub const ALPHA: Root = Root { i: 0, j: 1 };
pub const BETA: Root = Root { i: 1, j: 2 };
pub const ALPHA_BETA: Root = Root { i: 0, j: 2 };

impl Sl3Rep {
    pub fn dim(&self) -> usize {
        self.h_alpha.nrows()
    }

    /// Applies `map` to every defining-representation generator.
    fn from_defining(map: impl Fn(&CMatrix) -> CMatrix) -> Sl3Rep {
        let d = sl_n_basis(3).expect("rank 3");
        Sl3Rep {
            h_alpha: map(&d.h(ALPHA)),
            h_beta: map(&d.h(BETA)),
            e_alpha: map(&d.e(ALPHA)),
            e_beta: map(&d.e(BETA)),
            e_alpha_beta: map(&d.e(ALPHA_BETA)),
            f_alpha: map(&d.e(ALPHA.neg())),
            f_beta: map(&d.e(BETA.neg())),
            f_alpha_beta: map(&d.e(ALPHA_BETA.neg())),
        }
    }

    pub fn defining() -> Sl3Rep {
        Sl3Rep::from_defining(|m| m.clone())
    }

    /// `(name, matrix)` for all eight generators.
    pub fn generators(&self) -> [(&'static str, &CMatrix); 8] {
        [
            ("h_alpha", &self.h_alpha),
            ("h_beta", &self.h_beta),
            ("e_alpha", &self.e_alpha),
            ("e_beta", &self.e_beta),
            ("e_alpha_beta", &self.e_alpha_beta),
            ("e_-alpha", &self.f_alpha),
            ("e_-beta", &self.f_beta),
            ("e_-alpha_beta", &self.f_alpha_beta),
        ]
    }
}

/// Monomials `x1^a1 x2^a2 x3^a3` with `a1+a2+a3 = n`, lexicographically
/// descending (highest weight first).
pub fn sym_power_basis(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for a1 in (0..=n).rev() {
        for a2 in (0..=n - a1).rev() {
            out.push([a1, a2, n - a1 - a2]);
        }
    }
    out
}

/// Derivation action of a `3x3` matrix on `Sym^n(C^3)` in the orthonormal
/// occupation basis: `E_ij |a> = sqrt(a_j (a_i + 1)) |a - e_j + e_i>`.
/// Adjoints are preserved.
pub fn sym_power_matrix(x: &CMatrix, n: usize) -> CMatrix {
    let basis = sym_power_basis(n);
    let index = |a: &[usize; 3]| basis.iter().position(|b| b == a).expect("basis monomial");
    let dim = basis.len();
    let mut out = CMatrix::zeros(dim, dim);
    for (col, a) in basis.iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let xij = x[(i, j)];
                if xij == c(0.0, 0.0) || a[j] == 0 {
                    continue;
                }
                let mut b = *a;
                b[j] -= 1;
                b[i] += 1;
                let amp = ((a[j] * (b[i])) as f64).sqrt();
                out[(index(&b), col)] += xij * amp;
            }
        }
    }
    out
}

/// Representation of highest weight `n w1` (dimension `(n+1)(n+2)/2`).
pub fn sym_power_rep(n: usize) -> Result<Sl3Rep, LieError> {
    if n == 0 {
        return Err(LieError::TrivialPower);
    }
    Ok(Sl3Rep::from_defining(|m| sym_power_matrix(m, n)))
}

#[derive(Debug, Clone)]
pub struct Sl3Generators {
    pub theta: f64,
    pub thetap: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub t1: CMatrix,
    pub s1: CMatrix,
    pub t2: CMatrix,
    pub s2: CMatrix,
}

impl Sl3Generators {
    /// Hermitian coordinates `(x1, x2, x3, x4)` with `t_k = x_{2k-1} + i x_{2k}`
    /// and `s_k = x_{2k-1} - i x_{2k}`.
    pub fn hermitian_coordinates(&self) -> [CMatrix; 4] {
        let half = c(0.5, 0.0);
        let minus_half_i = c(0.0, -0.5);
        [
            (&self.t1 + &self.s1) * half,
            (&self.t1 - &self.s1) * minus_half_i,
            (&self.t2 + &self.s2) * half,
            (&self.t2 - &self.s2) * minus_half_i,
        ]
    }
}

fn phase(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

/// `t1 = e^{i theta}(h_a + e^{i pi/3} h_b)`,
/// `t2 = e^{i theta'}(e_a + e^{i phi1} e_b + e^{i phi2} e_{-a-b})`, and
/// `s1`, `s2` the conjugate-phase partners.
pub fn sl3_dmsa(theta: f64, thetap: f64, phi1: f64, phi2: f64, rep: &Sl3Rep) -> Sl3Generators {
    let t1 = (&rep.h_alpha + &rep.h_beta * phase(PI / 3.0)) * phase(theta);
    let s1 = (&rep.h_alpha + &rep.h_beta * phase(-PI / 3.0)) * phase(-theta);
    let t2 = (&rep.e_alpha + &rep.e_beta * phase(phi1) + &rep.f_alpha_beta * phase(phi2)) * phase(thetap);
    let s2 = (&rep.f_alpha + &rep.f_beta * phase(-phi1) + &rep.e_alpha_beta * phase(-phi2)) * phase(-thetap);
    Sl3Generators { theta, thetap, phi1, phi2, t1, s1, t2, s2 }
}

/// Killing-orthonormal Cartan pair `h1 = h_a / l`, `h2 = (h_a + 2 h_b)/(l sqrt 3)`.
pub fn orthonormal_cartan(datum: &RootDatum) -> Result<(CMatrix, CMatrix), LieError> {
    if datum.n() != 3 {
        return Err(LieError::NotSl3 { n: datum.n() });
    }
    let l = datum.l2.sqrt();
    let ha = datum.h(ALPHA);
    let hb = datum.h(BETA);
    let h1 = &ha * c(1.0 / l, 0.0);
    let h2 = (&ha + &hb * c(2.0, 0.0)) * c(1.0 / (l * 3f64.sqrt()), 0.0);
    Ok((h1, h2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::{comm, double_comm, eig};

    const TOL: f64 = 1e-10;

    #[test]
    fn dmsa_eigenrelations_defining() {
        let rep = Sl3Rep::defining();
        let l2 = sl_n_basis(3).unwrap().l2;
        let g = sl3_dmsa(0.0, 0.0, 0.0, 0.0, &rep);
        let lhs1 = comm(&comm(&g.t1, &g.t2), &g.s2);
        assert!((&lhs1 - &g.t1 * c(1.5 * l2, 0.)).norm() < TOL);
        assert!((&lhs1 - &g.t1 * c(0.5, 0.)).norm() < TOL);
        let lhs2 = comm(&comm(&g.t2, &g.t1), &g.s1);
        assert!((&lhs2 - &g.t2 * c(0.75 * l2 * l2, 0.)).norm() < TOL);
        assert!((&lhs2 - &g.t2 * c(1.0 / 12.0, 0.)).norm() < TOL);
        assert_eq!(comm(&g.t1, &g.s1).norm(), 0.0);
    }

    #[test]
    fn companion_identities_generic_angles() {
        let l2 = 1.0 / 3.0;
        for n in 1..=3 {
            let rep = sym_power_rep(n).unwrap();
            let g = sl3_dmsa(0.4, -1.1, 0.3, 2.2, &rep);
            let mu1 = c(1.5 * l2, 0.);
            let mu2 = c(0.75 * l2 * l2, 0.);
            assert!((comm(&comm(&g.s1, &g.t2), &g.s2) - &g.s1 * mu1).norm() < TOL);
            assert!((comm(&comm(&g.s2, &g.t1), &g.s1) - &g.s2 * mu2).norm() < TOL);
            assert!((comm(&comm(&g.t1, &g.s2), &g.t2) - &g.t1 * mu1).norm() < TOL);
            assert!((comm(&comm(&g.t2, &g.s1), &g.t1) - &g.t2 * mu2).norm() < TOL);
            assert!(comm(&g.t2, &g.s2).norm() < TOL);
            assert!((g.t1.adjoint() - &g.s1).norm() < TOL);
            assert!((g.t2.adjoint() - &g.s2).norm() < TOL);
            // Coordinates satisfy the real eigenrelations.
            let x = g.hermitian_coordinates();
            let mus = [0.5, 0.5, 1.0 / 12.0, 1.0 / 12.0];
            for (i, xi) in x.iter().enumerate() {
                let delta = x.iter().fold(CMatrix::zeros(rep.dim(), rep.dim()), |acc, xj| acc + double_comm(xi, xj));
                assert!((delta - xi * c(mus[i], 0.)).norm() < TOL);
            }
        }
    }

    #[test]
    fn sym_power_dimensions_and_brackets() {
        assert_eq!(sym_power_rep(1).unwrap().dim(), 3);
        assert_eq!(sym_power_rep(2).unwrap().dim(), 6);
        assert_eq!(sym_power_rep(3).unwrap().dim(), 10);
        let def = Sl3Rep::defining();
        let p1 = sym_power_rep(1).unwrap();
        for ((_, a), (_, b)) in def.generators().iter().zip(p1.generators().iter()) {
            assert!((*a - *b).norm() < 1e-15);
        }
        for n in 2..=4 {
            let gens: Vec<CMatrix> = def.generators().iter().map(|(_, m)| (*m).clone()).collect();
            for a in &gens {
                for b in &gens {
                    let lhs = comm(&sym_power_matrix(a, n), &sym_power_matrix(b, n));
                    let rhs = sym_power_matrix(&comm(a, b), n);
                    assert!((lhs - rhs).norm() < TOL);
                }
                assert!((sym_power_matrix(&a.adjoint(), n) - sym_power_matrix(a, n).adjoint()).norm() < 1e-14);
            }
        }
    }

    /// Weights of `Sym^n` as eigenvalues of `t1`: the weight of monomial `a`
    /// on `h = diag(h0,h1,h2)` is `sum_k a_k h_k`.
    #[test]
    fn t1_spectrum_is_rotated_weight_diagram() {
        let n = 2;
        let theta = 0.37;
        let def = Sl3Rep::defining();
        let t1_def = sl3_dmsa(theta, 0., 0., 0., &def).t1;
        let mut expected: Vec<C64> =
            sym_power_basis(n).iter().map(|a| (0..3).map(|k| t1_def[(k, k)] * a[k] as f64).sum()).collect();
        let rep = sym_power_rep(n).unwrap();
        let t1 = sl3_dmsa(theta, 0., 0., 0., &rep).t1;
        let mut got = eig(&t1, 1e-12).unwrap().values;
        let key = |z: &C64| crate::matkernel::sort_key(*z, 1e-9);
        expected.sort_by_key(key);
        got.sort_by_key(key);
        for (e, g) in expected.iter().zip(&got) {
            assert!((e - g).norm() < 1e-12);
        }
        for w in got.windows(2) {
            assert!((w[0] - w[1]).norm() > 1e-3);
        }
    }

    #[test]
    fn orthonormal_cartan_reconstructs_t1() {
        let d = sl_n_basis(3).unwrap();
        let (h1, h2) = orthonormal_cartan(&d).unwrap();
        assert!((d.killing(&h1, &h1) - c(1., 0.)).norm() < 1e-12);
        assert!((d.killing(&h2, &h2) - c(1., 0.)).norm() < 1e-12);
        assert!(d.killing(&h1, &h2).norm() < 1e-12);
        let l = d.l2.sqrt();
        for theta in [0.0, 0.9] {
            let rebuilt = (&h1 + &h2 * c(0., 1.)) * (phase(theta - PI / 6.0) * (l * 3f64.sqrt() / 2.0));
            let t1 = sl3_dmsa(theta, 0., 0., 0., &Sl3Rep::defining()).t1;
            assert!((rebuilt - t1).norm() < 1e-12);
        }
        assert!(matches!(orthonormal_cartan(&sl_n_basis(4).unwrap()), Err(LieError::NotSl3 { n: 4 })));
    }
}
