use crate::matkernel::{c, CMatrix};

use super::{verify, Rep};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereConstraint {
    /// `tr(sum_j X_j^2) / n`.
    pub nu: f64,
    /// `|sum_j X_j^2 - nu I|`.
    pub residual: f64,
    /// `max_i |sum_j X_j X_i X_j - (2 nu - mu_i)/2 X_i|` with measured `mu_i`.
    pub cross_check: f64,
    /// `residual <= tol * max(nu, 1)`.
    pub holds: bool,
}

pub fn check_sphere_constraint(r: &Rep, tol: f64) -> SphereConstraint {
    let n = r.size();
    let mats = r.matrices();
    let sum_sq = mats.iter().fold(CMatrix::zeros(n, n), |acc, x| acc + x * x);
    let nu = sum_sq.trace().re / n as f64;
    let residual = (&sum_sq - CMatrix::identity(n, n) * c(nu, 0.0)).norm();
    let mu = verify(r, tol).mu;
    let cross_check = mats
        .iter()
        .zip(&mu)
        .map(|(xi, &m)| {
            let sandwich = mats.iter().fold(CMatrix::zeros(n, n), |acc, xj| acc + xj * xi * xj);
            (sandwich - xi * c(0.5 * (2.0 * nu - m), 0.0)).norm()
        })
        .fold(0.0, f64::max);
    SphereConstraint { nu, residual, cross_check, holds: residual <= tol * nu.abs().max(1.0) }
}

/// Isomorphism class of the two-generator algebra `[[x,y],y] = lambda x`,
/// `[[y,x],x] = mu y`, given the parameters in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2Class {
    Sl2,
    Heisenberg,
    BianchiVII1,
}

pub fn classify_d2(lambda: f64, mu: f64) -> D2Class {
    match (lambda != 0.0, mu != 0.0) {
        (true, true) => D2Class::Sl2,
        (false, false) => D2Class::Heisenberg,
        _ => D2Class::BianchiVII1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fuzzy_torus, spin_matrices};

    #[test]
    fn spin_triple_casimir() {
        for n in 2..=6 {
            let (s1, s2, s3) = spin_matrices(n).unwrap();
            let r = Rep::new(vec![s1, s2, s3]).unwrap();
            let sc = check_sphere_constraint(&r, 1e-12);
            let casimir = (n * n - 1) as f64 / 4.0;
            assert!((sc.nu - casimir).abs() < 1e-12);
            assert!(sc.residual < 1e-12 && sc.holds);
            assert!(sc.cross_check < 1e-12);
        }
    }

    #[test]
    fn torus_sums_to_two() {
        for n in 3..=7 {
            let r = fuzzy_torus(n, 0.2, 0.9).unwrap().rep;
            let sc = check_sphere_constraint(&r, 1e-12);
            assert!((sc.nu - 2.0).abs() < 1e-12);
            assert!(sc.residual < 1e-12);
            assert!(sc.cross_check < 1e-12);
        }
    }

    #[test]
    fn zero_rep() {
        let sc = check_sphere_constraint(&Rep::zero(4, 2), 1e-12);
        assert_eq!((sc.nu, sc.residual, sc.cross_check), (0.0, 0.0, 0.0));
    }

    #[test]
    fn d2_classes() {
        assert_eq!(classify_d2(1.0, 1.0), D2Class::Sl2);
        assert_eq!(classify_d2(0.0, 0.0), D2Class::Heisenberg);
        assert_eq!(classify_d2(1.0, 0.0), D2Class::BianchiVII1);
        assert_eq!(classify_d2(0.0, -2.0), D2Class::BianchiVII1);
    }
}
