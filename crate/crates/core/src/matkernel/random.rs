use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{c, CMatrix, RMatrix};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed real orthogonal matrix (QR of a Gaussian matrix with
/// the sign of `R`'s diagonal folded back into `Q`).
pub fn random_orthogonal(d: usize, seed: u64) -> RMatrix {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = rng_from_seed(seed);
    let g = RMatrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Haar-distributed unitary matrix.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = rng_from_seed(seed);
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        c(re, im)
    });
    let (mut q, r) = g.qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Random Hermitian matrix with standard normal entries (GUE-like).
pub fn random_hermitian<R: rand::Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    });
    (&g + g.adjoint()) * c(0.5, 0.0)
}
