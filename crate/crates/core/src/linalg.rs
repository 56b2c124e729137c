//! Dense Hermitian helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type DenseMatrix = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

pub fn max_imag(m: &DenseMatrix) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.im.abs()))
}

pub fn real_part(m: &DenseMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub fn complexify(m: &DMatrix<f64>) -> DenseMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn hermitian_defect(m: &DenseMatrix) -> f64 {
    let d = m - m.adjoint();
    d.iter().fold(0.0, |a, z| a.max(z.norm()))
}

pub fn is_hermitian(m: &DenseMatrix, tol: f64) -> bool {
    m.is_square() && hermitian_defect(m) <= tol
}

/// Symmetrized copy, so that round-off asymmetry never reaches the eigensolver.
fn hermitize(m: &DenseMatrix) -> DenseMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn symmetric_eig(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let s = (m + m.transpose()).scale(0.5);
    let e = SymmetricEigen::new(s);
    (e.eigenvalues, e.eigenvectors)
}

pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> DVector<f64> {
    let s = (m + m.transpose()).scale(0.5);
    s.symmetric_eigenvalues()
}

/// Eigen-decomposition of a Hermitian matrix; real inputs take the real solver.
pub fn hermitian_eig(m: &DenseMatrix) -> (DVector<f64>, DenseMatrix) {
    if max_imag(m) == 0.0 {
        let (w, v) = symmetric_eig(&real_part(m));
        return (w, complexify(&v));
    }
    let e = SymmetricEigen::new(hermitize(m));
    (e.eigenvalues, e.eigenvectors)
}

/// Eigenvalues of a Hermitian matrix, unordered.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    if max_imag(m) == 0.0 {
        return symmetric_eigenvalues(&real_part(m)).iter().copied().collect();
    }
    hermitize(m).symmetric_eigenvalues().iter().copied().collect()
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(m: &DenseMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    hermitian_eigenvalues(&hermitize(m)).iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Spectral norm of an arbitrary matrix, as the root of the top eigenvalue of M†M.
pub fn spectral_norm(m: &DenseMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let g = if m.nrows() < m.ncols() { m * m.adjoint() } else { m.adjoint() * m };
    hermitian_norm(&g).max(0.0).sqrt()
}

/// `exp(-i tau h)` for Hermitian `h`.
pub fn expm_hermitian(h: &DenseMatrix, tau: f64) -> DenseMatrix {
    if h.nrows() == 0 {
        return h.clone();
    }
    if max_imag(h) == 0.0 {
        let (w, v) = symmetric_eig(&real_part(h));
        return phase_reconstruct(&w, &v, tau);
    }
    let (w, v) = hermitian_eig(h);
    let n = w.len();
    let mut left = v.clone();
    for k in 0..n {
        let ph = Complex64::from_polar(1.0, -tau * w[k]);
        for i in 0..n {
            left[(i, k)] *= ph;
        }
    }
    cmul(&left, &v.adjoint())
}

/// `V diag(exp(-i tau w)) V^T` for a real orthogonal `V`, assembled with real products.
pub fn phase_reconstruct(w: &DVector<f64>, v: &DMatrix<f64>, tau: f64) -> DenseMatrix {
    let n = w.len();
    let mut vc = v.clone();
    let mut vs = v.clone();
    for k in 0..n {
        let (s, c) = (-tau * w[k]).sin_cos();
        vc.column_mut(k).scale_mut(c);
        vs.column_mut(k).scale_mut(s);
    }
    let vt = v.transpose();
    let re = vc * &vt;
    let im = vs * &vt;
    DenseMatrix::from_fn(n, n, |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

/// Complex product through real matrix products.
pub fn cmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    DenseMatrix::from_fn(re.nrows(), re.ncols(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

pub fn unitarity_defect(u: &DenseMatrix) -> f64 {
    let n = u.nrows();
    let g = cmul(&u.adjoint(), u) - DenseMatrix::identity(n, n);
    hermitian_norm(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: u64) -> DenseMatrix {
        let mut x = seed;
        let mut next = move || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let m = DenseMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()));
        &m + m.adjoint()
    }

    #[test]
    fn eigen_reconstructs() {
        let m = sample(12, 3);
        let (w, v) = hermitian_eig(&m);
        let d = DenseMatrix::from_diagonal(&w.map(|x| Complex64::new(x, 0.0)));
        assert!((&v * d * v.adjoint() - &m).norm() < 1e-12);
        let mut w2 = hermitian_eigenvalues(&m);
        let mut w1: Vec<f64> = w.iter().copied().collect();
        w1.sort_by(|a, b| a.partial_cmp(b).unwrap());
        w2.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in w1.iter().zip(&w2) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn expm_matches_pade() {
        let m = sample(8, 5);
        let u = expm_hermitian(&m, 0.7);
        let reference = (m.map(|z| z * Complex64::new(0.0, -0.7))).exp();
        assert!((u - reference).norm() < 1e-12);
    }

    #[test]
    fn complex_product() {
        let a = sample(7, 1);
        let b = sample(7, 2);
        assert!((cmul(&a, &b) - &a * &b).norm() < 1e-13);
    }
}
