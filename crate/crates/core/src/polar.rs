//! Polar projection onto the unitary group, plus the SVD and eigenvalue
//! helpers used by certification fingerprints.
//!
//! The nearest unitary to an invertible M in Frobenius distance is the
//! unitary polar factor W V^H, where M = W S V^H is the SVD. All dense
//! factorizations are delegated to faer, built single-threaded so that a
//! fixed input always produces bitwise-identical output; callers parallelize
//! across independent searches instead.

use faer::complex_native::c64;
use faer::Mat;
use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// Singular values at or below this are treated as numerically zero; the
/// polar factor is then no longer the unique nearest unitary.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Result of projecting a matrix onto the unitary group.
#[derive(Debug, Clone)]
pub struct PolarProjection {
    /// The unitary polar factor W V^H.
    pub unitary: ComplexMatrix,
    /// Singular values of the input, in descending order.
    pub singular_values: Vec<f64>,
    /// True when the smallest singular value is at most RANK_TOLERANCE.
    pub rank_deficient: bool,
}

fn to_faer(m: &ComplexMatrix) -> Mat<c64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| {
        let z = m[(i, j)];
        c64::new(z.re, z.im)
    })
}

/// Projects a square matrix onto the unitary group via its SVD.
pub fn polar_project(m: &ComplexMatrix) -> PolarProjection {
    assert_eq!(m.rows(), m.cols(), "polar projection of a non-square matrix");
    let n = m.rows();
    let svd = to_faer(m).svd();
    let u = svd.u();
    let v = svd.v();
    let s = svd.s_diagonal();
    let singular_values: Vec<f64> = (0..n).map(|i| s.read(i).re).collect();
    let rank_deficient = singular_values
        .iter()
        .any(|&sv| sv <= RANK_TOLERANCE);
    // W V^H, with V stored unconjugated by faer (A = U S V^H).
    let unitary = ComplexMatrix::from_fn(n, n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let w = u.read(i, k);
            let vh = v.read(j, k);
            acc += Complex64::new(w.re, w.im) * Complex64::new(vh.re, -vh.im);
        }
        acc
    });
    PolarProjection {
        unitary,
        singular_values,
        rank_deficient,
    }
}

/// Singular values of any rectangular matrix, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let svd = to_faer(m).svd();
    let s = svd.s_diagonal();
    (0..m.rows().min(m.cols())).map(|i| s.read(i).re).collect()
}

/// Eigenvalues of a square matrix, sorted by phase angle in [0, 2 pi).
pub fn eigenvalues_by_phase(m: &ComplexMatrix) -> Vec<Complex64> {
    assert_eq!(m.rows(), m.cols(), "eigenvalues of a non-square matrix");
    let ev: Vec<c64> = to_faer(m).eigenvalues();
    let mut out: Vec<Complex64> = ev.iter().map(|z| Complex64::new(z.re, z.im)).collect();
    out.sort_by(|a, b| {
        let pa = a.arg().rem_euclid(2.0 * std::f64::consts::PI);
        let pb = b.arg().rem_euclid(2.0 * std::f64::consts::PI);
        pa.partial_cmp(&pb).unwrap().then_with(|| {
            a.norm().partial_cmp(&b.norm()).unwrap()
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{clock, fourier, root_of_unity, swap_gate};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        })
    }

    #[test]
    fn polar_of_unitary_is_itself() {
        let f = fourier(5);
        let p = polar_project(&f);
        assert!(p.unitary.max_abs_diff(&f) < 1e-13);
        assert!(!p.rank_deficient);
        for sv in p.singular_values {
            assert!((sv - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn polar_factor_is_unitary_and_leaves_hermitian_psd_remainder() {
        for seed in 0..4 {
            let m = random_matrix(9, seed);
            let p = polar_project(&m);
            assert!(p.unitary.is_unitary(1e-12));
            // H = W^H M must be Hermitian positive semidefinite.
            let h = p.unitary.dagger().matmul(&m);
            assert!(h.max_abs_diff(&h.dagger()) < 1e-12);
            for ev in eigenvalues_by_phase(&h) {
                assert!(ev.im.abs() < 1e-10);
                assert!(ev.re > -1e-10);
            }
        }
    }

    #[test]
    fn polar_factor_is_closer_than_reference_unitaries() {
        let m = random_matrix(4, 42);
        let p = polar_project(&m);
        let best = (&m - &p.unitary).frobenius_norm();
        for q in [ComplexMatrix::identity(4), fourier(4), swap_gate(2)] {
            assert!(best <= (&m - &q).frobenius_norm() + 1e-12);
        }
    }

    #[test]
    fn rank_deficiency_is_flagged() {
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(2.0, 0.0);
        let p = polar_project(&m);
        assert!(p.rank_deficient);
        assert!((p.singular_values[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_clock_are_roots_of_unity() {
        let d = 5;
        let ev = eigenvalues_by_phase(&clock(d));
        for (k, z) in ev.iter().enumerate() {
            assert!((z - root_of_unity(d as u64, k as i64)).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_values_of_identity() {
        for sv in singular_values(&ComplexMatrix::identity(6)) {
            assert!((sv - 1.0).abs() < 1e-14);
        }
    }
}
