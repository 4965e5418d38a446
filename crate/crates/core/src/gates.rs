//! Standard qudit operators: shift, clock, discrete Fourier, swap, and the
//! controlled shift.
//!
//! Conventions, fixed once here and relied on everywhere else:
//! the shift acts as X|k> = |k+1 mod d>, the clock as Z|k> = w^k |k> with
//! w = exp(2 pi i / d), the Fourier matrix is unitary with entries
//! w^{kl} / sqrt(d), and two-qudit operators index the product basis
//! |m,n> = |m> (x) |n> at position m*d + n.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// exp(2 pi i k / order) with k reduced into [0, order).
pub fn root_of_unity(order: u64, k: i64) -> Complex64 {
    let kr = k.rem_euclid(order as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * kr / order as f64)
}

/// Cyclic shift X on one qudit: X|k> = |k+1 mod d>.
pub fn shift(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Clock Z on one qudit: Z|k> = w^k |k>.
pub fn clock(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            root_of_unity(d as u64, i as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Displacement X^a Z^b (integer exponents, reduced mod d).
pub fn displacement(d: usize, a: i64, b: i64) -> ComplexMatrix {
    let aa = a.rem_euclid(d as i64) as usize;
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + aa) % d {
            root_of_unity(d as u64, b * j as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Unitary discrete Fourier transform, entries w^{kl} / sqrt(d).
pub fn fourier(d: usize) -> ComplexMatrix {
    let s = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, d, |i, j| {
        root_of_unity(d as u64, (i * j) as i64) * s
    })
}

/// Swap of two qudits: S|m,n> = |n,m>.
pub fn swap_gate(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (m, n) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        if m == l && n == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Controlled shift sum_i |i><i| (x) X^i, the qudit generalization of CNOT.
pub fn controlled_shift(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (m, n) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        if m == k && n == (l + m) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_clock_are_unitary() {
        for d in 2..=7 {
            assert!(shift(d).is_unitary(1e-14));
            assert!(clock(d).is_unitary(1e-14));
            assert!(fourier(d).is_unitary(1e-13));
        }
    }

    #[test]
    fn clock_shift_commutation_phase() {
        for d in 2..=6 {
            let zx = clock(d).matmul(&shift(d));
            let xz = shift(d).matmul(&clock(d)).scale(root_of_unity(d as u64, 1));
            assert!(zx.max_abs_diff(&xz) < 1e-14);
        }
    }

    #[test]
    fn fourier_conjugates_shift_to_clock() {
        for d in 2..=6 {
            let f = fourier(d);
            let lhs = f.matmul(&shift(d)).matmul(&f.dagger());
            assert!(lhs.max_abs_diff(&clock(d)) < 1e-13);
        }
    }

    #[test]
    fn displacement_matches_explicit_powers() {
        for d in 2..=5 {
            let x = shift(d);
            let z = clock(d);
            let mut xa = ComplexMatrix::identity(d);
            for _ in 0..3 {
                xa = xa.matmul(&x);
            }
            let mut zb = ComplexMatrix::identity(d);
            for _ in 0..2 {
                zb = zb.matmul(&z);
            }
            assert!(displacement(d, 3, 2).max_abs_diff(&xa.matmul(&zb)) < 1e-13);
        }
    }

    #[test]
    fn displacement_negative_exponents_are_inverses() {
        for d in 2..=5 {
            let prod = displacement(d, 2, -1).matmul(&displacement(d, -2, 1));
            // X^a Z^b X^-a Z^-b is a pure phase times identity; fix it directly.
            let phase = root_of_unity(d as u64, 2);
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(d).scale(phase)) < 1e-14);
        }
    }

    #[test]
    fn controlled_shift_action_on_basis() {
        let d = 3;
        let p = controlled_shift(d);
        assert!(p.is_unitary(1e-14));
        // |2,1> maps to |2, (1+2) mod 3> = |2,0>.
        let mut v = vec![Complex64::new(0.0, 0.0); d * d];
        v[2 * d + 1] = Complex64::new(1.0, 0.0);
        let w = p.matvec(&v);
        assert_eq!(w[2 * d], Complex64::new(1.0, 0.0));
        assert_eq!(w.iter().map(|z| z.norm_sqr()).sum::<f64>(), 1.0);
    }

    #[test]
    fn swap_squares_to_identity() {
        let s = swap_gate(4);
        assert!(s.matmul(&s).max_abs_diff(&ComplexMatrix::identity(16)) < 1e-15);
    }
}
