//! Two-qudit operators, their rearrangements, and the associated four-party
//! pure state.
//!
//! A two-qudit operator U on C^d (x) C^d is stored as a d^2 x d^2 matrix over
//! the product basis |m,n> = |m>(x)|n> at row m*d + n. Two index
//! rearrangements drive everything in this crate:
//!
//!   realign:           <mn| U^R |kl> = <mk| U |nl>
//!   partial transpose: <mn| U^G |kl> = <ml| U |kn>
//!
//! U is dual (unitary in the transfer direction) iff U^R is unitary, and
//! T-dual iff U^G is unitary; an operator with all three of U, U^R, U^G
//! unitary is 2-unitary and its four-party state is absolutely maximally
//! entangled. The vectorized state has amplitudes psi[m,n,k,l] =
//! U[(m,n),(k,l)] / d, and its three balanced-cut marginals are reachable
//! either by brute-force partial trace or through the Gram matrices of
//! U, U^R, U^G; both routes are implemented so they can cross-check each
//! other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Balanced two-vs-two groupings of the four state parties (1,2 = row
/// indices, 3,4 = column indices), named by the partner of party 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    /// Parties {1,2} vs {3,4}; marginal is I/d^2 iff U is unitary.
    FirstSecond,
    /// Parties {1,3} vs {2,4}; marginal is I/d^2 iff U^R is unitary.
    FirstThird,
    /// Parties {1,4} vs {2,3}; marginal is I/d^2 iff U^G is unitary.
    FirstFourth,
}

impl Bipartition {
    /// All three balanced bipartitions.
    pub const ALL: [Bipartition; 3] = [
        Bipartition::FirstSecond,
        Bipartition::FirstThird,
        Bipartition::FirstFourth,
    ];

    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Bipartition::FirstSecond => "12|34",
            Bipartition::FirstThird => "13|24",
            Bipartition::FirstFourth => "14|23",
        }
    }
}

/// A two-qudit operator (not necessarily unitary) on C^d (x) C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl BipartiteOperator {
    /// Wraps a square matrix whose side is a perfect square d^2, d >= 2.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let side = matrix.rows();
        matrix.expect_square(side)?;
        let d = (side as f64).sqrt().round() as usize;
        if d * d != side {
            return Err(Error::NotPerfectSquare(side));
        }
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Self { d, matrix })
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The underlying d^2 x d^2 matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Consumes the wrapper, returning the matrix.
    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Realignment U^R: <mn|U^R|kl> = <mk|U|nl>.
    pub fn realign(&self) -> ComplexMatrix {
        let d = self.d;
        ComplexMatrix::from_fn(d * d, d * d, |r, c| {
            let (m, n) = (r / d, r % d);
            let (k, l) = (c / d, c % d);
            self.matrix[(m * d + k, n * d + l)]
        })
    }

    /// Partial transpose U^G: <mn|U^G|kl> = <ml|U|kn>.
    pub fn partial_transpose(&self) -> ComplexMatrix {
        let d = self.d;
        ComplexMatrix::from_fn(d * d, d * d, |r, c| {
            let (m, n) = (r / d, r % d);
            let (k, l) = (c / d, c % d);
            self.matrix[(m * d + l, k * d + n)]
        })
    }

    /// Unitarity deviation of U itself.
    pub fn unitarity_deviation(&self) -> f64 {
        self.matrix.deviation_from_unitarity()
    }

    /// Unitarity deviation of the realignment U^R (zero iff U is dual).
    pub fn realign_deviation(&self) -> f64 {
        self.realign().deviation_from_unitarity()
    }

    /// Unitarity deviation of the partial transpose U^G (zero iff U is T-dual).
    pub fn partial_transpose_deviation(&self) -> f64 {
        self.partial_transpose().deviation_from_unitarity()
    }

    /// The normalized four-party state with amplitudes U[(m,n),(k,l)] / d.
    pub fn to_state(&self) -> FourPartyState {
        let d = self.d;
        let scale = 1.0 / d as f64;
        let mut amps = Vec::with_capacity(d * d * d * d);
        for r in 0..d * d {
            for c in 0..d * d {
                amps.push(self.matrix[(r, c)] * scale);
            }
        }
        FourPartyState { d, amps }
    }

    /// Marginal of the given bipartition computed from the Gram matrix of the
    /// matching rearrangement, normalized so a 2-unitary gives exactly I/d^2.
    pub fn marginal_from_rearrangement(&self, cut: Bipartition) -> ComplexMatrix {
        let m = match cut {
            Bipartition::FirstSecond => self.matrix.clone(),
            Bipartition::FirstThird => self.realign(),
            Bipartition::FirstFourth => self.partial_transpose(),
        };
        let scale = 1.0 / (self.d * self.d) as f64;
        m.matmul(&m.dagger()).scale(Complex64::new(scale, 0.0))
    }
}

/// A pure state of four qudits, amplitudes indexed psi[m,n,k,l] at
/// ((m*d + n)*d + k)*d + l.
#[derive(Debug, Clone, PartialEq)]
pub struct FourPartyState {
    d: usize,
    amps: Vec<Complex64>,
}

impl FourPartyState {
    /// Builds a state from raw amplitudes of length d^4.
    pub fn new(d: usize, amps: Vec<Complex64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let expected = d * d * d * d;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: amps.len(),
            });
        }
        Ok(Self { d, amps })
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Flat amplitude slice.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude psi[m,n,k,l].
    pub fn amp(&self, m: usize, n: usize, k: usize, l: usize) -> Complex64 {
        let d = self.d;
        self.amps[((m * d + n) * d + k) * d + l]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.d, other.d, "state dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean distance between amplitude vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.d, other.d, "state dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Applies a (x) b (x) c (x) e without ever forming the d^4 x d^4 matrix.
    pub fn apply_local(&self, ops: [&ComplexMatrix; 4]) -> Self {
        let d = self.d;
        for op in &ops {
            assert_eq!((op.rows(), op.cols()), (d, d), "local operator must be d x d");
        }
        let mut cur = self.amps.clone();
        // Axis strides for indices (m, n, k, l) in the flat layout.
        let strides = [d * d * d, d * d, d, 1];
        for (axis, op) in ops.iter().enumerate() {
            let stride = strides[axis];
            let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
            for (flat, value) in cur.iter().enumerate() {
                if *value == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let s = (flat / stride) % d;
                let base = flat - s * stride;
                for i in 0..d {
                    let w = op[(i, s)];
                    if w != Complex64::new(0.0, 0.0) {
                        next[base + i * stride] += w * value;
                    }
                }
            }
            cur = next;
        }
        Self { d, amps: cur }
    }

    /// Brute-force partial trace onto the two parties of `cut` that include
    /// party 1, summing explicitly over the complementary pair.
    pub fn reduced_density(&self, cut: Bipartition) -> ComplexMatrix {
        let d = self.d;
        let mut rho = ComplexMatrix::zeros(d * d, d * d);
        match cut {
            Bipartition::FirstSecond => {
                for m in 0..d {
                    for n in 0..d {
                        for mp in 0..d {
                            for np in 0..d {
                                let mut s = Complex64::new(0.0, 0.0);
                                for k in 0..d {
                                    for l in 0..d {
                                        s += self.amp(m, n, k, l) * self.amp(mp, np, k, l).conj();
                                    }
                                }
                                rho[(m * d + n, mp * d + np)] = s;
                            }
                        }
                    }
                }
            }
            Bipartition::FirstThird => {
                for m in 0..d {
                    for k in 0..d {
                        for mp in 0..d {
                            for kp in 0..d {
                                let mut s = Complex64::new(0.0, 0.0);
                                for n in 0..d {
                                    for l in 0..d {
                                        s += self.amp(m, n, k, l) * self.amp(mp, n, kp, l).conj();
                                    }
                                }
                                rho[(m * d + k, mp * d + kp)] = s;
                            }
                        }
                    }
                }
            }
            Bipartition::FirstFourth => {
                for m in 0..d {
                    for l in 0..d {
                        for mp in 0..d {
                            for lp in 0..d {
                                let mut s = Complex64::new(0.0, 0.0);
                                for n in 0..d {
                                    for k in 0..d {
                                        s += self.amp(m, n, k, l) * self.amp(mp, n, k, lp).conj();
                                    }
                                }
                                rho[(m * d + l, mp * d + lp)] = s;
                            }
                        }
                    }
                }
            }
        }
        rho
    }
}

/// Frobenius distance of a density matrix from the maximally mixed I/side.
pub fn distance_from_maximally_mixed(rho: &ComplexMatrix) -> f64 {
    let side = rho.rows();
    let mixed = ComplexMatrix::identity(side).scale(Complex64::new(1.0 / side as f64, 0.0));
    (rho - &mixed).frobenius_norm()
}
