//! Bipartite unitaries built from phase arrays: the maximally entangled
//! eigenbasis form, the Schmidt (Fourier-dual) form, the controlled-gate
//! decomposition, the flattened complex-Hadamard variant, and the swap
//! gate's phase vector.
//!
//! The basis states |Phi_ab> are row vectorizations of (1/sqrt d) Z^a X^-b;
//! the gate of a phase array L is U(L) = sum L[a,b] |Phi_ab><Phi_ab|. In the
//! computational basis U(L) is supported on the d diagonal blocks where the
//! column-index difference matches the row-index difference mod d, with
//! entries U[(m,n),(k,l)] = (1/d) sum_a L[a, n-m] w^(a(m-k)) on the block
//! n-m = l-k. Equivalent forms implemented here and tested against each
//! other:
//!
//!   Schmidt:    U = (1/d) sum F(L)[a,b] (X^a Z^b) (x) (X^a Z^b)^*
//!   controlled: U = P (F (x) I) D(L) (F^H (x) I) P^T
//!   symmetric:  U' = P (F (x) I) D(L) (F (x) I) P
//!
//! with P the controlled shift and D(L) = diag(L[a,b]) at index a*d+b.
//! Conjugating a d=6 2-unitary U(L) by one more Fourier layer flattens every
//! entry to modulus 1/6, giving a 2-unitary complex Hadamard matrix.

use num_complex::Complex64;

use crate::bipartite::BipartiteOperator;
use crate::error::Result;
use crate::gates::{controlled_shift, displacement, fourier, root_of_unity};
use crate::matrix::ComplexMatrix;
use crate::phase::PhaseArray;

/// The d^2 maximally entangled basis states |Phi_ab>.
#[derive(Debug, Clone)]
pub struct MaxEntBasis {
    d: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl MaxEntBasis {
    /// Builds the basis for local dimension d.
    pub fn new(d: usize) -> Self {
        let mut vectors = Vec::with_capacity(d * d);
        let scale = 1.0 / (d as f64).sqrt();
        for a in 0..d {
            for b in 0..d {
                let mut v = vec![Complex64::new(0.0, 0.0); d * d];
                for i in 0..d {
                    let j = (i + b) % d;
                    v[i * d + j] = root_of_unity(d as u64, (a * i) as i64) * scale;
                }
                vectors.push(v);
            }
        }
        Self { d, vectors }
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Basis state |Phi_ab> as a dense d^2-vector.
    pub fn vector(&self, a: usize, b: usize) -> &[Complex64] {
        &self.vectors[a * self.d + b]
    }

    /// Gram matrix of the basis; identity iff the basis is orthonormal.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.d * self.d;
        ComplexMatrix::from_fn(n, n, |r, c| {
            self.vectors[r]
                .iter()
                .zip(&self.vectors[c])
                .map(|(x, y)| x.conj() * y)
                .sum()
        })
    }

    /// Single-site marginal of one basis state; I/d iff maximally entangled.
    pub fn first_site_marginal(&self, a: usize, b: usize) -> ComplexMatrix {
        let d = self.d;
        let v = self.vector(a, b);
        ComplexMatrix::from_fn(d, d, |m, mp| {
            (0..d).map(|n| v[m * d + n] * v[mp * d + n].conj()).sum()
        })
    }
}

/// The gate U(L) = sum L[a,b] |Phi_ab><Phi_ab| via its closed block form.
pub fn build_diagonal_unitary(arr: &PhaseArray) -> BipartiteOperator {
    let d = arr.d();
    // block_dft[c][j] = (1/d) sum_a L[a,c] w^(a j): entry value on block c
    // at row-column offset j = (m - k) mod d.
    let mut block_dft = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for (c, block) in block_dft.iter_mut().enumerate() {
        for (j, value) in block.iter_mut().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for a in 0..d {
                s += arr.entry(a, c) * root_of_unity(d as u64, (a * j) as i64);
            }
            *value = s / d as f64;
        }
    }
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for (c, block) in block_dft.iter().enumerate() {
        for row in 0..d {
            for col in 0..d {
                let r = row * d + (row + c) % d;
                let q = col * d + (col + c) % d;
                m[(r, q)] = block[(row + d - col) % d];
            }
        }
    }
    BipartiteOperator::new(m).expect("square of side d^2 by construction")
}

/// The Schmidt data of U(L): the 2D Fourier transform of L, whose moduli are
/// the Schmidt coefficients of the gate across the realigned cut.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    d: usize,
    transform: Vec<Complex64>,
}

impl SchmidtForm {
    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The transformed array F(L), row-major.
    pub fn transform(&self) -> &[Complex64] {
        &self.transform
    }

    /// Schmidt coefficients |F(L)[a,b]|, row-major (unsorted).
    pub fn coefficients(&self) -> Vec<f64> {
        self.transform.iter().map(|z| z.norm()).collect()
    }

    /// Rebuilds the gate as (1/d) sum F(L)[a,b] (X^a Z^b) (x) (X^a Z^b)^*.
    pub fn reconstruct(&self) -> BipartiteOperator {
        let d = self.d;
        let mut m = ComplexMatrix::zeros(d * d, d * d);
        for a in 0..d {
            for b in 0..d {
                let op = displacement(d, a as i64, b as i64);
                let term = op.kron(&op.conj());
                let coeff = self.transform[a * d + b] / d as f64;
                m = &m + &term.scale(coeff);
            }
        }
        BipartiteOperator::new(m).expect("square by construction")
    }
}

/// Computes the Schmidt form of the gate of a phase array.
pub fn schmidt_form(arr: &PhaseArray) -> SchmidtForm {
    SchmidtForm {
        d: arr.d(),
        transform: arr.fourier_transform(),
    }
}

/// The factors of U(L) = P (F (x) I) D(L) (F^H (x) I) P^T.
#[derive(Debug, Clone)]
pub struct ControlledDecomposition {
    d: usize,
    diagonal: Vec<Complex64>,
}

impl ControlledDecomposition {
    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The controlled-shift factor P.
    pub fn controlled_shift_factor(&self) -> ComplexMatrix {
        controlled_shift(self.d)
    }

    /// The Fourier layer F (x) I.
    pub fn fourier_layer(&self) -> ComplexMatrix {
        fourier(self.d).kron(&ComplexMatrix::identity(self.d))
    }

    /// Diagonal entries of D(L): L[a,b] at index a*d + b.
    pub fn diagonal(&self) -> &[Complex64] {
        &self.diagonal
    }

    /// The diagonal factor D(L) as a matrix.
    pub fn diagonal_factor(&self) -> ComplexMatrix {
        let n = self.diagonal.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &z) in self.diagonal.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Multiplies the factors back together.
    pub fn recompose(&self) -> BipartiteOperator {
        let p = self.controlled_shift_factor();
        let f = self.fourier_layer();
        let m = p
            .matmul(&f)
            .matmul(&self.diagonal_factor())
            .matmul(&f.dagger())
            .matmul(&p.transpose());
        BipartiteOperator::new(m).expect("square by construction")
    }
}

/// Decomposes the gate of a phase array into controlled-gate factors.
pub fn controlled_decomposition(arr: &PhaseArray) -> ControlledDecomposition {
    ControlledDecomposition {
        d: arr.d(),
        diagonal: arr.entries().to_vec(),
    }
}

/// The symmetric circuit variant U'(L) = P (F (x) I) D(L) (F (x) I) P.
pub fn symmetric_variant(arr: &PhaseArray) -> BipartiteOperator {
    let dec = controlled_decomposition(arr);
    let p = dec.controlled_shift_factor();
    let f = dec.fourier_layer();
    let m = p
        .matmul(&f)
        .matmul(&dec.diagonal_factor())
        .matmul(&f)
        .matmul(&p);
    BipartiteOperator::new(m).expect("square by construction")
}

/// Which side carries the extra Fourier layer in the Hadamard construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HadamardSide {
    /// (F (x) I) U (F^H (x) I).
    Left,
    /// (I (x) F) U (I (x) F^H).
    Right,
}

/// Conjugates a gate by one Fourier layer; for the d=6 reference arrays the
/// result has every entry of modulus 1/6 while staying 2-unitary.
pub fn hadamard_variant(u: &BipartiteOperator, side: HadamardSide) -> BipartiteOperator {
    let d = u.d();
    let f = fourier(d);
    let id = ComplexMatrix::identity(d);
    let layer = match side {
        HadamardSide::Left => f.kron(&id),
        HadamardSide::Right => id.kron(&f),
    };
    let m = layer.matmul(u.matrix()).matmul(&layer.dagger());
    BipartiteOperator::new(m).expect("square by construction")
}

/// Phase-array form of hadamard_variant applied to build_diagonal_unitary.
pub fn hadamard_from_array(arr: &PhaseArray, side: HadamardSide) -> BipartiteOperator {
    hadamard_variant(&build_diagonal_unitary(arr), side)
}

/// The swap gate's coefficients in the maximally entangled basis: expanding
/// S = (1/d) sum |Z^a X^-b><(Z^a X^-b)^T| and rewriting each transposed bra
/// with (Z^a X^-b)^T = w^-ab Z^a X^b leaves the phases mu[a,b] = w^ab.
pub fn swap_phase_vector(d: usize) -> Result<PhaseArray> {
    let exponents: Vec<i64> = (0..d * d)
        .map(|i| ((i / d) * (i % d)) as i64)
        .collect();
    PhaseArray::from_exponents(d, d as u64, &exponents)
}

/// Rebuilds the swap gate from its phase vector: S = (1/d) sum mu[a,b]
/// |Z^a X^-b><Z^a X^b|, the bra sitting at the reflected label (a, -b).
pub fn swap_from_phase_vector(d: usize) -> ComplexMatrix {
    let mu = swap_phase_vector(d).expect("valid for d >= 2");
    let basis = MaxEntBasis::new(d);
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let ket = basis.vector(a, b);
            let bra = basis.vector(a, (d - b) % d);
            let coeff = mu.entry(a, b);
            for r in 0..d * d {
                if ket[r] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d * d {
                    m[(r, c)] += coeff * ket[r] * bra[c].conj();
                }
            }
        }
    }
    m
}
