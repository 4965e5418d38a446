//! Phase arrays: d x d grids of unit-modulus complex numbers, and the
//! correlation machinery that decides whether the two-qudit diagonal gate
//! they generate is dual or T-dual.
//!
//! The central transform is the symmetric 2D discrete Fourier transform
//! F(L)[a,b] = (1/d) sum_{m,n} w^{am+bn} L[m,n] with w = exp(2 pi i / d);
//! it is unitary on the d^2 entries, so sum |F(L)|^2 = d^2 for any phase
//! array. L is biunimodular when F(L) is again unimodular entrywise. Two
//! families of periodic autocorrelations control the gate built from L:
//!
//!   A(k,l) = sum_{a,b} L[a,b] conj(L[a+k,b+l])                   (dual)
//!   W(k,l) = sum_{a,b} w^(al - bk) L[a,b] conj(L[a+k,b+l])       (T-dual)
//!
//! and the exact identities D(U^R) = sqrt(sum_{(k,l) != 0} |A|^2) / d,
//! D(U^G) = sqrt(sum' |W|^2) / d convert them into Frobenius unitarity
//! deviations of the rearranged gate without building any matrix.
//! Biunimodularity is equivalent to all nonzero-shift A(k,l) vanishing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::root_of_unity;

/// Modulus tolerance accepted when validating entries of a phase array.
pub const ENTRY_MODULUS_TOL: f64 = 1e-9;

/// Exact root-of-unity presentation of a phase array, when one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootForm {
    /// Order of the root of unity.
    pub order: u64,
    /// Row-major exponents, reduced mod `order`.
    pub exponents: Vec<u64>,
}

/// A d x d array of unit-modulus phases, stored row-major at index a*d + b.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseArray {
    d: usize,
    entries: Vec<Complex64>,
    root_form: Option<RootForm>,
}

impl PhaseArray {
    /// Builds an array from explicit entries, validating unit modulus.
    pub fn from_entries(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if entries.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                got: entries.len(),
            });
        }
        for (index, z) in entries.iter().enumerate() {
            let modulus = z.norm();
            if (modulus - 1.0).abs() > ENTRY_MODULUS_TOL {
                return Err(Error::NotUnimodular {
                    index,
                    modulus,
                    tol: ENTRY_MODULUS_TOL,
                });
            }
        }
        Ok(Self {
            d,
            entries,
            root_form: None,
        })
    }

    /// Builds an array of exact roots of unity exp(2 pi i e / order).
    pub fn from_exponents(d: usize, order: u64, exponents: &[i64]) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if order == 0 {
            return Err(Error::InvalidParameter("root order must be positive".into()));
        }
        if exponents.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                got: exponents.len(),
            });
        }
        let reduced: Vec<u64> = exponents
            .iter()
            .map(|&e| e.rem_euclid(order as i64) as u64)
            .collect();
        let entries = reduced
            .iter()
            .map(|&e| root_of_unity(order, e as i64))
            .collect();
        Ok(Self {
            d,
            entries,
            root_form: Some(RootForm {
                order,
                exponents: reduced,
            }),
        })
    }

    /// The all-ones array (the identity-inducing phase choice).
    pub fn all_ones(d: usize) -> Self {
        Self {
            d,
            entries: vec![Complex64::new(1.0, 0.0); d * d],
            root_form: Some(RootForm {
                order: 1,
                exponents: vec![0; d * d],
            }),
        }
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry L[a,b].
    pub fn entry(&self, a: usize, b: usize) -> Complex64 {
        self.entries[a * self.d + b]
    }

    /// Exact root-of-unity form, if the array was built from one.
    pub fn root_form(&self) -> Option<&RootForm> {
        self.root_form.as_ref()
    }

    /// Symmetric normalized 2D DFT: out[a,b] = (1/d) sum w^{am+bn} L[m,n].
    pub fn fourier_transform(&self) -> Vec<Complex64> {
        let d = self.d;
        let table: Vec<Complex64> = (0..d).map(|k| root_of_unity(d as u64, k as i64)).collect();
        // Row pass: g[m,b] = sum_n w^{bn} L[m,n].
        let mut g = vec![Complex64::new(0.0, 0.0); d * d];
        for m in 0..d {
            for b in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for n in 0..d {
                    s += table[(b * n) % d] * self.entries[m * d + n];
                }
                g[m * d + b] = s;
            }
        }
        // Column pass with the 1/d normalization folded in.
        let scale = 1.0 / d as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for a in 0..d {
            for b in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for m in 0..d {
                    s += table[(a * m) % d] * g[m * d + b];
                }
                out[a * d + b] = s * scale;
            }
        }
        out
    }

    /// Largest deviation of a transform modulus from 1; zero iff biunimodular.
    pub fn biunimodularity_deviation(&self) -> f64 {
        self.fourier_transform()
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// True when the 2D DFT is unimodular entrywise within `tol`.
    pub fn is_biunimodular(&self, tol: f64) -> bool {
        self.biunimodularity_deviation() <= tol
    }

    /// Periodic autocorrelation A(k,l); A(0,0) = d^2 always.
    pub fn autocorrelation(&self, k: usize, l: usize) -> Complex64 {
        let d = self.d;
        assert!(k < d && l < d, "shift ({k},{l}) out of range for d={d}");
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..d {
            for b in 0..d {
                s += self.entries[a * d + b]
                    * self.entries[((a + k) % d) * d + (b + l) % d].conj();
            }
        }
        s
    }

    /// Weighted autocorrelation W(k,l) with weight w^(al - bk).
    pub fn weighted_autocorrelation(&self, k: usize, l: usize) -> Complex64 {
        let d = self.d;
        assert!(k < d && l < d, "shift ({k},{l}) out of range for d={d}");
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..d {
            for b in 0..d {
                let w = root_of_unity(d as u64, (a * l) as i64 - (b * k) as i64);
                s += w
                    * self.entries[a * d + b]
                    * self.entries[((a + k) % d) * d + (b + l) % d].conj();
            }
        }
        s
    }

    /// All autocorrelations (plain or weighted) over the shift grid.
    pub fn correlation_spectrum(&self, weighted: bool) -> CorrelationSpectrum {
        let d = self.d;
        let mut values = Vec::with_capacity(d * d);
        for k in 0..d {
            for l in 0..d {
                values.push(if weighted {
                    self.weighted_autocorrelation(k, l)
                } else {
                    self.autocorrelation(k, l)
                });
            }
        }
        CorrelationSpectrum { d, weighted, values }
    }

    /// Largest |A(k,l)| over nonzero shifts; zero iff the gate is dual.
    pub fn max_autocorrelation(&self) -> f64 {
        self.correlation_spectrum(false).max_nonzero_shift()
    }

    /// Largest |W(k,l)| over nonzero shifts; zero iff the gate is T-dual.
    pub fn max_weighted_autocorrelation(&self) -> f64 {
        self.correlation_spectrum(true).max_nonzero_shift()
    }

    /// D(U^R) of the induced gate, computed from plain autocorrelations.
    pub fn realign_deviation_from_correlations(&self) -> f64 {
        self.correlation_spectrum(false).rearrangement_deviation()
    }

    /// D(U^G) of the induced gate, computed from weighted autocorrelations.
    pub fn partial_transpose_deviation_from_correlations(&self) -> f64 {
        self.correlation_spectrum(true).rearrangement_deviation()
    }

    /// |sum of entries|^2; equals exactly d^2 for any biunimodular array.
    pub fn balance(&self) -> f64 {
        self.entries.iter().sum::<Complex64>().norm_sqr()
    }

    /// Rotates by a global phase so the (0,0) entry becomes exactly 1.
    pub fn normalize_global_phase(&self) -> Self {
        let z0 = self.entries[0];
        let rot = z0.conj() / z0.norm();
        let mut entries: Vec<Complex64> = self.entries.iter().map(|&z| z * rot).collect();
        entries[0] = Complex64::new(1.0, 0.0);
        let root_form = self.root_form.as_ref().map(|rf| {
            let e0 = rf.exponents[0];
            RootForm {
                order: rf.order,
                exponents: rf
                    .exponents
                    .iter()
                    .map(|&e| (e + rf.order - e0) % rf.order)
                    .collect(),
            }
        });
        Self {
            d: self.d,
            entries,
            root_form,
        }
    }

    /// Largest entrywise distance to another array of the same dimension.
    pub fn max_entry_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.d, other.d, "phase array dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when the two arrays agree up to one global phase within `tol`.
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> bool {
        if self.d != other.d {
            return false;
        }
        let rot = other.entries[0] / self.entries[0];
        let rot = rot / rot.norm();
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| (a * rot - b).norm() <= tol)
    }
}

/// The grid of (weighted) autocorrelations of one phase array.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpectrum {
    d: usize,
    weighted: bool,
    values: Vec<Complex64>,
}

impl CorrelationSpectrum {
    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Whether these are the T-dual (weighted) correlations.
    pub fn weighted(&self) -> bool {
        self.weighted
    }

    /// Correlation at shift (k,l).
    pub fn value(&self, k: usize, l: usize) -> Complex64 {
        self.values[k * self.d + l]
    }

    /// Row-major correlation values over the shift grid.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest correlation modulus over nonzero shifts.
    pub fn max_nonzero_shift(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 0)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }

    /// Unitarity deviation of the matching rearrangement:
    /// sqrt(sum over nonzero shifts of |value|^2) / d.
    pub fn rearrangement_deviation(&self) -> f64 {
        let sum: f64 = self
            .values
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 0)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        sum.sqrt() / self.d as f64
    }
}

/// Entrywise product array L[a,b] = v1[a] * v2[b] of two unimodular vectors.
pub fn tensor_product(v1: &[Complex64], v2: &[Complex64]) -> Result<PhaseArray> {
    if v1.len() != v2.len() {
        return Err(Error::LengthMismatch {
            expected: v1.len(),
            got: v2.len(),
        });
    }
    let d = v1.len();
    let mut entries = Vec::with_capacity(d * d);
    for &x in v1 {
        for &y in v2 {
            entries.push(x * y);
        }
    }
    PhaseArray::from_entries(d, entries)
}

/// The quadratic Gauss sequence of length d, biunimodular for every d:
/// w_d^(k^2) for odd d, exp(i pi k^2 / d) for even d.
pub fn gauss_sequence(d: usize) -> Vec<Complex64> {
    let order = gauss_root_order(d);
    (0..d)
        .map(|k| root_of_unity(order, gauss_exponent(d, k) as i64))
        .collect()
}

/// Exponents of gauss_product relative to gauss_root_order, for callers that
/// need the exact arithmetic form.
pub fn gauss_product_exponents(d: usize) -> Vec<u64> {
    (0..d * d)
        .map(|i| {
            let (a, b) = (i / d, i % d);
            (gauss_exponent(d, a) + gauss_exponent(d, b)) % gauss_root_order(d)
        })
        .collect()
}

/// Root order of the Gauss sequence phases: d for odd d, 2d for even d.
pub fn gauss_root_order(d: usize) -> u64 {
    if d % 2 == 1 {
        d as u64
    } else {
        2 * d as u64
    }
}

/// Exponent of entry k w.r.t. the Gauss root order; for even d this encodes
/// exp(i pi k^2 / d) = w_{2d}^(k^2).
fn gauss_exponent(d: usize, k: usize) -> u64 {
    ((k * k) % gauss_root_order(d) as usize) as u64
}

/// The biunimodular product array of two Gauss sequences, with exact root form.
pub fn gauss_product(d: usize) -> PhaseArray {
    let exponents: Vec<i64> = gauss_product_exponents(d)
        .into_iter()
        .map(|e| e as i64)
        .collect();
    PhaseArray::from_exponents(d, gauss_root_order(d), &exponents).expect("valid by construction")
}
