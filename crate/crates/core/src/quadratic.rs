//! Quadratic-exponent phase arrays and the modular arithmetic deciding
//! exactly where their autocorrelations vanish.
//!
//! For L[a,b] = w^F(a,b) with F(a,b) = c_aa a^2 + c_ab ab + c_bb b^2 (mod d),
//! the shift difference F(a,b) - F(a+k,b+l) is linear in (a,b):
//!
//!   F(a,b) - F(a+k,b+l) = -(2c_aa k + c_ab l) a - (c_ab k + 2c_bb l) b - F(k,l)
//!
//! so each autocorrelation factors into two geometric sums over Z_d and is
//! exactly zero unless both linear coefficients vanish mod d, in which case
//! its modulus is exactly d^2. The weighted correlations shift the two
//! coefficients by -l and +k respectively. The linear systems are re-derived
//! from the coefficients rather than hard-coded, so any integer ansatz is
//! covered; the trivial shift (0,0) always solves both systems. The gate
//! built from L is dual iff the dual system has only the trivial solution,
//! and T-dual iff the T-dual system has only the trivial solution.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::phase::PhaseArray;

/// Coefficients of the quadratic exponent c_aa a^2 + c_ab ab + c_bb b^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticCoefficients {
    pub c_aa: i64,
    pub c_ab: i64,
    pub c_bb: i64,
}

/// Solution set of one modular linear system over the shift grid Z_d x Z_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularSolutionSet {
    d: usize,
    solutions: BTreeSet<(usize, usize)>,
}

impl ModularSolutionSet {
    /// Local dimension d of the shift grid.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Solutions in row-major order, always containing (0,0).
    pub fn solutions(&self) -> &BTreeSet<(usize, usize)> {
        &self.solutions
    }

    /// True when (0,0) is the only solution, i.e. every nonzero-shift
    /// correlation of the ansatz vanishes.
    pub fn only_trivial(&self) -> bool {
        self.solutions.len() == 1
    }
}

/// Builds the phase array w_d^(c_aa a^2 + c_ab ab + c_bb b^2), root order d.
pub fn quadratic_ansatz(d: usize, coeffs: QuadraticCoefficients) -> Result<PhaseArray> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let dd = d as i64;
    let exponents: Vec<i64> = (0..(d * d) as i64)
        .map(|i| {
            let (a, b) = (i / dd, i % dd);
            (coeffs.c_aa * a * a + coeffs.c_ab * a * b + coeffs.c_bb * b * b).rem_euclid(dd)
        })
        .collect();
    PhaseArray::from_exponents(d, d as u64, &exponents)
}

fn enumerate_solutions(
    d: usize,
    form: impl Fn(i64, i64) -> (i64, i64),
) -> ModularSolutionSet {
    let dd = d as i64;
    let mut solutions = BTreeSet::new();
    for k in 0..dd {
        for l in 0..dd {
            let (first, second) = form(k, l);
            if first.rem_euclid(dd) == 0 && second.rem_euclid(dd) == 0 {
                solutions.insert((k as usize, l as usize));
            }
        }
    }
    ModularSolutionSet { d, solutions }
}

/// Shifts where the plain autocorrelation of the ansatz survives:
/// solutions of {2c_aa k + c_ab l = 0, c_ab k + 2c_bb l = 0} (mod d).
pub fn modular_solutions_dual(d: usize, coeffs: QuadraticCoefficients) -> ModularSolutionSet {
    enumerate_solutions(d, |k, l| {
        (
            2 * coeffs.c_aa * k + coeffs.c_ab * l,
            coeffs.c_ab * k + 2 * coeffs.c_bb * l,
        )
    })
}

/// Shifts where the weighted autocorrelation of the ansatz survives:
/// solutions of {2c_aa k + c_ab l - l = 0, c_ab k + 2c_bb l + k = 0} (mod d).
pub fn modular_solutions_tdual(d: usize, coeffs: QuadraticCoefficients) -> ModularSolutionSet {
    enumerate_solutions(d, |k, l| {
        (
            2 * coeffs.c_aa * k + coeffs.c_ab * l - l,
            coeffs.c_ab * k + 2 * coeffs.c_bb * l + k,
        )
    })
}

/// Shifts where a measured correlation spectrum is nonzero, including (0,0),
/// for comparing against the modular predictions; off the predicted sets the
/// correlations are exactly zero in exact arithmetic, so any tolerance well
/// below d^2 gives the same answer.
pub fn nonvanishing_correlation_shifts(
    arr: &PhaseArray,
    weighted: bool,
    tol: f64,
) -> BTreeSet<(usize, usize)> {
    let spectrum = arr.correlation_spectrum(weighted);
    let d = arr.d();
    let mut out = BTreeSet::new();
    for k in 0..d {
        for l in 0..d {
            if spectrum.value(k, l).norm() > tol {
                out.insert((k, l));
            }
        }
    }
    out
}
