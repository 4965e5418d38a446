//! Classification of 2 x 2 biunimodular phase arrays into the two standard
//! one-parameter families.
//!
//! After fixing the global phase so the (0,0) entry is 1, the two reference
//! families are
//!
//!   first:  (1, z, 1, -z)    second: (1, z, -1, z)     (row-major, |z| = 1)
//!
//! The full solution set at d = 2 is larger: it also contains the images of
//! these circles under invertible affine index maps (a,b) -> M(a,b) + t over
//! Z_2. Such maps permute array entries; in Fourier space they act by the
//! inverse-transpose index map combined with a modulation, so they permute
//! the transform magnitudes and preserve biunimodularity exactly. The
//! canonical matcher therefore quotients by the 24 affine index symmetries
//! (|GL(2,Z_2)| = 6 linear maps, 4 translations) plus a global phase before
//! comparing against the two families; the strict matcher compares up to a
//! global phase only.

use num_complex::Complex64;

use crate::phase::PhaseArray;

/// The two one-parameter families of 2 x 2 biunimodular arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitFamily {
    /// (1, z, 1, -z): sign flip on the (1,1) entry.
    First,
    /// (1, z, -1, z): sign flip on the (1,0) entry.
    Second,
}

impl QubitFamily {
    /// A representative array of the family at parameter z (must be unimodular).
    pub fn representative(self, z: Complex64) -> PhaseArray {
        let entries = match self {
            QubitFamily::First => vec![Complex64::new(1.0, 0.0), z, Complex64::new(1.0, 0.0), -z],
            QubitFamily::Second => vec![Complex64::new(1.0, 0.0), z, Complex64::new(-1.0, 0.0), z],
        };
        PhaseArray::from_entries(2, entries).expect("unimodular by construction")
    }
}

/// Matches against the two families up to a global phase only.
pub fn match_family_strict(arr: &PhaseArray, tol: f64) -> Option<QubitFamily> {
    if arr.d() != 2 {
        return None;
    }
    let n = arr.normalize_global_phase();
    let (e01, e10, e11) = (n.entry(0, 1), n.entry(1, 0), n.entry(1, 1));
    let one = Complex64::new(1.0, 0.0);
    if (e10 - one).norm() <= tol && (e11 + e01).norm() <= tol {
        return Some(QubitFamily::First);
    }
    if (e10 + one).norm() <= tol && (e11 - e01).norm() <= tol {
        return Some(QubitFamily::Second);
    }
    None
}

/// The 24 entry permutations induced by invertible affine index maps over Z_2.
fn affine_index_permutations() -> Vec<[usize; 4]> {
    // All M in GL(2, Z_2) as rows (m00, m01, m10, m11).
    const LINEAR: [[usize; 4]; 6] = [
        [1, 0, 0, 1],
        [1, 1, 0, 1],
        [1, 0, 1, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 1],
        [1, 1, 1, 0],
    ];
    let mut perms = Vec::with_capacity(24);
    for m in LINEAR {
        for t in 0..4usize {
            let (t0, t1) = (t / 2, t % 2);
            let mut perm = [0usize; 4];
            for (idx, image) in perm.iter_mut().enumerate() {
                let (a, b) = (idx / 2, idx % 2);
                let ap = (m[0] * a + m[1] * b + t0) % 2;
                let bp = (m[2] * a + m[3] * b + t1) % 2;
                *image = ap * 2 + bp;
            }
            perms.push(perm);
        }
    }
    perms
}

/// Matches against the two families after canonicalizing over the affine
/// index symmetries; this covers the complete d = 2 solution set.
pub fn match_family_canonical(arr: &PhaseArray, tol: f64) -> Option<QubitFamily> {
    if arr.d() != 2 {
        return None;
    }
    for perm in affine_index_permutations() {
        let entries: Vec<Complex64> = (0..4).map(|i| arr.entries()[perm[i]]).collect();
        let permuted = PhaseArray::from_entries(2, entries).expect("permutation of unimodular");
        if let Some(fam) = match_family_strict(&permuted, tol) {
            return Some(fam);
        }
    }
    None
}
