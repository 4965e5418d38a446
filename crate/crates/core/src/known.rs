//! The three published biunimodular reference arrays for d = 6, transcribed
//! as exact exponent lists.
//!
//! Each is a 6 x 6 grid of roots of unity whose induced two-qudit gate is
//! 2-unitary, providing fixed ground-truth inputs for certification and
//! regression tests. A1 and A2 are sixth-root arrays; A3 uses only cube
//! roots. Exponents are row-major: entry (a,b) sits at index 6a + b, so
//! A1[0,0] = w^0, A1[0,1] = w^1, ..., A1[5,5] = w^1. The arrays are kept in
//! one constants block with checksum tests so transcription errors surface
//! immediately.

use crate::phase::PhaseArray;

/// Row-major sixth-root exponents of the first reference array.
pub const ARRAY_1_EXPONENTS: [i64; 36] = [
    0, 1, 0, 1, 3, 3, //
    3, 3, 1, 5, 2, 4, //
    2, 1, 3, 1, 2, 3, //
    1, 1, 2, 0, 3, 5, //
    5, 3, 2, 3, 2, 5, //
    4, 4, 1, 5, 5, 1,
];

/// Row-major sixth-root exponents of the second reference array.
pub const ARRAY_2_EXPONENTS: [i64; 36] = [
    0, 2, 3, 3, 2, 0, //
    0, 3, 2, 2, 0, 4, //
    2, 0, 3, 5, 0, 0, //
    0, 5, 0, 0, 2, 0, //
    2, 2, 5, 3, 2, 4, //
    2, 3, 0, 2, 0, 0,
];

/// Row-major cube-root exponents of the third reference array.
pub const ARRAY_3_EXPONENTS: [i64; 36] = [
    0, 2, 2, 0, 0, 1, //
    0, 1, 1, 1, 2, 1, //
    0, 2, 0, 2, 2, 2, //
    2, 0, 2, 2, 2, 1, //
    1, 1, 2, 0, 2, 2, //
    0, 1, 2, 2, 1, 0,
];

/// Names accepted by `reference_array`.
pub const REFERENCE_NAMES: [&str; 3] = ["L1", "L2", "L3"];

/// The first d=6 reference array (root order 6).
pub fn reference_array_1() -> PhaseArray {
    PhaseArray::from_exponents(6, 6, &ARRAY_1_EXPONENTS).expect("valid constants")
}

/// The second d=6 reference array (root order 6).
pub fn reference_array_2() -> PhaseArray {
    PhaseArray::from_exponents(6, 6, &ARRAY_2_EXPONENTS).expect("valid constants")
}

/// The third d=6 reference array (root order 3).
pub fn reference_array_3() -> PhaseArray {
    PhaseArray::from_exponents(6, 3, &ARRAY_3_EXPONENTS).expect("valid constants")
}

/// All three reference arrays, in order.
pub fn reference_arrays() -> [PhaseArray; 3] {
    [
        reference_array_1(),
        reference_array_2(),
        reference_array_3(),
    ]
}

/// Looks up a reference array by its conventional name L1, L2, or L3.
pub fn reference_array(name: &str) -> Option<PhaseArray> {
    match name {
        "L1" => Some(reference_array_1()),
        "L2" => Some(reference_array_2()),
        "L3" => Some(reference_array_3()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn transcription_checksums() {
        // Exponent sums pin the transcribed lists against edit accidents.
        assert_eq!(ARRAY_1_EXPONENTS.iter().sum::<i64>(), 90);
        assert_eq!(ARRAY_2_EXPONENTS.iter().sum::<i64>(), 63);
        assert_eq!(ARRAY_3_EXPONENTS.iter().sum::<i64>(), 42);
    }

    #[test]
    fn corner_entries_match_the_published_grids() {
        let a1 = reference_array_1();
        let rf = a1.root_form().unwrap();
        assert_eq!(rf.order, 6);
        assert_eq!(rf.exponents[0], 0);
        assert_eq!(rf.exponents[1], 1);
        assert_eq!(rf.exponents[35], 1);
    }

    #[test]
    fn distinct_residue_counts() {
        let count = |exps: &[i64]| exps.iter().collect::<BTreeSet<_>>().len();
        assert_eq!(count(&ARRAY_1_EXPONENTS), 6);
        assert_eq!(count(&ARRAY_2_EXPONENTS), 5);
        assert_eq!(count(&ARRAY_3_EXPONENTS), 3);
    }

    #[test]
    fn all_three_are_biunimodular() {
        for (i, arr) in reference_arrays().iter().enumerate() {
            assert!(arr.is_biunimodular(1e-10), "array {}", i + 1);
            assert!(arr.max_weighted_autocorrelation() < 1e-10, "array {}", i + 1);
            assert!((arr.balance() - 36.0).abs() < 1e-8, "array {}", i + 1);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(reference_array("L3").is_some());
        assert!(reference_array("L4").is_none());
    }
}
