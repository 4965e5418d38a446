//! Construction, search, and certification of dual-unitary and 2-unitary
//! two-qudit gates built from phase arrays.
//!
//! A d x d array of unit-modulus phases defines a gate that is diagonal in
//! the maximally entangled shift/clock basis. The gate is dual (unitary
//! after realignment) exactly when the array is biunimodular, i.e. its
//! normalized 2D Fourier transform is again unimodular, and it is 2-unitary
//! (additionally unitary after partial transpose) when a second, twisted
//! correlation condition holds as well. 2-unitary gates are equivalent to
//! perfect tensors and to four-party absolutely maximally entangled states;
//! conjugating one with a Fourier layer yields a 2-unitary complex Hadamard
//! matrix.
//!
//! The crate provides:
//! - dense complex matrices and the shift/clock operator algebra (`matrix`,
//!   `gates`);
//! - realignment, partial transpose, four-party states, and marginal
//!   computations (`bipartite`);
//! - phase arrays, autocorrelations, Fourier transforms, Gauss-sequence
//!   products, and the quadratic-exponent construction with its exact
//!   modular solvability test (`phase`, `quadratic`);
//! - the diagonal-form gate, its controlled-gate circuit decompositions,
//!   and Hadamard variants (`diagonal`, `circuit`);
//! - three reference d = 6 arrays and the d = 2 solution families (`known`,
//!   `families`);
//! - seeded iterative searches (Fourier projection, swap-twisted projection,
//!   and two polar-decomposition maps) with deterministic parallel ensembles
//!   (`search`, `polar`);
//! - full gate certification, block-structure analysis, stabilizer checks,
//!   and spectral comparison probes (`certify`);
//! - stable JSON/CSV serialization of every artifact (`io`).

pub mod bipartite;
pub mod certify;
pub mod circuit;
pub mod diagonal;
pub mod error;
pub mod families;
pub mod gates;
pub mod io;
pub mod known;
pub mod matrix;
pub mod phase;
pub mod polar;
pub mod quadratic;
pub mod search;

pub use bipartite::{BipartiteOperator, Bipartition, FourPartyState};
pub use certify::{certify, lu_probe, CertificationReport};
pub use circuit::{CircuitDescription, DecompositionKind};
pub use diagonal::{
    build_diagonal_unitary, controlled_decomposition, hadamard_from_array, schmidt_form,
    symmetric_variant, MaxEntBasis,
};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use phase::{gauss_product, tensor_product, PhaseArray};
pub use quadratic::{
    modular_solutions_dual, modular_solutions_tdual, quadratic_ansatz, QuadraticCoefficients,
};
pub use search::{
    run_ensemble, run_search, run_search_stream, Algorithm, SearchConfig, SearchOutcome,
};
