//! Gate-list descriptions of the controlled-gate circuits for a phase array.
//!
//! Two circuit shapes are exported, both five gates over qudits 0 (control)
//! and 1 (target), listed in application order (first-applied first):
//!
//!   standard:  P^T, F^H on qudit 0, D(L), F on qudit 0, P
//!   symmetric: P,   F on qudit 0,   D(L), F on qudit 0, P
//!
//! The standard shape multiplies out to P (F (x) I) D(L) (F^H (x) I) P^T,
//! which equals the diagonal-form gate of L; the symmetric shape gives the
//! simpler variant. P is the controlled shift (its transpose is exported as
//! the same gate with the adjoint flag set; P is a real permutation, so
//! transpose and adjoint coincide). D carries the phase array itself.

use crate::bipartite::BipartiteOperator;
use crate::diagonal::{controlled_decomposition, ControlledDecomposition};
use crate::matrix::ComplexMatrix;
use crate::phase::PhaseArray;

/// Which of the two circuit shapes is described.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    /// P (F (x) I) D (F^H (x) I) P^T, equal to the diagonal-form gate.
    Standard,
    /// P (F (x) I) D (F (x) I) P, the symmetric variant.
    Symmetric,
}

impl DecompositionKind {
    /// Stable lowercase token used in file formats.
    pub fn token(self) -> &'static str {
        match self {
            DecompositionKind::Standard => "standard",
            DecompositionKind::Symmetric => "symmetric",
        }
    }
}

/// The gate alphabet of the exported circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Controlled shift P (control 0, target 1).
    ControlledShift,
    /// Fourier gate F on one qudit.
    Fourier,
    /// Inverse Fourier gate F^H on one qudit.
    FourierAdjoint,
    /// Diagonal gate D(L) over both qudits.
    Diagonal,
}

impl GateKind {
    /// Stable token used in file formats: P, F, Fdag, or D.
    pub fn token(self) -> &'static str {
        match self {
            GateKind::ControlledShift => "P",
            GateKind::Fourier => "F",
            GateKind::FourierAdjoint => "Fdag",
            GateKind::Diagonal => "D",
        }
    }
}

/// One gate application within a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateOp {
    pub gate: GateKind,
    /// True for the transposed/adjoint form (used only for P^T).
    pub adjoint: bool,
    /// Control qudit, for controlled gates.
    pub control: Option<usize>,
    /// Target qudit, for single-qudit and controlled gates.
    pub target: Option<usize>,
}

/// A complete circuit description for one phase array.
#[derive(Debug, Clone)]
pub struct CircuitDescription {
    kind: DecompositionKind,
    array: PhaseArray,
}

impl CircuitDescription {
    /// Describes the chosen circuit shape for the given array.
    pub fn new(array: PhaseArray, kind: DecompositionKind) -> Self {
        Self { kind, array }
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.array.d()
    }

    /// The circuit shape.
    pub fn kind(&self) -> DecompositionKind {
        self.kind
    }

    /// The phase array feeding the diagonal gate.
    pub fn array(&self) -> &PhaseArray {
        &self.array
    }

    /// Gate list in application order (first-applied first).
    pub fn gates(&self) -> Vec<GateOp> {
        let p = |adjoint| GateOp {
            gate: GateKind::ControlledShift,
            adjoint,
            control: Some(0),
            target: Some(1),
        };
        let f = |kind| GateOp {
            gate: kind,
            adjoint: false,
            control: None,
            target: Some(0),
        };
        let d_gate = GateOp {
            gate: GateKind::Diagonal,
            adjoint: false,
            control: None,
            target: None,
        };
        match self.kind {
            DecompositionKind::Standard => vec![
                p(true),
                f(GateKind::FourierAdjoint),
                d_gate,
                f(GateKind::Fourier),
                p(false),
            ],
            DecompositionKind::Symmetric => vec![
                p(false),
                f(GateKind::Fourier),
                d_gate,
                f(GateKind::Fourier),
                p(false),
            ],
        }
    }

    /// Multiplies the gate list out to the full two-qudit matrix.
    pub fn unitary(&self) -> BipartiteOperator {
        let dec: ControlledDecomposition = controlled_decomposition(&self.array);
        let mut acc = ComplexMatrix::identity(self.d() * self.d());
        for op in self.gates() {
            let m = match op.gate {
                GateKind::ControlledShift => {
                    let p = dec.controlled_shift_factor();
                    if op.adjoint {
                        p.transpose()
                    } else {
                        p
                    }
                }
                GateKind::Fourier => dec.fourier_layer(),
                GateKind::FourierAdjoint => dec.fourier_layer().dagger(),
                GateKind::Diagonal => dec.diagonal_factor(),
            };
            acc = m.matmul(&acc);
        }
        BipartiteOperator::new(acc).expect("square by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::{build_diagonal_unitary, symmetric_variant};
    use crate::phase::gauss_product;

    #[test]
    fn standard_circuit_equals_diagonal_form_gate() {
        let arr = gauss_product(3);
        let circuit = CircuitDescription::new(arr.clone(), DecompositionKind::Standard);
        let direct = build_diagonal_unitary(&arr);
        assert!(circuit.unitary().matrix().max_abs_diff(direct.matrix()) < 1e-12);
    }

    #[test]
    fn symmetric_circuit_equals_symmetric_variant() {
        let arr = gauss_product(4);
        let circuit = CircuitDescription::new(arr.clone(), DecompositionKind::Symmetric);
        let direct = symmetric_variant(&arr);
        assert!(circuit.unitary().matrix().max_abs_diff(direct.matrix()) < 1e-12);
    }

    #[test]
    fn gate_lists_have_the_published_shape() {
        let arr = gauss_product(2);
        let std_gates = CircuitDescription::new(arr.clone(), DecompositionKind::Standard).gates();
        let tokens: Vec<&str> = std_gates.iter().map(|g| g.gate.token()).collect();
        assert_eq!(tokens, vec!["P", "Fdag", "D", "F", "P"]);
        assert!(std_gates[0].adjoint && !std_gates[4].adjoint);
        let sym_gates = CircuitDescription::new(arr, DecompositionKind::Symmetric).gates();
        let tokens: Vec<&str> = sym_gates.iter().map(|g| g.gate.token()).collect();
        assert_eq!(tokens, vec!["P", "F", "D", "F", "P"]);
        assert!(sym_gates.iter().all(|g| !g.adjoint));
    }
}
