//! Certification of candidate gates: unitarity under both rearrangements,
//! block structure with clustered entry moduli, stabilizer checks on the
//! induced four-party state, and maximally-mixed marginal residuals computed
//! by two independent routes.
//!
//! A gate diagonal in the maximally entangled shift/clock basis couples row
//! pair (m,n) to column pair (k,l) only when n - m = l - k (mod d), so after
//! sorting rows and columns by that difference class the matrix splits into
//! d diagonal blocks of size d, each a circulant. The block summary detects
//! this pattern on any input and degrades to an "unstructured" report (still
//! listing clustered entry moduli) when the pattern is absent.
//!
//! The probe comparing two gates computes cheap necessary conditions for
//! local-unitary equivalence: eigenvalue phases, realigned singular values,
//! and entry-modulus multisets. It reports "distinguished" when any
//! fingerprint differs; it never claims two gates are equivalent.

use num_complex::Complex64;

use crate::bipartite::{BipartiteOperator, Bipartition, FourPartyState};
use crate::error::{Error, Result};
use crate::gates::displacement;
use crate::matrix::ComplexMatrix;
use crate::polar::{eigenvalues_by_phase, singular_values};

/// Entries with modulus at or below this are treated as structural zeros.
pub const ZERO_ENTRY_TOL: f64 = 1e-10;

/// Adjacent entry moduli closer than this are merged into one cluster.
pub const MODULUS_CLUSTER_TOL: f64 = 1e-8;

/// Fingerprint differences beyond this mark two gates as distinguished.
pub const LU_PROBE_TOL: f64 = 1e-8;

/// Eigenvalue phases closer than this fall into the same phase class.
pub const EIGENPHASE_CLUSTER_TOL: f64 = 1e-6;

/// One cluster of equal entry moduli: mean value and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusCluster {
    pub value: f64,
    pub count: usize,
}

/// One difference-class block of a structured gate.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport {
    /// The difference class c = (n - m) mod d shared by the block.
    pub class: usize,
    /// Row indices m*d + (m+c) mod d of the block, in order of m.
    pub rows: Vec<usize>,
    /// Column indices k*d + (k+c) mod d of the block, in order of k.
    pub cols: Vec<usize>,
    /// Frobenius deviation of the block from unitarity.
    pub unitarity_residual: f64,
    /// Largest entry deviation from the circulant pattern B[m,k] = g[(m-k) mod d].
    pub circulant_residual: f64,
}

/// Zero-pattern and entry-modulus summary of a gate.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSummary {
    pub d: usize,
    /// True when every entry off the difference-class pattern is a zero.
    pub structured: bool,
    /// Largest entry modulus found off the pattern.
    pub off_pattern_max: f64,
    /// Per-class block reports; empty when unstructured.
    pub blocks: Vec<BlockReport>,
    /// Sorted distinct nonzero entry moduli with multiplicities.
    pub distinct_moduli: Vec<ModulusCluster>,
}

/// Deviations of one stabilizer from fixing the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizerResult {
    pub i: usize,
    pub j: usize,
    /// || G|psi> - |psi> ||.
    pub vector_deviation: f64,
    /// | <psi|G|psi> - 1 |.
    pub overlap_deviation: f64,
}

/// Distance of one two-party marginal from the maximally mixed state,
/// computed via the rearrangement identity and via brute-force partial trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalReport {
    pub cut: Bipartition,
    pub residual_rearrangement: f64,
    pub residual_partial_trace: f64,
    /// Largest entry difference between the two marginal matrices.
    pub cross_check: f64,
}

/// Full certification of one gate at a stated tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub d: usize,
    pub tol: f64,
    pub delta_unitary: f64,
    pub delta_realign: f64,
    pub delta_partial_transpose: f64,
    pub is_unitary: bool,
    pub is_dual: bool,
    pub is_tdual: bool,
    pub is_two_unitary: bool,
    pub blocks: BlockSummary,
    pub stabilizers: Vec<StabilizerResult>,
    pub max_stabilizer_deviation: f64,
    pub marginals: Vec<MarginalReport>,
}

/// Cheap necessary-condition comparison of two gates.
#[derive(Debug, Clone, PartialEq)]
pub struct LuProbeReport {
    pub d: usize,
    /// Multiset distance between eigenvalue spectra, phase-aligned.
    pub eigenphase_distance: f64,
    /// Number of distinct eigenvalue-phase classes of each gate.
    pub eigenphase_classes: (usize, usize),
    /// Largest difference between sorted realigned singular values.
    pub realigned_singular_distance: f64,
    /// Largest difference between sorted entry-modulus multisets.
    pub modulus_distance: f64,
    /// True when any fingerprint differs beyond the probe tolerance.
    pub distinguished: bool,
}

fn cluster_moduli(mut values: Vec<f64>) -> Vec<ModulusCluster> {
    values.retain(|&v| v > ZERO_ENTRY_TOL);
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters = Vec::new();
    let mut start = 0usize;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > MODULUS_CLUSTER_TOL {
            let slice = &values[start..i];
            clusters.push(ModulusCluster {
                value: slice.iter().sum::<f64>() / slice.len() as f64,
                count: slice.len(),
            });
            start = i;
        }
    }
    clusters
}

/// Detects the difference-class block pattern and summarizes entry moduli.
pub fn block_structure(u: &BipartiteOperator) -> BlockSummary {
    let d = u.d();
    let m = u.matrix();
    let mut off_pattern_max = 0.0f64;
    let mut moduli = Vec::with_capacity(d * d * d * d);
    for row in 0..d * d {
        let (rm, rn) = (row / d, row % d);
        for col in 0..d * d {
            let (ck, cl) = (col / d, col % d);
            let v = m[(row, col)].norm();
            moduli.push(v);
            if (rn + d - rm) % d != (cl + d - ck) % d {
                off_pattern_max = off_pattern_max.max(v);
            }
        }
    }
    let structured = off_pattern_max <= ZERO_ENTRY_TOL;
    let blocks = if structured {
        (0..d)
            .map(|class| {
                let rows: Vec<usize> = (0..d).map(|i| i * d + (i + class) % d).collect();
                let cols = rows.clone();
                let block = ComplexMatrix::from_fn(d, d, |i, j| m[(rows[i], cols[j])]);
                let generator: Vec<Complex64> = (0..d).map(|i| block[(i, 0)]).collect();
                let mut circulant_residual = 0.0f64;
                for i in 0..d {
                    for j in 0..d {
                        let diff = (block[(i, j)] - generator[(i + d - j) % d]).norm();
                        circulant_residual = circulant_residual.max(diff);
                    }
                }
                BlockReport {
                    class,
                    rows,
                    cols,
                    unitarity_residual: block.deviation_from_unitarity(),
                    circulant_residual,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    BlockSummary {
        d,
        structured,
        off_pattern_max,
        blocks,
        distinct_moduli: cluster_moduli(moduli),
    }
}

/// Deviation of the (i,j) shift/clock stabilizer from fixing the state.
pub fn stabilizer_check(state: &FourPartyState, i: usize, j: usize) -> StabilizerResult {
    let d = state.d();
    let (i, j) = (i as i64, j as i64);
    let g_outer = displacement(d, i, j);
    let g_inner = displacement(d, i, -j);
    let moved = state.apply_local([&g_outer, &g_inner, &g_inner, &g_outer]);
    StabilizerResult {
        i: i as usize,
        j: j as usize,
        vector_deviation: state.distance(&moved),
        overlap_deviation: (state.inner(&moved) - Complex64::new(1.0, 0.0)).norm(),
    }
}

/// Certifies a gate: rearrangement deviations, block structure, all d*d
/// stabilizers, and both marginal routes for the three balanced cuts.
pub fn certify(u: &BipartiteOperator, tol: f64) -> CertificationReport {
    let d = u.d();
    let (delta_unitary, (delta_realign, delta_partial_transpose)) = rayon::join(
        || u.unitarity_deviation(),
        || {
            rayon::join(
                || u.realign_deviation(),
                || u.partial_transpose_deviation(),
            )
        },
    );
    let is_unitary = delta_unitary <= tol;
    let is_dual = delta_realign <= tol;
    let is_tdual = delta_partial_transpose <= tol;
    let blocks = block_structure(u);
    let state = u.to_state();
    let mut stabilizers = Vec::with_capacity(d * d);
    let mut max_stabilizer_deviation = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let r = stabilizer_check(&state, i, j);
            max_stabilizer_deviation = max_stabilizer_deviation.max(r.vector_deviation);
            stabilizers.push(r);
        }
    }
    let marginals = Bipartition::ALL
        .iter()
        .map(|&cut| {
            let via_rearrangement = u.marginal_from_rearrangement(cut);
            let via_trace = state.reduced_density(cut);
            MarginalReport {
                cut,
                residual_rearrangement: crate::bipartite::distance_from_maximally_mixed(
                    &via_rearrangement,
                ),
                residual_partial_trace: crate::bipartite::distance_from_maximally_mixed(&via_trace),
                cross_check: via_rearrangement.max_abs_diff(&via_trace),
            }
        })
        .collect();
    CertificationReport {
        d,
        tol,
        delta_unitary,
        delta_realign,
        delta_partial_transpose,
        is_unitary,
        is_dual,
        is_tdual,
        is_two_unitary: is_unitary && is_dual && is_tdual,
        blocks,
        stabilizers,
        max_stabilizer_deviation,
        marginals,
    }
}

fn sorted_moduli(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.data().iter().map(|z| z.norm()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn max_pointwise_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Multiset distance between two phase-sorted unitary spectra, minimized
/// over cyclic alignment so the branch cut does not split a class.
fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|shift| {
            (0..n)
                .map(|i| (a[i] - b[(i + shift) % n]).norm())
                .fold(0.0f64, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

fn eigenphase_class_count(spectrum: &[Complex64]) -> usize {
    let mut phases: Vec<f64> = spectrum
        .iter()
        .map(|z| z.arg().rem_euclid(std::f64::consts::TAU))
        .collect();
    phases.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = phases.len();
    if n <= 1 {
        return n;
    }
    let mut wide_gaps = 0usize;
    for i in 0..n {
        let gap = if i + 1 < n {
            phases[i + 1] - phases[i]
        } else {
            phases[0] + std::f64::consts::TAU - phases[n - 1]
        };
        if gap > EIGENPHASE_CLUSTER_TOL {
            wide_gaps += 1;
        }
    }
    wide_gaps.max(1)
}

/// Compares spectral fingerprints of two gates of the same dimension.
/// A "distinguished" verdict rules out local-unitary equivalence of the
/// induced states; the converse is never claimed.
pub fn lu_probe(u1: &BipartiteOperator, u2: &BipartiteOperator) -> Result<LuProbeReport> {
    if u1.d() != u2.d() {
        return Err(Error::ShapeMismatch {
            expected: format!("{0}x{0}", u1.matrix().rows()),
            got: format!("{0}x{0}", u2.matrix().rows()),
        });
    }
    let s1 = eigenvalues_by_phase(u1.matrix());
    let s2 = eigenvalues_by_phase(u2.matrix());
    let eigenphase_distance = spectrum_distance(&s1, &s2);
    let eigenphase_classes = (eigenphase_class_count(&s1), eigenphase_class_count(&s2));
    let sv1 = singular_values(&u1.realign());
    let sv2 = singular_values(&u2.realign());
    let realigned_singular_distance = max_pointwise_distance(&sv1, &sv2);
    let modulus_distance =
        max_pointwise_distance(&sorted_moduli(u1.matrix()), &sorted_moduli(u2.matrix()));
    let distinguished = eigenphase_distance > LU_PROBE_TOL
        || realigned_singular_distance > LU_PROBE_TOL
        || modulus_distance > LU_PROBE_TOL
        || eigenphase_classes.0 != eigenphase_classes.1;
    Ok(LuProbeReport {
        d: u1.d(),
        eigenphase_distance,
        eigenphase_classes,
        realigned_singular_distance,
        modulus_distance,
        distinguished,
    })
}

impl CertificationReport {
    /// Stable human-readable rendering of the report.
    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        out.push_str(&format!("gate certification  d={}  tol={:e}\n", self.d, self.tol));
        out.push_str(&format!(
            "  delta(U)        = {:.6e}   unitary:   {}\n",
            self.delta_unitary,
            yn(self.is_unitary)
        ));
        out.push_str(&format!(
            "  delta(U^R)      = {:.6e}   dual:      {}\n",
            self.delta_realign,
            yn(self.is_dual)
        ));
        out.push_str(&format!(
            "  delta(U^Gamma)  = {:.6e}   T-dual:    {}\n",
            self.delta_partial_transpose,
            yn(self.is_tdual)
        ));
        out.push_str(&format!("  two-unitary: {}\n", yn(self.is_two_unitary)));
        if self.blocks.structured {
            let max_block = self
                .blocks
                .blocks
                .iter()
                .fold(0.0f64, |acc, b| acc.max(b.unitarity_residual));
            out.push_str(&format!(
                "  blocks: structured, {} blocks of size {}, max unitarity residual {:.3e}\n",
                self.blocks.blocks.len(),
                self.blocks.d,
                max_block
            ));
        } else {
            out.push_str(&format!(
                "  blocks: unstructured (off-pattern max {:.3e})\n",
                self.blocks.off_pattern_max
            ));
        }
        out.push_str("  distinct |entries|:");
        for c in &self.blocks.distinct_moduli {
            out.push_str(&format!("  {:.9} (x{})", c.value, c.count));
        }
        out.push('\n');
        out.push_str(&format!(
            "  stabilizers: {} checked, max vector deviation {:.6e}\n",
            self.stabilizers.len(),
            self.max_stabilizer_deviation
        ));
        out.push_str("  marginals (distance from maximally mixed):\n");
        for m in &self.marginals {
            out.push_str(&format!(
                "    {}: rearrangement {:.6e}  partial-trace {:.6e}  cross-check {:.3e}\n",
                m.cut.label(),
                m.residual_rearrangement,
                m.residual_partial_trace,
                m.cross_check
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::build_diagonal_unitary;
    use crate::gates::swap_gate;
    use crate::phase::{gauss_product, PhaseArray};
    use crate::polar::polar_project;
    use crate::search::seeded_phase_array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn swap_is_dual_but_not_tdual() {
        let d = 3usize;
        let u = BipartiteOperator::new(swap_gate(d)).unwrap();
        let report = certify(&u, 1e-10);
        assert!(report.is_unitary && report.is_dual && !report.is_tdual);
        assert!(!report.is_two_unitary);
        let expected = (d as f64) * ((d * d - 1) as f64).sqrt();
        assert!((report.delta_partial_transpose - expected).abs() < 1e-10);
    }

    #[test]
    fn identity_is_tdual_but_not_dual() {
        let u = BipartiteOperator::new(ComplexMatrix::identity(4)).unwrap();
        let report = certify(&u, 1e-10);
        assert!(report.is_unitary && !report.is_dual && report.is_tdual);
        // The identity fits the difference-class pattern with every block
        // equal to the identity, and has a single entry-modulus cluster.
        assert!(report.blocks.structured);
        assert_eq!(report.blocks.blocks.len(), 2);
        assert_eq!(report.blocks.distinct_moduli.len(), 1);
        assert_eq!(report.blocks.distinct_moduli[0].count, 4);
        assert!((report.blocks.distinct_moduli[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_product_gate_certifies_two_unitary_with_circulant_blocks() {
        let u = build_diagonal_unitary(&gauss_product(3));
        let report = certify(&u, 1e-10);
        assert!(report.is_two_unitary);
        assert!(report.blocks.structured);
        assert_eq!(report.blocks.blocks.len(), 3);
        for b in &report.blocks.blocks {
            assert!(b.unitarity_residual < 1e-12);
            assert!(b.circulant_residual < 1e-12);
            assert_eq!(b.rows.len(), 3);
        }
        for m in &report.marginals {
            assert!(m.cross_check < 1e-12);
            assert!(m.residual_rearrangement < 1e-12);
        }
        assert!(report.max_stabilizer_deviation < 1e-12);
    }

    #[test]
    fn swap_gate_is_unstructured_for_odd_dimension() {
        let u = BipartiteOperator::new(swap_gate(3)).unwrap();
        let summary = block_structure(&u);
        assert!(!summary.structured);
        assert!((summary.off_pattern_max - 1.0).abs() < 1e-15);
        assert!(summary.blocks.is_empty());
    }

    #[test]
    fn trivial_stabilizer_is_exact_and_random_states_fail_some_check() {
        let arr = seeded_phase_array(3, 11, 0);
        let state = build_diagonal_unitary(&arr).to_state();
        let trivial = stabilizer_check(&state, 0, 0);
        assert_eq!(trivial.vector_deviation, 0.0);
        // The overlap deviation of the trivial stabilizer is the state's own
        // normalization error, zero only up to rounding.
        assert!(trivial.overlap_deviation < 1e-14);

        // A generic state is not fixed by the whole family.
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let amps: Vec<Complex64> = (0..81)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let amps = amps.into_iter().map(|z| z / norm).collect();
        let random_state = FourPartyState::new(3, amps).unwrap();
        let worst = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| stabilizer_check(&random_state, i, j).vector_deviation)
            .fold(0.0f64, f64::max);
        assert!(worst > 0.1);
    }

    #[test]
    fn probe_distinguishes_different_gates_but_not_a_gate_from_itself() {
        let u1 = build_diagonal_unitary(&gauss_product(3));
        let u2 = BipartiteOperator::new(swap_gate(3)).unwrap();
        let same = lu_probe(&u1, &u1).unwrap();
        assert!(!same.distinguished);
        assert_eq!(same.eigenphase_distance, 0.0);
        let diff = lu_probe(&u1, &u2).unwrap();
        assert!(diff.distinguished);
    }

    #[test]
    fn probe_realigned_singular_fingerprint_is_locally_invariant() {
        let u = build_diagonal_unitary(&gauss_product(3));
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let mut haar = |d: usize| {
            let g = ComplexMatrix::from_fn(d, d, |_, _| {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            polar_project(&g).unitary
        };
        let (a, b, c, e) = (haar(3), haar(3), haar(3), haar(3));
        let left = a.kron(&b);
        let right = c.kron(&e);
        let rotated = BipartiteOperator::new(&(&left * u.matrix()) * &right).unwrap();
        let probe = lu_probe(&u, &rotated).unwrap();
        assert!(probe.realigned_singular_distance < 1e-10);
    }

    #[test]
    fn all_ones_array_builds_the_identity_gate() {
        let u = build_diagonal_unitary(&PhaseArray::all_ones(3));
        let report = certify(&u, 1e-10);
        assert!(report.is_unitary && report.is_tdual && !report.is_dual);
        assert_eq!(report.blocks.distinct_moduli.len(), 1);
        assert_eq!(report.blocks.distinct_moduli[0].count, 9);
        let text = report.render_text();
        assert!(text.contains("two-unitary: no"));
    }
}
