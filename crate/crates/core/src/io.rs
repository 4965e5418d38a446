//! Serialization of the library's artifacts: matrix and phase-array JSON,
//! search-outcome and certification-report JSON, circuit JSON, and the CSV
//! tables for correlation spectra, ensembles, and histograms.
//!
//! All formats are deterministic. Matrix JSON is
//! {"rows": n, "cols": n, "entries": [[re, im], ...]} in row-major order;
//! phase-array JSON is {"d", "root_order": int|null, "exponents":
//! [int,...]|null, "entries": [[re, im], ...]}. Floats use the shortest
//! decimal representation that round-trips, with '.' as the decimal
//! separator regardless of locale. CSV headers are fixed:
//! spectrum "k,l,re,im"; ensemble
//! "seed,iterations,delta_R,delta_Gamma,converged" (seed is the RNG stream
//! index of the realization under the configured base seed); histogram
//! "bin_lo,bin_hi,count_random,count_iterated".

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::certify::CertificationReport;
use crate::circuit::CircuitDescription;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::phase::{CorrelationSpectrum, PhaseArray};
use crate::search::{EnsembleResult, Histogram, SearchConfig, SearchOutcome, SearchResult};

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    fn of(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    fn into_matrix(self) -> Result<ComplexMatrix> {
        let entries = self
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.rows, self.cols, entries)
    }
}

/// Renders a matrix as JSON.
pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::of(m)).expect("serialization is infallible")
}

/// Parses a matrix from JSON.
pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    let dto: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.into_matrix()
}

#[derive(Serialize, Deserialize)]
struct PhaseArrayJson {
    d: usize,
    root_order: Option<u64>,
    exponents: Option<Vec<i64>>,
    entries: Vec<[f64; 2]>,
}

impl PhaseArrayJson {
    fn of(arr: &PhaseArray) -> Self {
        let (root_order, exponents) = match arr.root_form() {
            Some(rf) => (
                Some(rf.order),
                Some(rf.exponents.iter().map(|&e| e as i64).collect()),
            ),
            None => (None, None),
        };
        Self {
            d: arr.d(),
            root_order,
            exponents,
            entries: arr.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    fn into_array(self) -> Result<PhaseArray> {
        let entries: Vec<Complex64> = self
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        match (self.root_order, self.exponents) {
            (Some(order), Some(exps)) => {
                let arr = PhaseArray::from_exponents(self.d, order, &exps)?;
                if !entries.is_empty() {
                    let given = PhaseArray::from_entries(self.d, entries)?;
                    if arr.max_entry_distance(&given) > 1e-9 {
                        return Err(Error::Parse(
                            "entries disagree with the root-of-unity exponents".into(),
                        ));
                    }
                }
                Ok(arr)
            }
            (None, None) => PhaseArray::from_entries(self.d, entries),
            _ => Err(Error::Parse(
                "root_order and exponents must be given together".into(),
            )),
        }
    }
}

/// Renders a phase array as JSON, keeping its exact root form if known.
pub fn phase_array_to_json(arr: &PhaseArray) -> String {
    serde_json::to_string_pretty(&PhaseArrayJson::of(arr)).expect("serialization is infallible")
}

/// Parses a phase array from JSON, validating unit moduli and, when a root
/// form is present, its agreement with the listed entries.
pub fn phase_array_from_json(s: &str) -> Result<PhaseArray> {
    let dto: PhaseArrayJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.into_array()
}

#[derive(Serialize)]
struct SearchOutcomeJson {
    algorithm: &'static str,
    d: usize,
    rng_seed: u64,
    stream: u64,
    max_iterations: usize,
    convergence_tol: f64,
    iterations_used: usize,
    #[serde(rename = "delta_R")]
    delta_r: f64,
    #[serde(rename = "delta_Gamma")]
    delta_gamma: f64,
    converged: bool,
    rank_deficiency_seen: bool,
    phase_array: Option<PhaseArrayJson>,
    unitary: Option<MatrixJson>,
    trace: Option<Vec<(usize, f64, f64, f64)>>,
}

/// Renders a search outcome (with its provenance) as JSON.
pub fn search_outcome_to_json(config: &SearchConfig, stream: u64, out: &SearchOutcome) -> String {
    let (phase_array, unitary) = match &out.result {
        SearchResult::PhaseArray(arr) => (Some(PhaseArrayJson::of(arr)), None),
        SearchResult::Unitary(u) => (None, Some(MatrixJson::of(u.matrix()))),
    };
    let dto = SearchOutcomeJson {
        algorithm: config.algorithm.token(),
        d: config.d,
        rng_seed: config.rng_seed,
        stream,
        max_iterations: config.max_iterations,
        convergence_tol: config.convergence_tol,
        iterations_used: out.iterations_used,
        delta_r: out.delta_realign,
        delta_gamma: out.delta_partial_transpose,
        converged: out.converged,
        rank_deficiency_seen: out.rank_deficiency_seen,
        phase_array,
        unitary,
        trace: out.trace.as_ref().map(|points| {
            points
                .iter()
                .map(|p| {
                    (
                        p.iteration,
                        p.residual,
                        p.delta_realign,
                        p.delta_partial_transpose,
                    )
                })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&dto).expect("serialization is infallible")
}

#[derive(Serialize)]
struct BlockReportJson {
    class: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    unitarity_residual: f64,
    circulant_residual: f64,
}

#[derive(Serialize)]
struct ModulusClusterJson {
    value: f64,
    count: usize,
}

#[derive(Serialize)]
struct BlockSummaryJson {
    d: usize,
    structured: bool,
    off_pattern_max: f64,
    blocks: Vec<BlockReportJson>,
    distinct_moduli: Vec<ModulusClusterJson>,
}

#[derive(Serialize)]
struct StabilizerJson {
    i: usize,
    j: usize,
    vector_deviation: f64,
    overlap_deviation: f64,
}

#[derive(Serialize)]
struct MarginalJson {
    cut: &'static str,
    residual_rearrangement: f64,
    residual_partial_trace: f64,
    cross_check: f64,
}

#[derive(Serialize)]
struct CertificationJson {
    d: usize,
    tol: f64,
    delta_unitary: f64,
    delta_realign: f64,
    delta_partial_transpose: f64,
    is_unitary: bool,
    is_dual: bool,
    is_tdual: bool,
    is_two_unitary: bool,
    blocks: BlockSummaryJson,
    stabilizers: Vec<StabilizerJson>,
    max_stabilizer_deviation: f64,
    marginals: Vec<MarginalJson>,
}

/// Renders a certification report as JSON with a stable field schema.
pub fn certification_to_json(report: &CertificationReport) -> String {
    let dto = CertificationJson {
        d: report.d,
        tol: report.tol,
        delta_unitary: report.delta_unitary,
        delta_realign: report.delta_realign,
        delta_partial_transpose: report.delta_partial_transpose,
        is_unitary: report.is_unitary,
        is_dual: report.is_dual,
        is_tdual: report.is_tdual,
        is_two_unitary: report.is_two_unitary,
        blocks: BlockSummaryJson {
            d: report.blocks.d,
            structured: report.blocks.structured,
            off_pattern_max: report.blocks.off_pattern_max,
            blocks: report
                .blocks
                .blocks
                .iter()
                .map(|b| BlockReportJson {
                    class: b.class,
                    rows: b.rows.clone(),
                    cols: b.cols.clone(),
                    unitarity_residual: b.unitarity_residual,
                    circulant_residual: b.circulant_residual,
                })
                .collect(),
            distinct_moduli: report
                .blocks
                .distinct_moduli
                .iter()
                .map(|c| ModulusClusterJson {
                    value: c.value,
                    count: c.count,
                })
                .collect(),
        },
        stabilizers: report
            .stabilizers
            .iter()
            .map(|s| StabilizerJson {
                i: s.i,
                j: s.j,
                vector_deviation: s.vector_deviation,
                overlap_deviation: s.overlap_deviation,
            })
            .collect(),
        max_stabilizer_deviation: report.max_stabilizer_deviation,
        marginals: report
            .marginals
            .iter()
            .map(|m| MarginalJson {
                cut: m.cut.label(),
                residual_rearrangement: m.residual_rearrangement,
                residual_partial_trace: m.residual_partial_trace,
                cross_check: m.cross_check,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("serialization is infallible")
}

#[derive(Serialize)]
struct GateOpJson {
    gate: &'static str,
    adjoint: bool,
    control: Option<usize>,
    target: Option<usize>,
}

#[derive(Serialize)]
struct CircuitJson {
    d: usize,
    kind: &'static str,
    phase_array: PhaseArrayJson,
    gates: Vec<GateOpJson>,
}

/// Renders a circuit description as JSON, gates in application order.
pub fn circuit_to_json(circuit: &CircuitDescription) -> String {
    let dto = CircuitJson {
        d: circuit.d(),
        kind: circuit.kind().token(),
        phase_array: PhaseArrayJson::of(circuit.array()),
        gates: circuit
            .gates()
            .iter()
            .map(|g| GateOpJson {
                gate: g.gate.token(),
                adjoint: g.adjoint,
                control: g.control,
                target: g.target,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("serialization is infallible")
}

/// Renders a correlation spectrum as CSV with header k,l,re,im.
pub fn spectrum_to_csv(spectrum: &CorrelationSpectrum) -> String {
    let mut out = String::from("k,l,re,im\n");
    let d = spectrum.d();
    for k in 0..d {
        for l in 0..d {
            let v = spectrum.value(k, l);
            writeln!(out, "{k},{l},{},{}", v.re, v.im).expect("string write");
        }
    }
    out
}

/// Renders ensemble rows as CSV with header
/// seed,iterations,delta_R,delta_Gamma,converged.
pub fn ensemble_to_csv(ensemble: &EnsembleResult) -> String {
    let mut out = String::from("seed,iterations,delta_R,delta_Gamma,converged\n");
    for row in &ensemble.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.stream,
            row.outcome.iterations_used,
            row.outcome.delta_realign,
            row.outcome.delta_partial_transpose,
            row.outcome.converged
        )
        .expect("string write");
    }
    out
}

/// Renders a histogram as CSV with header
/// bin_lo,bin_hi,count_random,count_iterated.
pub fn histogram_to_csv(histogram: &Histogram) -> String {
    let mut out = String::from("bin_lo,bin_hi,count_random,count_iterated\n");
    for bin in &histogram.bins {
        writeln!(
            out,
            "{},{},{},{}",
            bin.lo, bin.hi, bin.count_random, bin.count_iterated
        )
        .expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::certify;
    use crate::circuit::DecompositionKind;
    use crate::diagonal::build_diagonal_unitary;
    use crate::gates::fourier;
    use crate::known::reference_array_1;
    use crate::phase::gauss_product;
    use crate::search::{run_ensemble, Algorithm};

    #[test]
    fn matrix_json_round_trips_exactly() {
        let m = fourier(3);
        let s = matrix_to_json(&m);
        let back = matrix_from_json(&s).unwrap();
        assert_eq!(m.data(), back.data());
        assert!(s.starts_with("{\n  \"rows\": 3,\n  \"cols\": 3,"));
    }

    #[test]
    fn phase_array_json_keeps_the_root_form() {
        let arr = reference_array_1();
        let s = phase_array_to_json(&arr);
        assert!(s.contains("\"root_order\": 6"));
        let back = phase_array_from_json(&s).unwrap();
        assert_eq!(back.root_form().unwrap(), arr.root_form().unwrap());
        assert!(back.max_entry_distance(&arr) < 1e-15);
    }

    #[test]
    fn phase_array_json_without_root_form_uses_null() {
        let arr = crate::search::seeded_phase_array(2, 3, 0);
        let s = phase_array_to_json(&arr);
        assert!(s.contains("\"root_order\": null"));
        let back = phase_array_from_json(&s).unwrap();
        assert!(back.max_entry_distance(&arr) < 1e-15);
    }

    #[test]
    fn inconsistent_root_form_is_rejected() {
        let s = r#"{"d":2,"root_order":2,"exponents":[0,0,0,1],
                    "entries":[[1,0],[1,0],[1,0],[1,0]]}"#;
        assert!(phase_array_from_json(s).is_err());
    }

    #[test]
    fn search_outcome_json_embeds_the_phase_array() {
        let config = crate::search::SearchConfig {
            d: 2,
            algorithm: Algorithm::Biuni,
            rng_seed: 1,
            max_iterations: 50,
            convergence_tol: 1e-6,
            record_trace: false,
        };
        let out = crate::search::run_search(&config).unwrap();
        let s = search_outcome_to_json(&config, 0, &out);
        assert!(s.contains("\"delta_R\""));
        assert!(s.contains("\"delta_Gamma\""));
        assert!(s.contains("\"phase_array\""));
        assert!(s.contains("\"algorithm\": \"biuni\""));
    }

    #[test]
    fn certification_json_has_the_stable_top_level_fields() {
        let u = build_diagonal_unitary(&gauss_product(3));
        let report = certify(&u, 1e-10);
        let s = certification_to_json(&report);
        for key in [
            "\"delta_unitary\"",
            "\"delta_realign\"",
            "\"delta_partial_transpose\"",
            "\"is_two_unitary\": true",
            "\"distinct_moduli\"",
            "\"marginals\"",
        ] {
            assert!(s.contains(key), "missing {key}");
        }
    }

    #[test]
    fn circuit_json_lists_gates_in_application_order() {
        let circuit = CircuitDescription::new(gauss_product(3), DecompositionKind::Standard);
        let s = circuit_to_json(&circuit);
        let p = s.find("\"gate\": \"P\"").unwrap();
        let fdag = s.find("\"gate\": \"Fdag\"").unwrap();
        let dpos = s.find("\"gate\": \"D\"").unwrap();
        assert!(p < fdag && fdag < dpos);
        assert!(s.contains("\"kind\": \"standard\""));
    }

    #[test]
    fn csv_outputs_have_the_frozen_headers_and_shapes() {
        let arr = gauss_product(3);
        let spec_csv = spectrum_to_csv(&arr.correlation_spectrum(false));
        assert!(spec_csv.starts_with("k,l,re,im\n"));
        assert_eq!(spec_csv.lines().count(), 1 + 9);

        let config = crate::search::SearchConfig {
            d: 2,
            algorithm: Algorithm::Biuni,
            rng_seed: 5,
            max_iterations: 100,
            convergence_tol: 1e-6,
            record_trace: false,
        };
        let ensemble = run_ensemble(&config, 4).unwrap();
        let csv = ensemble_to_csv(&ensemble);
        assert!(csv.starts_with("seed,iterations,delta_R,delta_Gamma,converged\n"));
        assert_eq!(csv.lines().count(), 1 + 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,"));

        let h = histogram_to_csv(&ensemble.histogram_realign);
        assert!(h.starts_with("bin_lo,bin_hi,count_random,count_iterated\n"));
        assert_eq!(h.lines().count(), 1 + 100);
    }
}
