//! Cross-module behavior checks: the polar-map searches produce what the
//! projection searches cannot reach directly, traced runs expose their full
//! convergence history, and the cheap gate fingerprints separate the three
//! reference gates from each other.

use biuni::certify::{certify, lu_probe};
use biuni::diagonal::build_diagonal_unitary;
use biuni::known::reference_arrays;
use biuni::search::{run_ensemble, run_search_stream, Algorithm, SearchConfig, SearchResult};

/// The polar return map at d=3 converges for more than half of random
/// starts within 1000 iterations, and every converged run ends at a gate
/// whose realignment is unitary at the tolerance.
#[test]
fn polar_realign_search_converges_for_most_d3_starts() {
    let config = SearchConfig {
        d: 3,
        algorithm: Algorithm::PolarR,
        rng_seed: 1,
        max_iterations: 1000,
        convergence_tol: 1e-6,
        record_trace: false,
    };
    let ensemble = run_ensemble(&config, 200).expect("valid config");
    let converged: Vec<_> = ensemble.rows.iter().filter(|r| r.outcome.converged).collect();
    assert!(
        converged.len() * 2 > 200,
        "only {} of 200 polar runs converged",
        converged.len(),
    );
    for row in converged {
        assert!(row.outcome.delta_realign <= 1e-6);
        assert!(
            matches!(row.outcome.result, SearchResult::Unitary(_)),
            "polar searches iterate on unitaries, not arrays",
        );
    }
}

/// The alternating polar map drives a d=6 random start all the way to a
/// 2-unitary, which the projection search almost never does; the find
/// passes certification by deviations even though, unlike gates of
/// diagonal form, it has no zero pattern and no stabilizer symmetry.
#[test]
fn polar_alternating_search_reaches_a_d6_two_unitary() {
    let config = SearchConfig {
        d: 6,
        algorithm: Algorithm::PolarGammaR,
        rng_seed: 1,
        max_iterations: 500,
        convergence_tol: 1e-6,
        record_trace: false,
    };
    let outcome = run_search_stream(&config, 16).expect("valid config");
    assert!(outcome.converged, "stream 16 is a frozen converging start");
    assert!(outcome.delta_realign <= 1e-6);
    assert!(outcome.delta_partial_transpose <= 1e-6);

    let gate = outcome.result.unitary();
    let report = certify(&gate, 1e-6);
    assert!(report.is_two_unitary);
    assert!(report.delta_unitary <= 1e-12);
    assert!(
        !report.blocks.structured,
        "a generic polar find should not land on the diagonal-form zero pattern",
    );
    for marginal in &report.marginals {
        assert!(marginal.residual_rearrangement <= 1e-6);
        assert!(marginal.cross_check <= 1e-12);
    }
}

/// A traced run records one point per pass from the initial array to the
/// final one, and the last point restates the outcome's deltas exactly.
#[test]
fn traced_runs_expose_their_full_history() {
    for algorithm in [Algorithm::Biuni, Algorithm::BiuniSwap, Algorithm::PolarR] {
        let config = SearchConfig {
            d: 3,
            algorithm,
            rng_seed: 5,
            max_iterations: 400,
            convergence_tol: 1e-6,
            record_trace: true,
        };
        let outcome = run_search_stream(&config, 2).expect("valid config");
        let trace = outcome.trace.as_ref().expect("trace was requested");
        assert_eq!(trace.len(), outcome.iterations_used + 1);
        for (i, point) in trace.iter().enumerate() {
            assert_eq!(point.iteration, i);
        }
        let last = trace.last().unwrap();
        assert_eq!(last.delta_realign.to_bits(), outcome.delta_realign.to_bits());
        assert_eq!(
            last.delta_partial_transpose.to_bits(),
            outcome.delta_partial_transpose.to_bits(),
        );
    }
}

/// The cheap fingerprints separate all three reference gates pairwise; the
/// second and third even share their entry-modulus multiset and are told
/// apart by eigenvalue structure alone (5 vs 3 phase classes). Realigned
/// singular values are blind here since every dual gate has them all equal
/// to one. Self-probes never distinguish.
#[test]
fn fingerprints_separate_the_reference_gates() {
    let gates: Vec<_> = reference_arrays()
        .iter()
        .map(build_diagonal_unitary)
        .collect();
    let expected_classes = [6usize, 5, 3];

    for (i, gate) in gates.iter().enumerate() {
        let own = lu_probe(gate, gate).unwrap();
        assert!(!own.distinguished, "gate {} distinguished from itself", i + 1);
        assert_eq!(own.eigenphase_classes, (expected_classes[i], expected_classes[i]));
        assert!(own.realigned_singular_distance <= 1e-12);
    }

    for i in 0..3 {
        for j in (i + 1)..3 {
            let probe = lu_probe(&gates[i], &gates[j]).unwrap();
            assert!(
                probe.distinguished,
                "gates {} and {} not distinguished",
                i + 1,
                j + 1,
            );
            assert_eq!(
                probe.eigenphase_classes,
                (expected_classes[i], expected_classes[j]),
            );
            // Both gates are dual, so the realigned singular values are all
            // one on each side and carry no signal.
            assert!(probe.realigned_singular_distance <= 1e-12);
        }
    }

    let second_third = lu_probe(&gates[1], &gates[2]).unwrap();
    assert!(
        second_third.modulus_distance <= 1e-12,
        "the second and third gates share their entry-modulus multiset",
    );
    assert!(second_third.eigenphase_distance > 1.0);
}
