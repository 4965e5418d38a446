//! Iterative searches for biunimodular phase arrays and dual / 2-unitary
//! gates: the Fourier-projection map, its swap-twisted variant, and the two
//! polar-projection maps on unitaries.
//!
//! The Fourier-projection ("biuni") map transforms the current array and
//! projects every entry back onto the unit circle; its fixed points are
//! biunimodular arrays, i.e. dual gates. The swap-twisted variant multiplies
//! the array entrywise by the swap phase vector before each step, steering
//! the same dynamics toward arrays whose gates are 2-unitary. The polar maps
//! act on the gate itself: rearrange (realign, or realign followed by
//! partial transpose) and replace the result with its nearest unitary.
//!
//! Determinism is a hard contract: every realization derives its own
//! counter-based RNG stream from (rng_seed, stream index), all per-stream
//! computation is single-threaded, and ensembles parallelize across streams
//! only, merging results in stream order. Identical (seed, config) inputs
//! give bitwise-identical outcomes.
//!
//! Convergence rules (residual below convergence_tol for 10 consecutive
//! iterations, checked before the next step):
//!   biuni:        residual = max | |transform entry| - 1 |, and the torus
//!                 lock gates a full check D(U^R) <= tol
//!   biuni_swap:   the same torus lock gates a full check of both
//!                 correlation-route deviations D(U^R), D(U^G) <= tol
//!   polar_R:      residual = D(U^R)
//!   polar_GammaR: residual = max(D(U^R), D(U^G))
//! The torus band max | |t| - 1 | <= tol only bounds D(U^R) by about
//! 2*d*tol, so the full check is what guarantees the outcome contract:
//! a converged outcome always has D(U^R) <= tol (and D(U^G) <= tol for the
//! swap-twisted map). Orbits that lock onto the torus band without passing
//! the full check keep iterating, rechecked periodically until the cap.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::bipartite::BipartiteOperator;
use crate::diagonal::{build_diagonal_unitary, swap_phase_vector};
use crate::error::{Error, Result};
use crate::gates::root_of_unity;
use crate::phase::PhaseArray;
use crate::polar::polar_project;

/// Transformed entries with modulus below this are projected to phase 1.
pub const ZERO_PROJECTION_TOL: f64 = 1e-14;

/// Consecutive in-tolerance iterations required to declare convergence.
pub const CONVERGENCE_RUN: usize = 10;

/// Iterations between full correlation checks on a torus-locked orbit.
const LOCKED_RECHECK_PERIOD: usize = 100;

/// Desk-scale ensemble defaults.
pub const DEFAULT_REALIZATIONS: usize = 200;
pub const DEFAULT_ITERATIONS: usize = 2000;

/// The four search algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Fourier transform + phase projection on the array.
    Biuni,
    /// Entrywise swap-phase twist, then the biuni step.
    BiuniSwap,
    /// Polar projection of the realigned gate.
    PolarR,
    /// Polar projection of the realigned, partially transposed gate.
    PolarGammaR,
}

impl Algorithm {
    /// Stable lowercase token used on the command line and in files.
    pub fn token(self) -> &'static str {
        match self {
            Algorithm::Biuni => "biuni",
            Algorithm::BiuniSwap => "biuni-swap",
            Algorithm::PolarR => "polar-r",
            Algorithm::PolarGammaR => "polar-gamma-r",
        }
    }

    /// Parses a token as produced by `token`.
    pub fn parse(token: &str) -> Result<Self> {
        match token {
            "biuni" => Ok(Algorithm::Biuni),
            "biuni-swap" => Ok(Algorithm::BiuniSwap),
            "polar-r" => Ok(Algorithm::PolarR),
            "polar-gamma-r" => Ok(Algorithm::PolarGammaR),
            other => Err(Error::Parse(format!("unknown algorithm '{other}'"))),
        }
    }

    /// True for the two maps that iterate on phase arrays.
    pub fn iterates_on_arrays(self) -> bool {
        matches!(self, Algorithm::Biuni | Algorithm::BiuniSwap)
    }
}

/// Parameters of one search or ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub d: usize,
    pub algorithm: Algorithm,
    pub rng_seed: u64,
    pub max_iterations: usize,
    pub convergence_tol: f64,
    pub record_trace: bool,
}

impl SearchConfig {
    /// Validates dimension, iteration count, and tolerance.
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::DimensionTooSmall(self.d));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be >= 1".into()));
        }
        if !self.convergence_tol.is_finite() || self.convergence_tol <= 0.0 {
            return Err(Error::InvalidParameter("convergence_tol must be > 0".into()));
        }
        Ok(())
    }
}

/// Final object produced by a search.
#[derive(Debug, Clone)]
pub enum SearchResult {
    PhaseArray(PhaseArray),
    Unitary(BipartiteOperator),
}

impl SearchResult {
    /// The phase array, when the algorithm iterates on arrays.
    pub fn phase_array(&self) -> Option<&PhaseArray> {
        match self {
            SearchResult::PhaseArray(arr) => Some(arr),
            SearchResult::Unitary(_) => None,
        }
    }

    /// The gate: built from the array, or the iterated unitary itself.
    pub fn unitary(&self) -> BipartiteOperator {
        match self {
            SearchResult::PhaseArray(arr) => build_diagonal_unitary(arr),
            SearchResult::Unitary(u) => u.clone(),
        }
    }
}

/// One recorded iteration of a traced search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub iteration: usize,
    /// The algorithm's convergence residual at this iteration.
    pub residual: f64,
    pub delta_realign: f64,
    pub delta_partial_transpose: f64,
}

/// Result of one search realization.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub iterations_used: usize,
    pub delta_realign: f64,
    pub delta_partial_transpose: f64,
    pub converged: bool,
    /// True when any polar step met a numerically rank-deficient iterate.
    pub rank_deficiency_seen: bool,
    pub trace: Option<Vec<TracePoint>>,
}

/// Uniform random phase array drawn from the given generator.
pub fn random_phase_array(d: usize, rng: &mut impl Rng) -> PhaseArray {
    let entries: Vec<Complex64> = (0..d * d)
        .map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
        .collect();
    PhaseArray::from_entries(d, entries).expect("unit modulus by construction")
}

/// The RNG stream for one realization: seed selects the bank, stream splits it.
pub fn realization_rng(rng_seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);
    rng.set_stream(stream);
    rng
}

/// The initial array of realization `stream` under the given seed.
pub fn seeded_phase_array(d: usize, rng_seed: u64, stream: u64) -> PhaseArray {
    random_phase_array(d, &mut realization_rng(rng_seed, stream))
}

fn project_phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r < ZERO_PROJECTION_TOL {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// One Fourier-projection step: transform, then snap entries to the circle.
pub fn biuni_step(arr: &PhaseArray) -> PhaseArray {
    let entries = arr.fourier_transform().into_iter().map(project_phase).collect();
    PhaseArray::from_entries(arr.d(), entries).expect("unit modulus by construction")
}

/// One swap-twisted step: entrywise multiply by the swap phases, then step.
pub fn biuni_swap_step(arr: &PhaseArray) -> PhaseArray {
    let d = arr.d();
    let mu = swap_phase_vector(d).expect("d validated by the array");
    let twisted: Vec<Complex64> = arr
        .entries()
        .iter()
        .zip(mu.entries())
        .map(|(a, m)| a * m)
        .collect();
    let twisted = PhaseArray::from_entries(d, twisted).expect("unit modulus by construction");
    biuni_step(&twisted)
}

/// One polar-map step through the realignment; flag is true when the
/// rearranged iterate was numerically rank-deficient.
pub fn polar_map_realign(u: &BipartiteOperator) -> (BipartiteOperator, bool) {
    let p = polar_project(&u.realign());
    (
        BipartiteOperator::new(p.unitary).expect("projection preserves shape"),
        p.rank_deficient,
    )
}

/// One polar-map step through realignment followed by partial transpose.
pub fn polar_map_gamma_realign(u: &BipartiteOperator) -> (BipartiteOperator, bool) {
    let realigned = BipartiteOperator::new(u.realign()).expect("square");
    let p = polar_project(&realigned.partial_transpose());
    (
        BipartiteOperator::new(p.unitary).expect("projection preserves shape"),
        p.rank_deficient,
    )
}

/// In-place transform machinery reused across iterations of one realization.
struct ArrayStepper {
    d: usize,
    /// w^k table for k in 0..d.
    table: Vec<Complex64>,
    /// Swap phases, for the twisted map.
    mu: Option<Vec<Complex64>>,
    scratch: Vec<Complex64>,
    row_pass: Vec<Complex64>,
    transform: Vec<Complex64>,
}

impl ArrayStepper {
    fn new(d: usize, twisted: bool) -> Self {
        let table = (0..d).map(|k| root_of_unity(d as u64, k as i64)).collect();
        let mu = twisted.then(|| {
            swap_phase_vector(d)
                .expect("d >= 2 validated upstream")
                .entries()
                .to_vec()
        });
        Self {
            d,
            table,
            mu,
            scratch: vec![Complex64::new(0.0, 0.0); d * d],
            row_pass: vec![Complex64::new(0.0, 0.0); d * d],
            transform: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    /// Fills `self.transform` with the (twisted) normalized 2D DFT of
    /// `entries` and returns the torus residual max | |t| - 1 |.
    fn transform(&mut self, entries: &[Complex64]) -> f64 {
        let d = self.d;
        let src: &[Complex64] = match &self.mu {
            Some(mu) => {
                for i in 0..d * d {
                    self.scratch[i] = entries[i] * mu[i];
                }
                &self.scratch
            }
            None => entries,
        };
        for m in 0..d {
            for b in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for n in 0..d {
                    s += self.table[(b * n) % d] * src[m * d + n];
                }
                self.row_pass[m * d + b] = s;
            }
        }
        let scale = 1.0 / d as f64;
        let mut residual = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for m in 0..d {
                    s += self.table[(a * m) % d] * self.row_pass[m * d + b];
                }
                let t = s * scale;
                self.transform[a * d + b] = t;
                residual = residual.max((t.norm() - 1.0).abs());
            }
        }
        residual
    }

    /// Projects the stored transform onto the torus, writing into `entries`.
    fn project_into(&self, entries: &mut [Complex64]) {
        for (e, &t) in entries.iter_mut().zip(&self.transform) {
            *e = project_phase(t);
        }
    }
}

fn correlation_deltas(arr: &PhaseArray) -> (f64, f64) {
    (
        arr.realign_deviation_from_correlations(),
        arr.partial_transpose_deviation_from_correlations(),
    )
}

fn run_array_search(config: &SearchConfig, start: PhaseArray) -> SearchOutcome {
    let twisted = config.algorithm == Algorithm::BiuniSwap;
    let tol = config.convergence_tol;
    // The torus lock only bounds the correlation deltas by about 2*d*tol,
    // so it gates a full (more expensive) check of the actual contract.
    let full_check = |entries: &[Complex64]| -> (bool, f64, f64) {
        let arr = PhaseArray::from_entries(config.d, entries.to_vec())
            .expect("iterates stay unimodular");
        let (dr, dg) = correlation_deltas(&arr);
        let pass = if twisted {
            dr <= tol && dg <= tol
        } else {
            dr <= tol
        };
        (pass, dr, dg)
    };

    let mut stepper = ArrayStepper::new(config.d, twisted);
    let mut entries = start.entries().to_vec();
    let mut trace = config.record_trace.then(Vec::new);
    let mut consecutive = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut checked_at: Option<usize> = None;

    loop {
        let residual = stepper.transform(&entries);
        if let Some(points) = trace.as_mut() {
            let arr = PhaseArray::from_entries(config.d, entries.clone())
                .expect("iterates stay unimodular");
            let (dr, dg) = correlation_deltas(&arr);
            points.push(TracePoint {
                iteration: iterations,
                residual,
                delta_realign: dr,
                delta_partial_transpose: dg,
            });
        }
        if residual <= tol {
            consecutive += 1;
        } else {
            consecutive = 0;
            checked_at = None;
        }
        if consecutive >= CONVERGENCE_RUN {
            let due = match checked_at {
                None => true,
                Some(at) => iterations - at >= LOCKED_RECHECK_PERIOD,
            };
            if due {
                checked_at = Some(iterations);
                if full_check(&entries).0 {
                    converged = true;
                    break;
                }
            }
        }
        if iterations >= config.max_iterations {
            break;
        }
        stepper.project_into(&mut entries);
        iterations += 1;
    }

    let arr = PhaseArray::from_entries(config.d, entries).expect("iterates stay unimodular");
    let (delta_realign, delta_partial_transpose) = correlation_deltas(&arr);
    if !converged && consecutive >= CONVERGENCE_RUN {
        // The cap can land between periodic rechecks of a locked orbit.
        converged = if twisted {
            delta_realign <= tol && delta_partial_transpose <= tol
        } else {
            delta_realign <= tol
        };
    }
    SearchOutcome {
        result: SearchResult::PhaseArray(arr),
        iterations_used: iterations,
        delta_realign,
        delta_partial_transpose,
        converged,
        rank_deficiency_seen: false,
        trace,
    }
}

fn run_polar_search(config: &SearchConfig, start: PhaseArray) -> SearchOutcome {
    let gamma = config.algorithm == Algorithm::PolarGammaR;
    let mut u = build_diagonal_unitary(&start);
    let mut trace = config.record_trace.then(Vec::new);
    let mut consecutive = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut rank_deficiency_seen = false;
    let mut deltas = (u.realign_deviation(), u.partial_transpose_deviation());

    loop {
        let residual = if gamma {
            deltas.0.max(deltas.1)
        } else {
            deltas.0
        };
        if let Some(points) = trace.as_mut() {
            points.push(TracePoint {
                iteration: iterations,
                residual,
                delta_realign: deltas.0,
                delta_partial_transpose: deltas.1,
            });
        }
        if residual <= config.convergence_tol {
            consecutive += 1;
        } else {
            consecutive = 0;
        }
        if consecutive >= CONVERGENCE_RUN {
            converged = true;
            break;
        }
        if iterations >= config.max_iterations {
            break;
        }
        let (next, flagged) = if gamma {
            polar_map_gamma_realign(&u)
        } else {
            polar_map_realign(&u)
        };
        u = next;
        rank_deficiency_seen |= flagged;
        iterations += 1;
        deltas = (u.realign_deviation(), u.partial_transpose_deviation());
    }

    SearchOutcome {
        result: SearchResult::Unitary(u),
        iterations_used: iterations,
        delta_realign: deltas.0,
        delta_partial_transpose: deltas.1,
        converged,
        rank_deficiency_seen,
        trace,
    }
}

fn run_from(config: &SearchConfig, start: PhaseArray) -> SearchOutcome {
    if config.algorithm.iterates_on_arrays() {
        run_array_search(config, start)
    } else {
        run_polar_search(config, start)
    }
}

/// Runs realization `stream` of the configured search.
pub fn run_search_stream(config: &SearchConfig, stream: u64) -> Result<SearchOutcome> {
    config.validate()?;
    let start = seeded_phase_array(config.d, config.rng_seed, stream);
    Ok(run_from(config, start))
}

/// Runs the search on stream 0.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    run_search_stream(config, 0)
}

/// One ensemble row: the outcome of a stream plus its un-iterated control.
#[derive(Debug, Clone)]
pub struct EnsembleRow {
    pub stream: u64,
    pub outcome: SearchOutcome,
    /// D(U^R) of the initial random array, before any iteration.
    pub control_delta_realign: f64,
    /// D(U^G) of the initial random array.
    pub control_delta_partial_transpose: f64,
}

/// One fixed-width histogram bin over both populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count_random: u64,
    pub count_iterated: u64,
}

/// Fixed-width histogram of a deviation statistic, random vs iterated.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bins: Vec<HistogramBin>,
}

/// Number of fixed-width histogram bins.
pub const HISTOGRAM_BINS: usize = 100;

impl Histogram {
    /// Bins both populations over [0, max observed] with width max/100.
    pub fn build(random: &[f64], iterated: &[f64]) -> Self {
        let max = random
            .iter()
            .chain(iterated)
            .fold(0.0f64, |acc, &v| acc.max(v));
        let max = if max > 0.0 { max } else { 1.0 };
        let width = max / HISTOGRAM_BINS as f64;
        let index = |v: f64| ((v / width) as usize).min(HISTOGRAM_BINS - 1);
        let mut bins: Vec<HistogramBin> = (0..HISTOGRAM_BINS)
            .map(|i| HistogramBin {
                lo: i as f64 * width,
                hi: (i + 1) as f64 * width,
                count_random: 0,
                count_iterated: 0,
            })
            .collect();
        for &v in random {
            bins[index(v)].count_random += 1;
        }
        for &v in iterated {
            bins[index(v)].count_iterated += 1;
        }
        Self { bins }
    }
}

/// A full ensemble: per-stream rows plus the two deviation histograms.
#[derive(Debug, Clone)]
pub struct EnsembleResult {
    pub config: SearchConfig,
    pub rows: Vec<EnsembleRow>,
    pub histogram_realign: Histogram,
    pub histogram_partial_transpose: Histogram,
}

impl EnsembleResult {
    /// Fraction of rows with final D(U^R) at or below `tol`.
    pub fn dual_fraction(&self, tol: f64) -> f64 {
        let hits = self
            .rows
            .iter()
            .filter(|r| r.outcome.delta_realign <= tol)
            .count();
        hits as f64 / self.rows.len().max(1) as f64
    }

    /// Smallest final D(U^G) across rows.
    pub fn min_delta_partial_transpose(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.outcome.delta_partial_transpose)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Runs `n_realizations` independent streams (in parallel, merged in stream
/// order) and bins the final deviations against the un-iterated controls.
pub fn run_ensemble(config: &SearchConfig, n_realizations: usize) -> Result<EnsembleResult> {
    config.validate()?;
    if n_realizations == 0 {
        return Err(Error::InvalidParameter("n_realizations must be >= 1".into()));
    }
    let rows: Vec<EnsembleRow> = (0..n_realizations as u64)
        .into_par_iter()
        .map(|stream| {
            let start = seeded_phase_array(config.d, config.rng_seed, stream);
            let (cr, cg) = correlation_deltas(&start);
            let outcome = run_from(config, start);
            EnsembleRow {
                stream,
                outcome,
                control_delta_realign: cr,
                control_delta_partial_transpose: cg,
            }
        })
        .collect();
    let random_r: Vec<f64> = rows.iter().map(|r| r.control_delta_realign).collect();
    let random_g: Vec<f64> = rows
        .iter()
        .map(|r| r.control_delta_partial_transpose)
        .collect();
    let iter_r: Vec<f64> = rows.iter().map(|r| r.outcome.delta_realign).collect();
    let iter_g: Vec<f64> = rows
        .iter()
        .map(|r| r.outcome.delta_partial_transpose)
        .collect();
    Ok(EnsembleResult {
        config: *config,
        rows,
        histogram_realign: Histogram::build(&random_r, &iter_r),
        histogram_partial_transpose: Histogram::build(&random_g, &iter_g),
    })
}
