//! Command-line front end for constructing, searching, and certifying
//! dual-unitary and 2-unitary gates built from phase arrays.
//!
//! Subcommands: `construct` builds a phase array (quadratic exponents, a
//! bundled reference array, a Gauss-sequence product, or a file) and writes
//! its JSON plus optional gate/circuit files; `verify` certifies an array or
//! gate file and exits 0 only when the requested properties hold; `search`
//! writes converged outcomes of seeded searches; `ensemble` writes per-seed
//! CSV rows and deviation histograms; `replay` re-runs a recorded command
//! and checks that every output is reproduced byte for byte.
//!
//! Exit codes: 0 success (and, for verify, properties hold), 1 properties
//! or reproduction failed, 2 usage, parse, or input errors. The environment
//! variable BIUNI_THREADS caps the worker threads used by ensembles.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

mod commands;
mod manifest;

#[derive(Parser)]
#[command(name = "biuni", version, about = "Phase-array gate construction, search, and certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a phase array and write it (plus optional gate/circuit files).
    Construct {
        #[command(subcommand)]
        source: Source,
    },
    /// Certify a phase-array or gate-matrix JSON file.
    Verify(VerifyArgs),
    /// Run seeded searches and write converged outcomes as JSON.
    Search(SearchArgs),
    /// Run a seeded ensemble and write CSV rows plus histograms.
    Ensemble(EnsembleArgs),
    /// Re-run a recorded command and check outputs are byte-identical.
    Replay {
        /// Manifest file written by a previous run.
        manifest: PathBuf,
    },
}

#[derive(Subcommand)]
enum Source {
    /// Array with exponents c_aa a^2 + c_ab ab + c_bb b^2 (mod d).
    Quadratic {
        /// Local dimension d >= 2.
        d: usize,
        #[arg(allow_negative_numbers = true)]
        c_aa: i64,
        #[arg(allow_negative_numbers = true)]
        c_ab: i64,
        #[arg(allow_negative_numbers = true)]
        c_bb: i64,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// One of the bundled d = 6 reference arrays: L1, L2, or L3.
    Known {
        name: String,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Product of two Gauss sequences (biunimodular for every d >= 2).
    GaussProduct {
        /// Local dimension d >= 2.
        d: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Load a phase-array JSON file.
    File {
        path: PathBuf,
        #[command(flatten)]
        out: ConstructOut,
    },
}

#[derive(Args)]
struct ConstructOut {
    /// Output path for the phase-array JSON.
    #[arg(long)]
    out: PathBuf,
    /// Also write the gate matrix JSON here.
    #[arg(long)]
    unitary: Option<PathBuf>,
    /// Also write the circuit JSON here.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Use the symmetric circuit shape in the circuit file.
    #[arg(long)]
    symmetric: bool,
    /// Write autocorrelation spectra as <prefix>.autocorrelation.csv and
    /// <prefix>.twisted.csv.
    #[arg(long)]
    spectrum: Option<String>,
    /// Manifest path (default: <out>.manifest.json).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Phase-array or gate-matrix JSON file.
    input: PathBuf,
    /// Tolerance for every requested property.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also require the difference-class block structure with unitary blocks.
    #[arg(long)]
    blocks: bool,
    /// Also require every shift/clock stabilizer to fix the induced state.
    #[arg(long)]
    stabilizers: bool,
    /// Also require the Fourier-conjugated gate to be a 2-unitary complex
    /// Hadamard matrix (all entry moduli 1/d).
    #[arg(long)]
    chm: bool,
    /// Write the report JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the text report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Manifest path (default: none unless files are written).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Algorithm: biuni, biuni-swap, polar-r, or polar-gamma-r.
    algorithm: String,
    /// Local dimension d >= 2.
    d: usize,
    /// Number of seeded realizations (streams 0..seeds).
    #[arg(long, default_value_t = biuni::search::DEFAULT_REALIZATIONS)]
    seeds: usize,
    /// Iteration cap per realization.
    #[arg(long, default_value_t = biuni::search::DEFAULT_ITERATIONS)]
    iters: usize,
    /// Convergence tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Base RNG seed; realization k draws from stream k.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Record per-iteration deviation traces in outcome files.
    #[arg(long)]
    trace: bool,
    /// Directory for converged outcome JSON files.
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (default: <out>/manifest.json).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    /// Algorithm: biuni, biuni-swap, polar-r, or polar-gamma-r.
    algorithm: String,
    /// Local dimension d >= 2.
    d: usize,
    /// Number of seeded realizations (streams 0..seeds).
    #[arg(long, default_value_t = biuni::search::DEFAULT_REALIZATIONS)]
    seeds: usize,
    /// Iteration cap per realization.
    #[arg(long, default_value_t = biuni::search::DEFAULT_ITERATIONS)]
    iters: usize,
    /// Convergence tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Base RNG seed; realization k draws from stream k.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path (one row per realization).
    #[arg(long)]
    out: PathBuf,
    /// Histogram CSV prefix: writes <prefix>.delta_R.csv and
    /// <prefix>.delta_Gamma.csv.
    #[arg(long)]
    histogram: Option<String>,
    /// Manifest path (default: <out>.manifest.json).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn main() {
    if let Ok(value) = std::env::var("BIUNI_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Clap exits 0 for --help/--version and 2 for usage errors.
        Err(e) => e.exit(),
    };
    let code = match commands::dispatch(cli.command, true) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}
