//! Implementations of the CLI subcommands. Every command that writes files
//! records a manifest (unless invoked through `replay`, which suppresses
//! recording so a replayed run never re-records itself).

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use std::path::{Path, PathBuf};

use biuni::bipartite::BipartiteOperator;
use biuni::certify::{certify, CertificationReport};
use biuni::circuit::{CircuitDescription, DecompositionKind};
use biuni::diagonal::{build_diagonal_unitary, hadamard_variant, HadamardSide};
use biuni::io;
use biuni::known::reference_array;
use biuni::phase::gauss_product;
use biuni::quadratic::{
    modular_solutions_dual, modular_solutions_tdual, quadratic_ansatz, ModularSolutionSet,
    QuadraticCoefficients,
};
use biuni::search::{run_ensemble, Algorithm, SearchConfig};

use crate::manifest::{write_atomic, RunManifest};
use crate::{Cli, Command, EnsembleArgs, SearchArgs, Source, VerifyArgs};

/// Runs one subcommand and returns the process exit code.
pub fn dispatch(command: Command, record_manifest: bool) -> Result<i32> {
    match command {
        Command::Construct { source } => construct(source, record_manifest),
        Command::Verify(args) => verify(args, record_manifest),
        Command::Search(args) => search(args, record_manifest),
        Command::Ensemble(args) => ensemble(args, record_manifest),
        Command::Replay { manifest } => replay(&manifest),
    }
}

fn format_solutions(set: &ModularSolutionSet) -> String {
    let inner: Vec<String> = set
        .solutions()
        .iter()
        .map(|(k, l)| format!("({k},{l})"))
        .collect();
    format!("{{{}}}", inner.join(", "))
}

fn construct(source: Source, record_manifest: bool) -> Result<i32> {
    let (arr, label, out) = match source {
        Source::Quadratic {
            d,
            c_aa,
            c_ab,
            c_bb,
            out,
        } => {
            let coeffs = QuadraticCoefficients { c_aa, c_ab, c_bb };
            let arr = quadratic_ansatz(d, coeffs)?;
            let dual = modular_solutions_dual(d, coeffs);
            let tdual = modular_solutions_tdual(d, coeffs);
            println!(
                "quadratic exponents d={d}: F(a,b) = {c_aa} a^2 + {c_ab} ab + {c_bb} b^2 (mod {d})"
            );
            println!(
                "dual shift system:   {} -> {}",
                format_solutions(&dual),
                if dual.only_trivial() { "dual" } else { "not dual" }
            );
            println!(
                "T-dual shift system: {} -> {}",
                format_solutions(&tdual),
                if tdual.only_trivial() {
                    "T-dual"
                } else {
                    "not T-dual"
                }
            );
            (arr, format!("quadratic d={d}"), out)
        }
        Source::Known { name, out } => {
            let arr = reference_array(&name)
                .ok_or_else(|| anyhow!("unknown reference array '{name}' (expected L1, L2, or L3)"))?;
            (arr, format!("reference {name}"), out)
        }
        Source::GaussProduct { d, out } => {
            if d < 2 {
                bail!("dimension must be at least 2, got {d}");
            }
            (gauss_product(d), format!("gauss-product d={d}"), out)
        }
        Source::File { path, out } => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let arr = io::phase_array_from_json(&text)?;
            (arr, format!("file {}", path.display()), out)
        }
    };

    let mut outputs: Vec<PathBuf> = Vec::new();
    write_atomic(&out.out, io::phase_array_to_json(&arr).as_bytes())?;
    outputs.push(out.out.clone());

    if let Some(path) = &out.unitary {
        let u = build_diagonal_unitary(&arr);
        write_atomic(path, io::matrix_to_json(u.matrix()).as_bytes())?;
        outputs.push(path.clone());
    }
    if let Some(path) = &out.circuit {
        let kind = if out.symmetric {
            DecompositionKind::Symmetric
        } else {
            DecompositionKind::Standard
        };
        let circuit = CircuitDescription::new(arr.clone(), kind);
        write_atomic(path, io::circuit_to_json(&circuit).as_bytes())?;
        outputs.push(path.clone());
    }
    if let Some(prefix) = &out.spectrum {
        let plain = PathBuf::from(format!("{prefix}.autocorrelation.csv"));
        let twisted = PathBuf::from(format!("{prefix}.twisted.csv"));
        write_atomic(
            &plain,
            io::spectrum_to_csv(&arr.correlation_spectrum(false)).as_bytes(),
        )?;
        write_atomic(
            &twisted,
            io::spectrum_to_csv(&arr.correlation_spectrum(true)).as_bytes(),
        )?;
        outputs.push(plain);
        outputs.push(twisted);
    }

    let d = arr.d();
    println!("{label}: wrote {}", out.out.display());
    println!(
        "biunimodularity deviation = {:.3e}; balance |sum|^2 = {:.6} (target {})",
        arr.biunimodularity_deviation(),
        arr.balance(),
        d * d
    );
    println!(
        "delta_R = {:.6e}; delta_Gamma = {:.6e}",
        arr.realign_deviation_from_correlations(),
        arr.partial_transpose_deviation_from_correlations()
    );

    if record_manifest {
        let path = out
            .manifest
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.manifest.json", out.out.display())));
        RunManifest::from_current_run("construct", None, &outputs).write(&path)?;
    }
    Ok(0)
}

struct PropertyLine {
    name: &'static str,
    pass: bool,
}

fn verify(args: VerifyArgs, record_manifest: bool) -> Result<i32> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let gate = match io::phase_array_from_json(&text) {
        Ok(arr) => {
            println!("input: phase array d={}", arr.d());
            build_diagonal_unitary(&arr)
        }
        Err(array_err) => match io::matrix_from_json(&text) {
            Ok(m) => {
                let u = BipartiteOperator::new(m)?;
                println!("input: gate matrix d={}", u.d());
                u
            }
            Err(matrix_err) => {
                bail!(
                    "{} is neither a phase array ({array_err}) nor a matrix ({matrix_err})",
                    args.input.display()
                )
            }
        },
    };

    let report = certify(&gate, args.tol);
    print!("{}", report.render_text());

    let mut properties = vec![PropertyLine {
        name: "two-unitary",
        pass: report.is_two_unitary,
    }];
    if args.blocks {
        let blocks_ok = report.blocks.structured
            && report
                .blocks
                .blocks
                .iter()
                .all(|b| b.unitarity_residual <= args.tol);
        properties.push(PropertyLine {
            name: "blocks",
            pass: blocks_ok,
        });
    }
    if args.stabilizers {
        properties.push(PropertyLine {
            name: "stabilizers",
            pass: report.max_stabilizer_deviation <= args.tol,
        });
    }
    if args.chm {
        let variant = hadamard_variant(&gate, HadamardSide::Left);
        let target = 1.0 / gate.d() as f64;
        let max_modulus_deviation = variant
            .matrix()
            .data()
            .iter()
            .fold(0.0f64, |acc, z| acc.max((z.norm() - target).abs()));
        let variant_report = certify(&variant, args.tol);
        println!(
            "chm: max | |entry| - 1/{} | = {:.6e}; conjugated gate two-unitary: {}",
            gate.d(),
            max_modulus_deviation,
            if variant_report.is_two_unitary { "yes" } else { "no" }
        );
        properties.push(PropertyLine {
            name: "chm",
            pass: max_modulus_deviation <= args.tol && variant_report.is_two_unitary,
        });
    }

    let all_pass = properties.iter().all(|p| p.pass);
    for p in &properties {
        println!("property {}: {}", p.name, if p.pass { "PASS" } else { "FAIL" });
    }
    println!("verdict: {}", if all_pass { "PASS" } else { "FAIL" });

    let mut outputs: Vec<PathBuf> = Vec::new();
    if let Some(path) = &args.json {
        write_atomic(path, io::certification_to_json(&report).as_bytes())?;
        outputs.push(path.clone());
    }
    if let Some(path) = &args.report {
        write_atomic(path, render_full_text(&report, &properties).as_bytes())?;
        outputs.push(path.clone());
    }
    if record_manifest {
        if let Some(path) = &args.manifest {
            RunManifest::from_current_run("verify", None, &outputs).write(path)?;
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn render_full_text(report: &CertificationReport, properties: &[PropertyLine]) -> String {
    let mut text = report.render_text();
    for p in properties {
        text.push_str(&format!(
            "property {}: {}\n",
            p.name,
            if p.pass { "PASS" } else { "FAIL" }
        ));
    }
    text
}

fn build_config(algorithm: &str, d: usize, args: (usize, usize, f64, u64), trace: bool) -> Result<SearchConfig> {
    let (_, iters, tol, seed) = args;
    let config = SearchConfig {
        d,
        algorithm: Algorithm::parse(algorithm)?,
        rng_seed: seed,
        max_iterations: iters,
        convergence_tol: tol,
        record_trace: trace,
    };
    config.validate()?;
    Ok(config)
}

fn search(args: SearchArgs, record_manifest: bool) -> Result<i32> {
    let config = build_config(
        &args.algorithm,
        args.d,
        (args.seeds, args.iters, args.tol, args.seed),
        args.trace,
    )?;
    if args.seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    let result = run_ensemble(&config, args.seeds)?;
    let mut outputs: Vec<PathBuf> = Vec::new();
    let mut hits = 0usize;
    for row in &result.rows {
        if row.outcome.converged {
            hits += 1;
            let path = args.out.join(format!("outcome-{:05}.json", row.stream));
            write_atomic(
                &path,
                io::search_outcome_to_json(&config, row.stream, &row.outcome).as_bytes(),
            )?;
            outputs.push(path);
        }
    }

    let best_r = result
        .rows
        .iter()
        .map(|r| r.outcome.delta_realign)
        .fold(f64::INFINITY, f64::min);
    let best_g = result.min_delta_partial_transpose();
    println!(
        "search {} d={}: {} streams x {} iterations, seed {}, tol {:e}",
        config.algorithm.token(),
        config.d,
        args.seeds,
        config.max_iterations,
        config.rng_seed,
        config.convergence_tol
    );
    println!(
        "converged: {hits}/{}; best delta_R = {best_r:.6e}; best delta_Gamma = {best_g:.6e}",
        args.seeds
    );
    println!("wrote {} outcome files to {}", hits, args.out.display());

    if record_manifest {
        let path = args
            .manifest
            .clone()
            .unwrap_or_else(|| args.out.join("manifest.json"));
        RunManifest::from_current_run("search", Some(config.rng_seed), &outputs).write(&path)?;
    }
    Ok(0)
}

fn ensemble(args: EnsembleArgs, record_manifest: bool) -> Result<i32> {
    let config = build_config(
        &args.algorithm,
        args.d,
        (args.seeds, args.iters, args.tol, args.seed),
        false,
    )?;
    if args.seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let result = run_ensemble(&config, args.seeds)?;

    let mut outputs: Vec<PathBuf> = Vec::new();
    write_atomic(&args.out, io::ensemble_to_csv(&result).as_bytes())?;
    outputs.push(args.out.clone());
    if let Some(prefix) = &args.histogram {
        let r_path = PathBuf::from(format!("{prefix}.delta_R.csv"));
        let g_path = PathBuf::from(format!("{prefix}.delta_Gamma.csv"));
        write_atomic(&r_path, io::histogram_to_csv(&result.histogram_realign).as_bytes())?;
        write_atomic(
            &g_path,
            io::histogram_to_csv(&result.histogram_partial_transpose).as_bytes(),
        )?;
        outputs.push(r_path);
        outputs.push(g_path);
    }

    let converged = result.rows.iter().filter(|r| r.outcome.converged).count();
    let fraction = result.dual_fraction(config.convergence_tol);
    let min_r = result
        .rows
        .iter()
        .map(|r| r.outcome.delta_realign)
        .fold(f64::INFINITY, f64::min);
    println!(
        "ensemble {} d={}: {} streams x {} iterations, seed {}, tol {:e}",
        config.algorithm.token(),
        config.d,
        args.seeds,
        config.max_iterations,
        config.rng_seed,
        config.convergence_tol
    );
    println!(
        "converged: {converged}/{}; delta_R <= tol: {:.1}%; min delta_R = {min_r:.6e}; min delta_Gamma = {:.6e}",
        args.seeds,
        fraction * 100.0,
        result.min_delta_partial_transpose()
    );

    if record_manifest {
        let path = args
            .manifest
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.manifest.json", args.out.display())));
        RunManifest::from_current_run("ensemble", Some(config.rng_seed), &outputs).write(&path)?;
    }
    Ok(0)
}

fn replay(manifest_path: &Path) -> Result<i32> {
    let manifest = RunManifest::load(manifest_path)?;
    let argv = std::iter::once("biuni".to_string()).chain(manifest.args.iter().cloned());
    let cli = Cli::try_parse_from(argv)
        .map_err(|e| anyhow!("manifest arguments failed to parse: {e}"))?;

    let before: Vec<(String, Option<Vec<u8>>)> = manifest
        .outputs
        .iter()
        .map(|p| (p.clone(), std::fs::read(p).ok()))
        .collect();

    dispatch(cli.command, false)?;

    let mut all_match = true;
    for (path, prior) in before {
        let now = std::fs::read(&path).ok();
        match (prior, now) {
            (Some(a), Some(b)) if a == b => println!("unchanged {path}"),
            (Some(_), Some(_)) => {
                println!("MISMATCH {path}: previous bytes differ from the replayed output");
                all_match = false;
            }
            (None, Some(_)) => println!("created {path}"),
            (_, None) => {
                println!("MISSING {path}: replay did not produce this file");
                all_match = false;
            }
        }
    }
    println!("replay: {}", if all_match { "reproduced" } else { "FAILED" });
    Ok(if all_match { 0 } else { 1 })
}
