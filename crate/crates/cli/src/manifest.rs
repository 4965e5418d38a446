//! Run manifests and atomic file writes. A manifest records the exact
//! argument vector of a run, its base RNG seed, and the data files it wrote,
//! so `replay` can re-execute the command and check the outputs byte for
//! byte. Files are written through a temporary sibling and renamed into
//! place so readers never observe partial content.

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Record of one CLI run, sufficient to reproduce its outputs.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Subcommand name, informational.
    pub command: String,
    /// Full argument vector after the binary name.
    pub args: Vec<String>,
    /// Base RNG seed for seeded commands.
    pub rng_seed: Option<u64>,
    /// Data files the run wrote (the manifest itself is not listed).
    pub outputs: Vec<String>,
    /// Wall-clock time of the run, seconds since the Unix epoch.
    pub epoch_seconds: u64,
}

impl RunManifest {
    /// Captures the current process arguments as a manifest.
    pub fn from_current_run(command: &str, rng_seed: Option<u64>, outputs: &[PathBuf]) -> Self {
        Self {
            tool: "biuni".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            args: std::env::args().skip(1).collect(),
            rng_seed,
            outputs: outputs
                .iter()
                .map(|p| p.to_string_lossy().into_owned())
                .collect(),
            epoch_seconds: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    /// Loads a manifest from disk.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }

    /// Writes the manifest atomically.
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("serialization is infallible");
        write_atomic(path, text.as_bytes())
    }
}

/// Writes bytes to a temporary file in the target directory, then renames it
/// over the destination.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
