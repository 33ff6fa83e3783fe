//! Enumeration and report caches: one JSON file per configuration, keyed by
//! (mode, genus, max degree, format version) with a content hash. A cache
//! that fails validation is reported with its path and never silently
//! recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use auterq_core::canon::{canonicalize, GraphClass};
use auterq_core::graph::{GraphJson, Mode, PointedGraph};
use auterq_core::homology::HomologyReport;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
pub struct ClassFile {
    pub format_version: u32,
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub sha256: String,
    pub classes: Vec<ClassJson>,
}

#[derive(Serialize, Deserialize)]
pub struct ClassJson {
    pub encoding: String,
    pub genus: usize,
    pub degree: usize,
    pub aut_count: u64,
    pub graph: GraphJson,
}

pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("AUTERQ_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".auterq-cache"))
}

pub fn class_cache_path(dir: &Path, mode: Mode, genus: usize, max_degree: usize) -> PathBuf {
    dir.join(format!(
        "graphs-{}-n{}-k{}-v{}.json",
        mode.as_str(),
        genus,
        max_degree,
        FORMAT_VERSION
    ))
}

fn classes_digest(classes: &[ClassJson]) -> Result<String> {
    let payload = serde_json::to_string(classes)?;
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    Ok(format!("{:x}", hasher.finalize()))
}

/// Atomically write `bytes` at `path` (write a sibling temp file, then rename).
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn write_class_cache(
    dir: &Path,
    mode: Mode,
    genus: usize,
    max_degree: usize,
    classes: &[GraphClass],
) -> Result<PathBuf> {
    let class_json: Vec<ClassJson> = classes
        .iter()
        .map(|c| ClassJson {
            encoding: c.encoding().to_string(),
            genus: c.genus(),
            degree: c.degree(),
            aut_count: c.aut_count(),
            graph: GraphJson::from(c.graph()),
        })
        .collect();
    let file = ClassFile {
        format_version: FORMAT_VERSION,
        mode,
        genus,
        max_degree,
        sha256: classes_digest(&class_json)?,
        classes: class_json,
    };
    let path = class_cache_path(dir, mode, genus, max_degree);
    atomic_write(&path, serde_json::to_string_pretty(&file)?.as_bytes())?;
    Ok(path)
}

/// Load and fully validate a class cache: version, configuration key,
/// content hash, and canonical-form round trip.
pub fn load_class_cache(
    path: &Path,
    mode: Mode,
    genus: usize,
    max_degree: usize,
) -> Result<Vec<GraphClass>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading cache {}", path.display()))?;
    let file: ClassFile = serde_json::from_str(&text)
        .map_err(|e| anyhow!("cache {} is corrupt: {e}", path.display()))?;
    if file.format_version != FORMAT_VERSION {
        bail!(
            "cache {} has format version {} (expected {FORMAT_VERSION})",
            path.display(),
            file.format_version
        );
    }
    if (file.mode, file.genus, file.max_degree) != (mode, genus, max_degree) {
        bail!(
            "cache {} was built for mode={} n={} k={}, not mode={} n={} k={}",
            path.display(),
            file.mode.as_str(),
            file.genus,
            file.max_degree,
            mode.as_str(),
            genus,
            max_degree
        );
    }
    let digest = classes_digest(&file.classes)?;
    if digest != file.sha256 {
        bail!("cache {} failed its integrity hash", path.display());
    }
    let mut out = Vec::with_capacity(file.classes.len());
    for entry in &file.classes {
        let graph = PointedGraph::try_from(&entry.graph)
            .map_err(|e| anyhow!("cache {}: bad graph: {e}", path.display()))?;
        let class = canonicalize(&graph)
            .map_err(|e| anyhow!("cache {}: invalid graph: {e}", path.display()))?;
        if class.encoding() != entry.encoding {
            bail!(
                "cache {}: stored encoding {} does not canonicalize back to itself",
                path.display(),
                entry.encoding
            );
        }
        out.push(class);
    }
    Ok(out)
}

/// Cached classes if a valid cache exists, otherwise enumerate and cache.
/// An existing cache that fails validation is an error.
pub fn load_or_enumerate(
    dir: &Path,
    mode: Mode,
    genus: usize,
    max_degree: usize,
    verbose: bool,
) -> Result<Vec<GraphClass>> {
    let path = class_cache_path(dir, mode, genus, max_degree);
    if path.exists() {
        let classes = load_class_cache(&path, mode, genus, max_degree)?;
        if verbose {
            eprintln!("loaded {} classes from {}", classes.len(), path.display());
        }
        return Ok(classes);
    }
    let classes = auterq_core::enumerate::enumerate_graph_classes(genus, max_degree, mode)?;
    write_class_cache(dir, mode, genus, max_degree, &classes)?;
    if verbose {
        eprintln!("enumerated {} classes, cached at {}", classes.len(), path.display());
    }
    Ok(classes)
}

pub fn report_path(
    dir: &Path,
    mode: Mode,
    genus: usize,
    max_degree: usize,
    coeff_label: &str,
    complex: &str,
) -> PathBuf {
    let coeff = coeff_label.replace(':', "-");
    dir.join("reports").join(format!(
        "report-{}-n{}-k{}-{}-{}.json",
        mode.as_str(),
        genus,
        max_degree,
        coeff,
        complex
    ))
}

pub fn write_report(dir: &Path, report: &HomologyReport, complex: &str) -> Result<PathBuf> {
    let path = report_path(
        dir,
        report.mode,
        report.genus,
        report.max_degree,
        &report.coefficients,
        complex,
    );
    atomic_write(&path, serde_json::to_string_pretty(report)?.as_bytes())?;
    Ok(path)
}

pub fn read_report(path: &Path) -> Result<HomologyReport> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading report {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| anyhow!("report {} is corrupt: {e}", path.display()))
}
