//! Command-line front end: graph enumeration, homology runs, the
//! verification suite, and the twisted-coefficient table.
//!
//! Standard output carries machine-readable results only; progress notes go
//! to standard error. Exit codes: 0 success, 1 check or computation
//! failure, 2 usage error.

mod cache;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use auterq_core::cubical::build_cubical_from_classes;
use auterq_core::delta::{build_delta_from_classes, SkeletonJson};
use auterq_core::enumerate::{counts_by_degree, wedge_audit};
use auterq_core::graph::Mode;
use auterq_core::homology::{ChainComplex, Coefficients, HomologyReport};
use auterq_core::twisted::{twisted_table, HolomorphBetti, Provenance};
use auterq_core::verify::run_verification;

#[derive(Parser)]
#[command(
    name = "auterq",
    version,
    about = "Exact homology of auter-space quotient complexes with a marked special vertex"
)]
struct Cli {
    /// Cache directory (default: $AUTERQ_CACHE_DIR, else .auterq-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Print progress checkpoints to standard error
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate graph classes and audit their low-degree wedge structure
    Graphs(GraphsArgs),
    /// Build a quotient complex and compute its homology
    Homology(HomologyArgs),
    /// Run the structural invariant suite for one configuration
    Verify(VerifyArgs),
    /// Deduce the twisted coefficient table from cached homology reports
    Twisted(TwistedArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Holomorph,
    Aut,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Holomorph => Mode::Holomorph,
            ModeArg::Aut => Mode::Aut,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ComplexArg {
    /// Cube generators for rational runs, simplex cells otherwise
    Auto,
    Delta,
    Cubical,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Genus (first Betti number) of the graphs, at least 1
    #[arg(long)]
    genus: usize,
    /// Degree truncation of the complex
    #[arg(long)]
    max_degree: usize,
}

#[derive(Args)]
struct GraphsArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Also write the output to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Largest homology dimension to report (default: max degree)
    #[arg(long)]
    max_dim: Option<usize>,
    /// Coefficients: q, z, or zp:<odd prime>
    #[arg(long, default_value = "q")]
    coeff: String,
    #[arg(long, value_enum, default_value = "auto")]
    complex: ComplexArg,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the cell skeleton as JSON (simplex-cell runs only)
    #[arg(long)]
    emit_skeleton: Option<PathBuf>,
    /// Write boundary matrices in text form into this directory
    #[arg(long)]
    emit_matrices: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args)]
struct TwistedArgs {
    /// Rank of the free group
    #[arg(long)]
    genus: usize,
    /// Largest twisted dimension to deduce
    #[arg(long, default_value_t = 3)]
    max_i: usize,
    /// Inject a holomorph Betti number as DIM=VALUE, labeled paper-sourced;
    /// used only where no cached report covers that dimension
    #[arg(long = "paper-betti", value_name = "DIM=VALUE")]
    paper_betti: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(cache::default_cache_dir);
    let verbose = cli.verbose > 0;
    let result = match &cli.command {
        Command::Graphs(args) => cmd_graphs(args, &cache_dir, verbose),
        Command::Homology(args) => cmd_homology(args, &cache_dir, verbose),
        Command::Verify(args) => cmd_verify(args, &cache_dir, verbose),
        Command::Twisted(args) => cmd_twisted(args, &cache_dir, verbose),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("usage error: {msg}");
    ExitCode::from(2)
}

fn check_instance(instance: &InstanceArgs) -> Option<ExitCode> {
    if instance.genus < 1 {
        return Some(usage_error("--genus must be at least 1"));
    }
    None
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    println!("{text}");
    if let Some(path) = out {
        cache::atomic_write(path, format!("{text}\n").as_bytes())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GraphsOutput {
    mode: Mode,
    genus: usize,
    max_degree: usize,
    total: usize,
    counts_by_degree: Vec<usize>,
    wedge_audit: String,
    classes: Vec<String>,
}

fn cmd_graphs(args: &GraphsArgs, cache_dir: &Path, verbose: bool) -> Result<ExitCode> {
    if let Some(code) = check_instance(&args.instance) {
        return Ok(code);
    }
    let (mode, n, k) = (args.instance.mode.into(), args.instance.genus, args.instance.max_degree);
    let t = Instant::now();
    let classes = cache::load_or_enumerate(cache_dir, mode, n, k, verbose)?;
    let audit = wedge_audit(&classes);
    let output = GraphsOutput {
        mode,
        genus: n,
        max_degree: k,
        total: classes.len(),
        counts_by_degree: counts_by_degree(&classes, k),
        wedge_audit: if audit.passed() { "pass".into() } else { audit.failures.join("; ") },
        classes: classes.iter().map(|c| c.encoding().to_string()).collect(),
    };
    let text = match args.format {
        FormatArg::Json => serde_json::to_string_pretty(&output)?,
        FormatArg::Csv => {
            let mut rows = vec!["degree,count".to_string()];
            rows.extend(
                output
                    .counts_by_degree
                    .iter()
                    .enumerate()
                    .map(|(d, c)| format!("{d},{c}")),
            );
            rows.join("\n")
        }
    };
    emit(&text, &args.out)?;
    if verbose {
        eprintln!("{} classes in {:?}", classes.len(), t.elapsed());
    }
    Ok(if audit.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_homology(args: &HomologyArgs, cache_dir: &Path, verbose: bool) -> Result<ExitCode> {
    if let Some(code) = check_instance(&args.instance) {
        return Ok(code);
    }
    let (mode, n, k) = (args.instance.mode.into(), args.instance.genus, args.instance.max_degree);
    let coeff = match Coefficients::parse(&args.coeff) {
        Ok(c) => c,
        Err(e) => return Ok(usage_error(&e.to_string())),
    };
    let use_cubical = match args.complex {
        ComplexArg::Auto => coeff == Coefficients::Rational,
        ComplexArg::Cubical => {
            if coeff != Coefficients::Rational {
                return Ok(usage_error(
                    "cube generators carry orientation classes only over q",
                ));
            }
            true
        }
        ComplexArg::Delta => false,
    };
    if use_cubical && args.emit_skeleton.is_some() {
        return Ok(usage_error("--emit-skeleton applies to --complex delta runs"));
    }
    let max_dim = args.max_dim.unwrap_or(k);
    let build_dim = (max_dim + 1).min(k);

    let t = Instant::now();
    let classes = cache::load_or_enumerate(cache_dir, mode, n, k, verbose)?;
    if verbose {
        eprintln!("{} classes ({:?})", classes.len(), t.elapsed());
    }

    let (report, boundaries, complex_label): (HomologyReport, Vec<_>, &str) = if use_cubical {
        let cube = build_cubical_from_classes(mode, n, k, build_dim, classes);
        if verbose {
            eprintln!(
                "cube generators {:?}, dropped {:?} ({:?})",
                cube.cell_counts(),
                cube.dropped,
                t.elapsed()
            );
        }
        let cx = ChainComplex::from_cubical(&cube)?;
        let report = cx.homology(coeff, max_dim)?;
        let boundaries: Vec<_> =
            (1..=cube.built_dim).map(|r| cube.boundary(r).clone()).collect();
        (report, boundaries, "cubical")
    } else {
        let skel = build_delta_from_classes(mode, n, k, build_dim, classes);
        if verbose {
            eprintln!("simplex cells {:?} ({:?})", skel.cell_counts(), t.elapsed());
        }
        if let Some(path) = &args.emit_skeleton {
            let json = serde_json::to_string_pretty(&SkeletonJson::from(&skel))?;
            cache::atomic_write(path, json.as_bytes())?;
            if verbose {
                eprintln!("skeleton written to {}", path.display());
            }
        }
        let cx = ChainComplex::from_delta(&skel)?;
        let report = cx.homology(coeff, max_dim)?;
        let boundaries: Vec<_> = (1..=skel.built_dim).map(|r| skel.boundary(r)).collect();
        (report, boundaries, "delta")
    };
    if verbose {
        eprintln!("betti {:?} ({:?})", report.betti, t.elapsed());
    }

    if let Some(dir) = &args.emit_matrices {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, m) in boundaries.iter().enumerate() {
            let r = i + 1;
            let mut buf = Vec::new();
            m.write_text(r, r - 1, &mut buf)?;
            let path = dir.join(format!("boundary-d{r}.txt"));
            cache::atomic_write(&path, &buf)?;
        }
        if verbose {
            eprintln!("{} boundary matrices written to {}", boundaries.len(), dir.display());
        }
    }

    let cached = cache::write_report(cache_dir, &report, complex_label)?;
    if verbose {
        eprintln!("report cached at {}", cached.display());
    }
    let text = match args.format {
        FormatArg::Json => serde_json::to_string_pretty(&report)?,
        FormatArg::Csv => {
            let mut rows = vec![HomologyReport::CSV_HEADER.to_string()];
            rows.extend(report.csv_rows());
            rows.join("\n")
        }
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs, cache_dir: &Path, verbose: bool) -> Result<ExitCode> {
    if let Some(code) = check_instance(&args.instance) {
        return Ok(code);
    }
    let (mode, n, k) = (args.instance.mode.into(), args.instance.genus, args.instance.max_degree);
    let t = Instant::now();
    let mut checks = run_verification(mode, n, k, args.max_dim)?;

    // cache integrity, when a cache file exists for this configuration
    let path = cache::class_cache_path(cache_dir, mode, n, k);
    if path.exists() {
        match cache::load_class_cache(&path, mode, n, k) {
            Ok(classes) => checks.push(auterq_core::verify::Check {
                name: "cache-integrity".into(),
                passed: true,
                detail: format!("{} classes round-trip from {}", classes.len(), path.display()),
            }),
            Err(e) => checks.push(auterq_core::verify::Check {
                name: "cache-integrity".into(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }

    let mut stdout = std::io::stdout().lock();
    let mut all_passed = true;
    for check in &checks {
        all_passed &= check.passed;
        writeln!(
            stdout,
            "{} {}: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        )?;
    }
    if verbose {
        eprintln!("{} checks in {:?}", checks.len(), t.elapsed());
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct TwistedOutput {
    genus: usize,
    entries: Vec<auterq_core::twisted::TwistedEntry>,
}

fn cmd_twisted(args: &TwistedArgs, cache_dir: &Path, verbose: bool) -> Result<ExitCode> {
    if args.genus < 1 {
        return Ok(usage_error("--genus must be at least 1"));
    }
    let n = args.genus;
    let mut injected: BTreeMap<usize, usize> = BTreeMap::new();
    for spec in &args.paper_betti {
        let (dim, value) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("--paper-betti expects DIM=VALUE, got `{spec}`"))?;
        injected.insert(dim.trim().parse()?, value.trim().parse()?);
    }

    let mut betti: HolomorphBetti = BTreeMap::new();
    for i in 0..=args.max_i {
        let m = i + 1;
        let k = m + 1;
        // a cached rational report for (holomorph, n, k) covering dimension m
        let mut found = None;
        for complex in ["cubical", "delta"] {
            let path = cache::report_path(cache_dir, Mode::Holomorph, n, k, "q", complex);
            if !path.exists() {
                continue;
            }
            let report = cache::read_report(&path)?;
            if let Some(pos) = report.dims.iter().position(|&d| d == m) {
                found = Some((report.betti[pos], path));
                break;
            }
        }
        match (found, injected.get(&m)) {
            (Some((b, path)), maybe_injected) => {
                if let Some(&inj) = maybe_injected {
                    if inj != b {
                        bail!(
                            "injected value {inj} for dimension {m} contradicts the cached \
                             report {} (betti {b})",
                            path.display()
                        );
                    }
                }
                if verbose {
                    eprintln!("dim {m}: betti {b} from {}", path.display());
                }
                betti.insert(m, (b, Provenance::Computed));
            }
            (None, Some(&inj)) => {
                if verbose {
                    eprintln!("dim {m}: betti {inj} (paper-sourced)");
                }
                betti.insert(m, (inj, Provenance::PaperSourced));
            }
            (None, None) => {
                if auterq_core::twisted::aut_rational_betti(m + 1, n).is_some() {
                    bail!(
                        "no cached rational homology for mode=holomorph n={n} k={k} covering \
                         dimension {m}; run `auterq homology --mode holomorph --genus {n} \
                         --max-degree {k} --coeff q` first, or inject --paper-betti {m}=<value>"
                    );
                }
                // outside the tabulated range the row is indeterminate anyway
            }
        }
    }

    let output = TwistedOutput { genus: n, entries: twisted_table(n, &betti, args.max_i) };
    let text = match args.format {
        FormatArg::Json => serde_json::to_string_pretty(&output)?,
        FormatArg::Csv => {
            let mut rows = vec!["n,i,value,inputs".to_string()];
            for e in &output.entries {
                let value = match &e.value {
                    auterq_core::twisted::TwistedValue::Forced { dim } => dim.to_string(),
                    auterq_core::twisted::TwistedValue::Indeterminate { .. } => {
                        "indeterminate".to_string()
                    }
                };
                rows.push(format!("{n},{},{},{}", e.i, value, e.inputs.join(" | ")));
            }
            rows.join("\n")
        }
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}
