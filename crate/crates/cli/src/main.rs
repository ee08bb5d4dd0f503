use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use princ_cli::corpus::{verify_corpus, MAX_CORPUS_SIZE};
use princ_cli::doc::{PosetDocument, TripleDocument};
use princ_cli::dot::hasse_diagram;
use princ_cli::{CliError, CliResult};
use princ_core::congruence::{princ_order, principal_congruence};
use princ_core::construct::contract::check_lat_contract;
use princ_core::construct::{lat_of, Catalog, GadgetKind, Variant};
use princ_core::lattice::{lattice_from_order, FiniteLattice};
use princ_core::triples::verify_representation;

/// Environment variable naming an alternative gadget catalog file.
const CATALOG_ENV: &str = "PRINC_CATALOG";

#[derive(Parser)]
#[command(name = "princ", version, about = "Principal congruences of finite lattices and order-triple representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the principal congruences of a lattice with a generating pair each.
    Princ {
        file: PathBuf,
        /// Write the Hasse diagram of Princ L here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print con(a, b) as a partition.
    Con { file: PathBuf, a: String, b: String },
    /// Build Lat_X P and check its construction contract.
    Lat {
        file: PathBuf,
        /// Number of universal complements to add.
        #[arg(long, default_value_t = 0)]
        x: usize,
        #[arg(long, default_value = "G")]
        kind: GadgetKind,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Represent an order-triple by lattices and verify every step.
    Represent {
        file: PathBuf,
        #[arg(long, default_value = "original")]
        variant: Variant,
        /// Directory for K, M and L Hasse diagrams.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// JSON report destination.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every property suite over an enumerated corpus.
    VerifyCorpus {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn load_lattice(path: &Path) -> CliResult<FiniteLattice> {
    let order = PosetDocument::parse(&read(path)?)?.to_order()?;
    Ok(lattice_from_order(&order)?)
}

fn load_catalog() -> CliResult<Catalog> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            Catalog::from_json(&read(&path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
        }
        None => Ok(Catalog::default()),
    }
}

fn cmd_princ(file: &Path, dot: Option<&Path>) -> CliResult<()> {
    let l = load_lattice(file)?;
    let princ = princ_order(&l);
    println!("{} principal congruences", princ.len());
    for (i, theta) in princ.congruences.iter().enumerate() {
        let (a, b) = princ.witness[i];
        println!("  con({},{}) = {}", l.name(a), l.name(b), theta.render(&l));
    }
    println!("covers:");
    for (a, b) in princ.order.covers() {
        println!("  {} < {}", princ.order.name(a), princ.order.name(b));
    }
    if let Some(path) = dot {
        write(path, &hasse_diagram("Princ", &princ.order))?;
    }
    Ok(())
}

fn cmd_con(file: &Path, a: &str, b: &str) -> CliResult<()> {
    let l = load_lattice(file)?;
    let theta = principal_congruence(&l, l.require(a)?, l.require(b)?);
    println!("con({a},{b}) = {} ({} blocks)", theta.render(&l), theta.block_count());
    Ok(())
}

fn cmd_lat(file: &Path, x: usize, kind: GadgetKind, dot: Option<&Path>) -> CliResult<()> {
    let p = PosetDocument::parse(&read(file)?)?.to_order()?;
    let catalog = load_catalog()?;
    let xs: Vec<String> = (1..=x).map(|i| format!("x:{i}")).collect();
    let l = lat_of(&p, &xs, kind, &catalog)?;
    println!("Lat P: {} elements ({kind} gadgets, {x} universal complements)", l.len());
    if let Some(path) = dot {
        write(path, &hasse_diagram("Lat", l.order()))?;
    }
    let clauses = check_lat_contract(&p, &xs, kind, &catalog)?;
    for c in &clauses {
        println!("  {} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.clause, c.detail);
    }
    let failed: Vec<&str> = clauses.iter().filter(|c| !c.passed).map(|c| c.clause.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failing clauses: {}", failed.join(", "))))
    }
}

fn cmd_represent(file: &Path, variant: Variant, dot: Option<&Path>, report_path: Option<&Path>) -> CliResult<()> {
    let t = TripleDocument::parse(&read(file)?)?.to_triple()?;
    let catalog = load_catalog()?;
    let report = verify_representation(&t, variant, &catalog);
    if let Some(path) = report_path {
        write(path, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
    }
    if let Some(sizes) = &report.sizes {
        println!("|K| = {}, |M| = {}, |L| = {} ({variant})", sizes.k, sizes.m, sizes.l);
    }
    if let Some(step) = &report.disjoint_union_step {
        println!(
            "disjoint union step added {} elements (catalog formula {}, nominal formula {})",
            step.added_by_gadgets, step.catalog_expected, step.formula_expected
        );
    }
    for c in &report.clauses {
        println!("  {} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.clause, c.detail);
    }
    if let Some(dir) = dot {
        if report.sizes.is_some() {
            let rep = princ_core::triples::represent(&t, variant, &catalog)?;
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            for (name, l) in [("K", rep.k()), ("M", rep.m()), ("L", rep.l())] {
                write(&dir.join(format!("{}.dot", name.to_lowercase())), &hasse_diagram(name, l.order()))?;
            }
        }
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.failed_clauses().iter().map(|c| c.clause.as_str()).collect();
        Err(CliError::Verification(format!("failing clauses: {}", failed.join(", "))))
    }
}

fn cmd_verify_corpus(max_size: usize, seed: u64, report_path: Option<&Path>) -> CliResult<()> {
    if !(2..=MAX_CORPUS_SIZE).contains(&max_size) {
        return Err(CliError::Invalid(format!("--max-size must be between 2 and {MAX_CORPUS_SIZE}")));
    }
    let catalog = load_catalog()?;
    let report = verify_corpus(max_size, seed, &catalog);
    for s in &report.suites {
        println!(
            "{} {}: {} checks, {} failures",
            if s.passed { "PASS" } else { "FAIL" },
            s.name,
            s.checked,
            s.failure_count
        );
        for f in s.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if !report.catalog_matches_nominal {
        let coefficients: Vec<String> =
            report.catalog_coefficients.iter().map(|(v, (c, n))| format!("{v} {c}c + {n}n")).collect();
        println!("note: catalog counts ({}) deviate from the nominal gadget sizes", coefficients.join(", "));
    }
    if let Some(path) = report_path {
        write(path, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.suites.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
        Err(CliError::Verification(format!("failing suites: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Princ { file, dot } => cmd_princ(file, dot.as_deref()),
        Command::Con { file, a, b } => cmd_con(file, a, b),
        Command::Lat { file, x, kind, dot } => cmd_lat(file, *x, *kind, dot.as_deref()),
        Command::Represent { file, variant, dot, report } => {
            cmd_represent(file, *variant, dot.as_deref(), report.as_deref())
        }
        Command::VerifyCorpus { max_size, seed, report } => cmd_verify_corpus(*max_size, *seed, report.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
