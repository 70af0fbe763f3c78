//! Command line front end: analyze one group under one partition, sweep
//! the verification scopes over a catalog, or export a subgroup lattice.

use clap::{Parser, Subcommand};
use sigma_groups::catalog::{builtin_catalog, load_catalog, realize_entry, resolve_entry};
use sigma_groups::lattice::enumerate_subgroups_with_cap;
use sigma_groups::sigma::parse_partition;
use sigma_groups::sweep::{run_sweep, PartitionScope, Scope, SweepConfig};
use sigma_groups::{analyze_report, CatalogEntry, Error};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Single-group commands refuse lattices past this order.
const ANALYZE_ORDER_CAP: u64 = 200;

#[derive(Parser)]
#[command(
    name = "sigma-groups",
    version,
    about = "Hall systems, dispersive towers, and subnormality checks for small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full structural report for one group under one prime partition.
    Analyze {
        /// Catalog name or zero-based index.
        #[arg(long)]
        group: String,
        /// Line-delimited JSON catalog file; defaults to the builtin catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Prime partition: "minimal", "one", or classes like "2,3|5".
        #[arg(long)]
        sigma: String,
    },
    /// Sweep a verification scope over the catalog and report per case.
    Verify {
        /// One of: thm13, cor14, cor15, lemmas, all.
        #[arg(long)]
        scope: String,
        /// Line-delimited JSON catalog file; defaults to the builtin catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Skip groups above this order.
        #[arg(long, default_value_t = 100)]
        max_order: u64,
        /// "all" set partitions of each group's primes, "minimal", "one",
        /// or an explicit partition.
        #[arg(long, default_value = "all")]
        partitions: String,
        /// Worker threads; 0 picks a default, 1 runs sequentially.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a group's subgroup lattice.
    Lattice {
        /// Catalog name or zero-based index.
        #[arg(long)]
        group: String,
        /// "dot" or "json".
        #[arg(long)]
        format: String,
    },
}

/// Write to stdout, treating a closed pipe as a clean stop.
fn emit(text: &str) -> Result<(), Error> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn load_entries(catalog: Option<&Path>, max_order: u64) -> Result<(Vec<CatalogEntry>, Vec<String>), Error> {
    match catalog {
        None => Ok((builtin_catalog(max_order), Vec::new())),
        Some(path) => {
            let loaded = load_catalog(path)?;
            Ok((loaded.entries, loaded.errors))
        }
    }
}

fn single_group(group: &str, catalog: Option<&Path>) -> Result<sigma_groups::SubgroupLattice, Error> {
    let (entries, errors) = load_entries(catalog, ANALYZE_ORDER_CAP)?;
    for e in &errors {
        eprintln!("catalog: {}", e);
    }
    let entry = resolve_entry(&entries, group)?;
    let g = realize_entry(entry)?;
    if g.order() > ANALYZE_ORDER_CAP {
        return Err(Error::TooLarge {
            order: g.order(),
            cap: ANALYZE_ORDER_CAP,
            context: "single-group analysis",
        });
    }
    enumerate_subgroups_with_cap(g, ANALYZE_ORDER_CAP)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.cmd {
        Cmd::Analyze { group, catalog, sigma } => {
            let lat = single_group(&group, catalog.as_deref())?;
            let part = parse_partition(&sigma)?;
            let report = analyze_report(&lat, &part)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(&text)?;
            Ok(true)
        }
        Cmd::Verify {
            scope,
            catalog,
            max_order,
            partitions,
            jobs,
            out,
        } => {
            let config = SweepConfig {
                scope: Scope::parse(&scope)?,
                max_order,
                partitions: PartitionScope::parse(&partitions)?,
                jobs,
            };
            let (entries, load_errors) = load_entries(catalog.as_deref(), max_order)?;
            let outcome = run_sweep(&entries, load_errors, &config);
            for e in &outcome.errors {
                eprintln!("error: {}", e);
            }
            let mut text = outcome.lines.join("\n");
            text.push('\n');
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => emit(&text)?,
            }
            eprintln!(
                "{} cases, {} hold, {} hypothesis-fail, {} not-applicable, {} counterexamples, {} instances checked",
                outcome.cases,
                outcome.hypothesis_holds,
                outcome.hypothesis_fails,
                outcome.not_applicable,
                outcome.counterexamples,
                outcome.checked_instances
            );
            Ok(outcome.exit_ok)
        }
        Cmd::Lattice { group, format } => {
            let lat = single_group(&group, None)?;
            match format.as_str() {
                "dot" => emit(&lat.to_dot())?,
                "json" => {
                    let mut text = serde_json::to_string_pretty(&lat.to_json())?;
                    text.push('\n');
                    emit(&text)?;
                }
                other => {
                    return Err(Error::BadArg(format!(
                        "unknown format {:?} (expected dot or json)",
                        other
                    )))
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
