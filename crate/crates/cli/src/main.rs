//! Command-line front end: defect checks, invariant reports, cohomology,
//! catalog export, the reference regression and witness search.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use compalg::catalog::{all_entries, get_algebra, get_pair};
use compalg::cohomology::CohomologyMode;
use compalg::document::{load_document, AlgebraDocument, Loaded};
use compalg::nonlinear::Variant;
use compalg::report::{paper_regression, parse_invariants, run_report, ReportOptions};
use compalg::search::{search_witness, verify_witness, SearchOutcome};
use compalg::{AlgebraPair, Error};

#[derive(Parser, Debug)]
#[command(
    name = "compalg",
    version,
    about = "Exact invariants of compatible associative algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Associativity and compatibility defects of an algebra document.
    Check { file: PathBuf },
    /// JSON report of invariants for a document or a catalog pair such as `A2_2,A2_3`.
    Invariants {
        target: String,
        /// Comma-separated invariant names, or `all`.
        #[arg(long, default_value = "all")]
        kind: String,
        /// Variant of the Nijenhuis and Reynolds identities.
        #[arg(long, default_value = "paper")]
        mode: Variant,
        #[arg(long, default_value = "mixed")]
        cohomology_mode: CohomologyMode,
    },
    /// Second cohomology of a catalog pair in both cocycle modes.
    Cohomology { pair: String },
    /// Catalog export.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Recompute every reference table row; exit code 3 on mismatch.
    PaperRegression {
        /// Also write the full report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search integer basis changes making two catalog algebras compatible.
    SearchWitness {
        first: String,
        second: String,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Every catalog entry in the document format, as one JSON array.
    Dump,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAssociative { ref report, .. } => {
                Failure::Precondition(format!("{e}\n{}", pretty(&report.to_json())))
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn resolve_target(target: &str) -> Result<AlgebraPair, Failure> {
    if Path::new(target).exists() {
        return match load_document(target)? {
            Loaded::Pair(p) => Ok(p),
            Loaded::Algebra(a) => Ok(AlgebraPair::new(a.clone(), a)?),
        };
    }
    let pair = get_pair(target)?;
    pair.first.ensure_associative()?;
    pair.second.ensure_associative()?;
    Ok(pair)
}

fn check(file: &Path) -> Result<Value, Failure> {
    Ok(match load_document(file)? {
        Loaded::Algebra(a) => json!({
            "algebra": a.name,
            "associativity": a.check_associative().to_json(),
        }),
        Loaded::Pair(p) => json!({
            "pair": [p.first.name, p.second.name],
            "associativity": [p.first.check_associative().to_json(), p.second.check_associative().to_json()],
            "compatibility": p.check_compatible()?.to_json(),
        }),
    })
}

fn cohomology(target: &str) -> Result<Value, Failure> {
    let pair = resolve_target(target)?;
    let reports = CohomologyMode::ALL
        .into_iter()
        .map(|mode| {
            let opts = ReportOptions {
                cohomology_mode: mode,
                ..ReportOptions::default()
            };
            run_report(&pair, &[compalg::Invariant::Cohomology], opts)
                .map(|r| r["invariants"][0].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({"pair": [pair.first.name, pair.second.name], "modes": reports}))
}

fn search(first: &str, second: &str, bound: i64) -> Result<Value, Failure> {
    let a = get_algebra(first)?.algebra;
    let b = get_algebra(second)?.algebra;
    let original = AlgebraPair::new(a.clone(), b.clone())?;
    Ok(match search_witness(&a, &b, bound)? {
        SearchOutcome::Found(w) => json!({
            "status": "found",
            "matrix": w.p.to_strings(),
            "verified": verify_witness(&original, &w),
            "compatibility": w.defect.to_json(),
        }),
        SearchOutcome::Exhausted(e) => json!({
            "status": "exhausted",
            "candidates": e.candidates,
            "description": e.description,
        }),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { file } => emit(&format!("{}\n", pretty(&check(&file)?))),
        Command::Invariants {
            target,
            kind,
            mode,
            cohomology_mode,
        } => {
            let pair = resolve_target(&target)?;
            let invariants = parse_invariants(&kind)?;
            let opts = ReportOptions {
                variant: mode,
                cohomology_mode,
            };
            emit(&format!(
                "{}\n",
                pretty(&run_report(&pair, &invariants, opts)?)
            ));
        }
        Command::Cohomology { pair } => emit(&format!("{}\n", pretty(&cohomology(&pair)?))),
        Command::Catalog {
            action: CatalogAction::Dump,
        } => {
            let docs: Vec<AlgebraDocument> = all_entries()
                .iter()
                .map(|e| AlgebraDocument::from_algebra(&e.algebra))
                .collect();
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&docs).expect("documents serialize")
            ));
        }
        Command::PaperRegression { json } => {
            let report = paper_regression();
            emit(&report.to_string());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            return Ok(report.exit_code() as u8);
        }
        Command::SearchWitness {
            first,
            second,
            bound,
        } => {
            emit(&format!("{}\n", pretty(&search(&first, &second, bound)?)));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
