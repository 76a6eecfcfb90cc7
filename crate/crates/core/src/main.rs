use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyassign::check::{exit, exit_code_for, run_check, CheckOptions};
use polyassign::corpus::{corpus_expressions, render_csv, render_table, run_corpus};
use polyassign::dot::export_dot;
use polyassign::{parse_construction, Error, PolytopeDocument, PolytopeSpec, Result, VertexFacetGraph};

#[derive(Parser)]
#[command(name = "polyassign", version, about = "Decide and certify vertex-facet assignments of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one polytope and print the report.
    Check(CheckArgs),
    /// Run the built-in corpus and print the summary table.
    Corpus(CorpusArgs),
    /// Print the polytope document of a construction expression.
    Export {
        expr: String,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Construction expression, e.g. "join(cube(3),cross(3))".
    expr: Option<String>,
    /// Read a polytope document instead ("-" for standard input).
    #[arg(long, short, conflicts_with = "expr")]
    input: Option<PathBuf>,
    /// Map vertices to incident facets instead of non-incident ones.
    #[arg(long)]
    incident: bool,
    /// Also run the exhaustive facet-subset check.
    #[arg(long)]
    oracle: bool,
    /// Write the vertex-facet graph in DOT format.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Run the corpus instead of a single check.
    #[arg(long)]
    corpus: bool,
    /// With --corpus: emit comma-separated values.
    #[arg(long, requires = "corpus")]
    csv: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Emit comma-separated values instead of an aligned table.
    #[arg(long)]
    csv: bool,
}

fn load(args: &CheckArgs) -> Result<PolytopeSpec> {
    match (&args.expr, &args.input) {
        (Some(expr), _) => parse_construction(expr),
        (None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(path)?
            };
            PolytopeDocument::from_json(&text)?.to_spec()
        }
        (None, None) => Err(Error::Precondition(
            "give a construction expression or --input FILE".into(),
        )),
    }
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn check(args: &CheckArgs) -> Result<u8> {
    let spec = load(args)?;
    let options = CheckOptions {
        incident: args.incident,
        oracle: args.oracle,
    };
    let report = run_check(&spec, options)?;
    if let Some(path) = &args.dot {
        let graph = VertexFacetGraph::build(spec.matrix(), report.mode);
        fs::write(path, export_dot(&graph, spec.matrix(), Some(&report.certificate)))?;
    }
    emit(&format!("{}\n", report.to_json()))?;
    Ok(report.exit_code)
}

fn corpus(csv: bool) -> Result<u8> {
    let rows = run_corpus(&corpus_expressions());
    let text = if csv { render_csv(&rows)? } else { render_table(&rows) };
    emit(&text)?;
    let failed = rows.iter().filter(|r| !r.agree).count();
    if failed > 0 {
        eprintln!("{failed} corpus rows failed their cross-checks");
        return Ok(exit::INCONSISTENCY);
    }
    Ok(exit::ASSIGNED)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) if args.corpus => corpus(args.csv),
        Command::Check(args) => check(args),
        Command::Corpus(args) => corpus(args.csv),
        Command::Export { expr } => parse_construction(expr).and_then(|spec| {
            emit(&format!("{}\n", PolytopeDocument::from_spec(&spec).to_json()))?;
            Ok(exit::ASSIGNED)
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
