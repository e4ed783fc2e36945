//! `morseflow` command-line front end.

mod selfcheck;

use clap::{Parser, Subcommand, ValueEnum};
use morseflow_core::algebra::verify_chain_maps;
use morseflow_core::braid::{word_to_diagram, BraidDiagram, PositiveWord};
use morseflow_core::pipeline::{analyze, configure_threads, sha256_hex, Analysis, AnalysisOptions};
use morseflow_core::{diagram_isomorphic, Error, ReductionOptions, DEFAULT_CELL_BUDGET};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "morseflow", version, about = "Morse tiles, connection matrices and phase diagrams of braid skeletons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Field {
    Gf2,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a braid file and print the JSON report.
    Analyze {
        file: PathBuf,
        /// Coefficient field; only GF(2) is supported.
        #[arg(long, value_enum, default_value = "gf2")]
        field: Field,
        /// Write full.dot and reduced.dot into this directory.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        /// Write the top-cell λ grid (d = 2 only).
        #[arg(long, value_name = "PATH")]
        lambda_table: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
        /// Keep the reduction chain maps, check every step and verify the maps.
        #[arg(long)]
        debug_chain_maps: bool,
    },
    /// Braid file of a positive word such as "s1 s1 s2".
    Word2braid {
        word: String,
        #[arg(long)]
        n_inner: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Append k constant steps to every strand.
    Extend {
        file: PathBuf,
        #[arg(short, long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Compare the reduced phase diagrams and total polynomials of two braids.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
    },
    /// Run the property checks on the shipped fixtures.
    Selfcheck {
        #[arg(short, long)]
        verbose: bool,
        /// Check every *.json braid file in this directory instead.
        #[arg(long, value_name = "DIR")]
        fixture_dir: Option<PathBuf>,
    },
}

/// Error with the file it came from.
struct Failure {
    file: Option<PathBuf>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { file: None, error }
    }
}

fn at(file: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |error| Failure { file: Some(file.to_path_buf()), error }
}

fn read_braid(path: &Path) -> Result<(BraidDiagram, Vec<u8>), Failure> {
    let bytes = std::fs::read(path).map_err(|e| at(path)(e.into()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| at(path)(Error::Invalid("file is not UTF-8".into())))?;
    let b = BraidDiagram::from_json_str(&text).map_err(at(path))?;
    Ok((b, bytes))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| at(p)(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn options(cell_budget: u64, debug: bool) -> AnalysisOptions {
    AnalysisOptions { cell_budget, reduction: ReductionOptions { chain_maps: debug, check_steps: debug } }
}

fn run_analyze(
    file: &Path,
    dot: Option<&Path>,
    lambda_table: Option<&Path>,
    json_out: Option<&Path>,
    cell_budget: u64,
    debug: bool,
) -> Result<(), Failure> {
    let (b, bytes) = read_braid(file)?;
    let a = analyze(&b, options(cell_budget, debug)).map_err(at(file))?;
    if debug {
        verify_chain_maps(&a.graded, &a.conley).map_err(at(file))?;
        eprintln!("chain maps verified ({} pairs cancelled)", a.conley.pairs_cancelled);
    }
    if let Some(path) = lambda_table {
        let table = a.lambda.table_2d(&a.complex).map_err(at(file))?;
        write_out(Some(path), &table)?;
    }
    if let Some(dir) = dot {
        std::fs::create_dir_all(dir).map_err(|e| at(dir)(e.into()))?;
        write_out(Some(&dir.join("full.dot")), &a.full.to_dot("full"))?;
        write_out(Some(&dir.join("reduced.dot")), &a.reduced.to_dot("reduced"))?;
    }
    let report = a.report(&sha256_hex(&bytes));
    let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::from(Error::from(e)))? + "\n";
    write_out(json_out, &text)
}

fn run_compare(a: &Path, b: &Path, cell_budget: u64) -> Result<(), Failure> {
    let load = |p: &Path| -> Result<Analysis, Failure> {
        let (braid, _) = read_braid(p)?;
        analyze(&braid, options(cell_budget, false)).map_err(at(p))
    };
    let (x, y) = (load(a)?, load(b)?);
    let out = json!({
        "isomorphic": diagram_isomorphic(&x.reduced, &y.reduced),
        "polynomial_equal": x.full.total_poly() == y.full.total_poly(),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("plain JSON"));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, field: Field::Gf2, dot, lambda_table, json, cell_budget, debug_chain_maps } => {
            run_analyze(&file, dot.as_deref(), lambda_table.as_deref(), json.as_deref(), cell_budget, debug_chain_maps)
        }
        Command::Word2braid { word, n_inner, out } => {
            let w = PositiveWord::parse(&word)?;
            let b = word_to_diagram(&w, n_inner)?;
            write_out(out.as_deref(), &b.to_json_string())
        }
        Command::Extend { file, k, out } => {
            if k < 0 {
                return Err(Error::Invalid(format!("extension count must be nonnegative, got {k}")).into());
            }
            let (b, _) = read_braid(&file)?;
            write_out(out.as_deref(), &b.extend_by(k as usize).to_json_string())
        }
        Command::Compare { a, b, cell_budget } => run_compare(&a, &b, cell_budget),
        Command::Selfcheck { verbose, fixture_dir } => selfcheck::run(verbose, fixture_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { file, error }) => {
            let kind = match &error {
                Error::Invalid(_) => "invalid",
                Error::Braid(_) => "braid",
                Error::CellBudget { .. } => "cell_budget",
                Error::Invariant(_) => "invariant",
                Error::Json(_) => "json",
                Error::Io(_) => "io",
            };
            let report = json!({
                "error": {
                    "kind": kind,
                    "message": error.to_string(),
                    "file": file.map(|f| f.display().to_string()),
                }
            });
            eprintln!("{report}");
            ExitCode::from(if error.is_internal() { 3 } else { 2 })
        }
    }
}
