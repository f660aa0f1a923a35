use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cqdef_cli::report::build_report;
use cqdef_cli::scan::{parse_range, scan, to_csv, to_json};
use cqdef_cli::{exit_code, svg};
use cqdef_core::{Error, Model};

/// Toric deformations of cyclic quotient surface singularities.
#[derive(Parser)]
#[command(name = "cqdef", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for Y(n,q).
    Analyze {
        n: i64,
        q: i64,
        /// Emit the report as JSON.
        #[arg(long, conflicts_with = "verbose")]
        json: bool,
        /// Also write segments.svg, decompositions.svg and slices.svg here.
        #[arg(long, value_name = "DIR")]
        svg: Option<PathBuf>,
        /// Include equations, versal maps and fans in the text report.
        #[arg(long, short)]
        verbose: bool,
    },
    /// One summary row per (n, q).
    Scan {
        /// Inclusive range of n, as A:B.
        #[arg(long, value_name = "A:B")]
        n_range: String,
        /// Restrict q to an inclusive range.
        #[arg(long, value_name = "A:B")]
        q_range: Option<String>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Append finished rows here and skip them on the next run.
        #[arg(long, value_name = "FILE")]
        checkpoint: Option<PathBuf>,
    },
    /// Write one figure as SVG.
    Figure {
        n: i64,
        q: i64,
        /// segments, decompositions or slices
        target: String,
        #[arg(short, value_name = "FILE")]
        o: PathBuf,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CQDEF_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Error::InvalidInput(format!("CQDEF_THREADS={v:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(())
}

/// Write to stdout; a closed pipe downstream is not an error.
fn emit(s: &str) -> std::io::Result<()> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Analyze { n, q, json, svg: dir, verbose } => {
            let report = build_report(n, q)?;
            if json {
                emit(&(report.to_json() + "\n"))?;
            } else {
                emit(&report.to_text(verbose))?;
            }
            if let Some(dir) = dir {
                let model = Model::from_i64(n, q)?;
                fs::create_dir_all(&dir)?;
                for target in svg::TARGETS {
                    fs::write(dir.join(format!("{target}.svg")), svg::figure(&model, target)?)?;
                }
            }
        }
        Command::Scan { n_range, q_range, json, csv: _, checkpoint } => {
            let n_range = parse_range(&n_range)?;
            let q_range = q_range.as_deref().map(parse_range).transpose()?;
            let rows = scan(n_range, q_range, checkpoint.as_deref())?;
            if json {
                emit(&(to_json(&rows) + "\n"))?;
            } else {
                emit(&to_csv(&rows))?;
            }
        }
        Command::Figure { n, q, target, o } => {
            let model = Model::from_i64(n, q)?;
            fs::write(&o, svg::figure(&model, &target)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
