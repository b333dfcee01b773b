use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use racg_formality::census::{self, CensusMode, CensusOptions};
use racg_formality::{
    coabelian_report, hochster_complex_betti, hochster_real_betti, Error, FormalityAnalyzer, Graph, Method,
    SimplicialComplex, Subgroup, VertexSet,
};

const EXIT_FORMAL: u8 = 0;
const EXIT_NOT_FORMAL: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "racgf",
    version,
    about = "Equivariant formality of real moment-angle complexes over F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide formality of Z2^I acting on RZ_K.
    Check {
        /// Complex JSON file: {"m": 4, "facets": [[1,2],[2,3]]}
        complex: PathBuf,
        /// Comma-separated vertices of I; empty for I = ∅.
        #[arg(short = 'I', long = "subset", default_value = "", allow_hyphen_values = true)]
        subset: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Run every applicable method and compare (same as --method all).
        #[arg(long)]
        cross_check: bool,
    },
    /// Betti numbers of RZ_K and/or Z_K.
    Betti {
        complex: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
    },
    /// Coordinate hull, rank and corank of a subgroup of Z2^m.
    Hull { subgroup: PathBuf },
    /// Group-theoretic report for a graph and a subgroup of Z2^m.
    Report { graph: PathBuf, subgroup: PathBuf },
    /// Exhaustive agreement census written as JSONL.
    Census {
        #[arg(long)]
        max_vertices: usize,
        /// Smallest vertex count to include; defaults to --max-vertices.
        #[arg(long)]
        min_vertices: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Flag)]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Recompute every record of a census file and compare byte for byte.
    Verify { census: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Flag,
    General,
    Oracle,
    Torus,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Real,
    Complex,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Flag,
    AllComplexes,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_FORMAL };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL })
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Check {
            complex,
            subset,
            method,
            cross_check,
        } => {
            let k: SimplicialComplex = read_json(&complex)?;
            let subset = parse_subset(&subset)?;
            let method = if cross_check { MethodArg::All } else { method };
            check(&k, subset, method)
        }
        Command::Betti { complex, which } => {
            let k: SimplicialComplex = read_json(&complex)?;
            let mut out = serde_json::Map::new();
            if matches!(which, Which::Real | Which::Both) {
                out.insert("real".into(), serde_json::to_value(hochster_real_betti(&k)?)?);
            }
            if matches!(which, Which::Complex | Which::Both) {
                out.insert("complex".into(), serde_json::to_value(hochster_complex_betti(&k)?)?);
            }
            print_json(&Value::Object(out))?;
            Ok(0)
        }
        Command::Hull { subgroup } => {
            let a: Subgroup = read_json(&subgroup)?;
            print_json(&json!({ "I": a.hull(), "rank": a.rank(), "corank": a.corank() }))?;
            Ok(0)
        }
        Command::Report { graph, subgroup } => {
            let g: Graph = read_json(&graph)?;
            let a: Subgroup = read_json(&subgroup)?;
            let report = coabelian_report(&g, &a)?;
            print_json(&report)?;
            Ok(if report.verdict.is_formal() {
                EXIT_FORMAL
            } else {
                EXIT_NOT_FORMAL
            })
        }
        Command::Census {
            max_vertices,
            min_vertices,
            mode,
            out,
            jobs,
        } => {
            let mode = match mode {
                ModeArg::Flag => CensusMode::Flag,
                ModeArg::AllComplexes => CensusMode::AllComplexes,
            };
            let options = CensusOptions {
                mode,
                min_vertices: min_vertices.unwrap_or(max_vertices),
                max_vertices,
                jobs,
            };
            let file = File::create(&out).map_err(|e| io_context(&out, e))?;
            let (records, summary) = census::run(&options)?;
            census::write_jsonl(&records, BufWriter::new(file))?;
            println!(
                "{} complexes, {} records, {} formal, {} disagreements, {} fixed-set excesses -> {}",
                summary.complexes,
                summary.records,
                summary.formal,
                summary.disagreements,
                summary.smith_violations,
                out.display()
            );
            Ok(if summary.disagreements == 0 { 0 } else { 1 })
        }
        Command::Verify { census: path } => {
            let file = File::open(&path).map_err(|e| io_context(&path, e))?;
            let outcome = census::verify(BufReader::new(file))?;
            if outcome.records == 0 {
                eprintln!("warning: 0 records");
            }
            for m in &outcome.mismatches {
                eprintln!(
                    "line {}: mismatch\n  found:    {}\n  expected: {}",
                    m.line, m.found, m.expected
                );
            }
            println!("{} records, {} mismatches", outcome.records, outcome.mismatches.len());
            Ok(if outcome.ok() { 0 } else { 1 })
        }
    }
}

fn check(k: &SimplicialComplex, subset: VertexSet, method: MethodArg) -> Result<u8, Error> {
    let analyzer = FormalityAnalyzer::new(k)?;
    let single = match method {
        MethodArg::Flag => Some(Method::FlagCriterion),
        MethodArg::General => Some(Method::GeneralCriterion),
        MethodArg::Oracle => Some(Method::BettiSumOracle),
        MethodArg::Torus => Some(Method::TorusOracle),
        MethodArg::All => None,
    };
    if let Some(method) = single {
        let report = analyzer.run(method, subset)?;
        print_json(&report)?;
        return Ok(if report.verdict.is_formal() {
            EXIT_FORMAL
        } else {
            EXIT_NOT_FORMAL
        });
    }
    let reports = analyzer.cross_check(subset)?;
    print_json(&reports)?;
    let first = reports[0].verdict;
    Ok(if reports.iter().any(|r| r.verdict != first) {
        EXIT_DISAGREEMENT
    } else if first.is_formal() {
        EXIT_FORMAL
    } else {
        EXIT_NOT_FORMAL
    })
}

fn parse_subset(text: &str) -> Result<VertexSet, Error> {
    let vertices = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad vertex {s:?} in subset {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    VertexSet::try_from_vertices(vertices)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let file = File::open(path).map_err(|e| io_context(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn print_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<(), Error> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn io_context(path: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}
