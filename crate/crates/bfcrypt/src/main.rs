use std::path::PathBuf;
use std::process::ExitCode;

use bfcrypt::format::parse_function;
use bfcrypt::search::{SearchConfig, SearchMode, Target};
use bfcrypt::{format, parallel, report, search, CliError};
use bfcrypt_core::cubic::algorithm1;
use bfcrypt_core::wht;
use clap::{Parser, Subcommand};

/// Cryptographic analysis of Boolean and vectorial Boolean functions.
#[derive(Parser)]
#[command(name = "bfcrypt", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for random search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of variables.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one function given as an ANF or as `n=<k>:<hex>`.
    Analyze { input: String },
    /// Walsh spectrum in index order.
    Walsh { input: String },
    /// Hamming weight.
    Weight {
        input: String,
        /// Use the cubic splitting algorithm and print its trace as JSON.
        #[arg(long)]
        algorithm1: bool,
    },
    /// Vectorial functions.
    Vbf {
        #[command(subcommand)]
        command: VbfCommand,
    },
    /// Search pure quadratic functions for APN ones.
    Search {
        #[arg(long, default_value = "random")]
        mode: SearchMode,
        /// Candidates to draw in random mode.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// `apn` or `bent-components=K`.
        #[arg(long, default_value = "apn")]
        target: Target,
        /// Stop after this many hits.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VbfCommand {
    /// Report for a file with `n=<k>` on the first line and one ANF per coordinate.
    Analyze { file: PathBuf },
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let pool = parallel::pool(cli.threads)?;
    match cli.command {
        Command::Analyze { input } => {
            let f = parse_function(&input, cli.n)?;
            let r = report::analyze(&pool, &f)?;
            emit(cli.json, &r, || r.to_text())
        }
        Command::Walsh { input } => {
            let f = parse_function(&input, cli.n)?;
            let s = wht(&f.to_truth_table());
            emit(cli.json, &s.values(), || {
                s.values().iter().map(i64::to_string).collect::<Vec<_>>().join(" ") + "\n"
            })
        }
        Command::Weight { input, algorithm1: false } => {
            let f = parse_function(&input, cli.n)?;
            let w = f.to_truth_table().weight();
            emit(cli.json, &w, || format!("{w}\n"))
        }
        Command::Weight { input, algorithm1: true } => {
            let f = parse_function(&input, cli.n)?;
            let r = report::Algorithm1Report::from(&algorithm1(&f)?);
            emit(true, &r, String::new)
        }
        Command::Vbf { command: VbfCommand::Analyze { file } } => {
            let f = format::parse_vbf(&std::fs::read_to_string(file)?)?;
            if let Some(n) = cli.n.filter(|&n| n != f.n()) {
                return Err(CliError::Mismatch(format!("file has n = {} but -n {n} was given", f.n())));
            }
            let r = report::analyze_vbf(&pool, &f)?;
            emit(cli.json, &r, || r.to_text())
        }
        Command::Search { mode, samples, target, limit } => {
            let n = cli.n.ok_or_else(|| CliError::Infeasible("search needs -n".into()))?;
            let cfg = SearchConfig { n, mode, samples, seed: cli.seed, target, limit };
            let r = search::run(&cfg, &pool)?;
            emit(cli.json, &r, || r.to_text())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bfcrypt: {e}");
            e.exit_code()
        }
    }
}
