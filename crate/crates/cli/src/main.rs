//! Command-line front end for the semigroup workbench.
//!
//! Exit codes: 0 verified, 1 refuted (witness printed), 2 inconclusive
//! (bounded search or budget), 3 input error.

mod commands;
mod report;
mod spec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lab(#[from] semigroup_lab::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lab(
                semigroup_lab::Error::SearchTooLarge { .. }
                | semigroup_lab::Error::SearchInconclusive(_),
            ) => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "semigroup-lab", version, about = "Finite semigroup workbench")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Leave timings out of JSON reports.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, idempotents, identity element and power data.
    Info { spec: String },
    /// Green's relations and DS/LDS membership.
    Green { spec: String },
    /// Check an identity written "U == V".
    CheckId {
        spec: String,
        identity: String,
        #[arg(long, default_value_t = semigroup_lab::words::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Bounded isoterm check for a word of a monoid.
    Isoterm {
        spec: String,
        word: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = semigroup_lab::words::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// The u_n == v_n identities.
    #[command(subcommand)]
    Nfb(NfbCommand),
    /// Bounded search for B_2 or B_2^1 as a divisor of S × S.
    Divisor(DivisorArgs),
    /// The embedding of IC_4 into T_4(2).
    EmbedIc4 {
        /// Verify injectivity, shape and the homomorphism property.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Subcommand)]
enum NfbCommand {
    /// Build an instance and print or write its certificate.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check P0-P2 and that SPEC satisfies u_n == v_n.
    Verify {
        spec: String,
        /// Build the instance with k, m from the power data of SPEC.
        #[arg(long, required_unless_present = "cert")]
        n: Option<usize>,
        /// Use the instance of a certificate instead.
        #[arg(long)]
        cert: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = semigroup_lab::words::DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    B2,
    B21,
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    spec: String,
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long, default_value_t = 3)]
    max_gens: usize,
    /// Cap on generator-tuple assignments.
    #[arg(long, default_value_t = semigroup_lab::divisor::DEFAULT_SEARCH_CAP)]
    cap: u128,
    /// Search SPEC itself rather than SPEC × SPEC, without cross-validation.
    #[arg(long)]
    no_square: bool,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Info { spec } => commands::info(spec),
        Command::Green { spec } => commands::green(spec),
        Command::CheckId {
            spec,
            identity,
            budget,
        } => commands::check_id(spec, identity, *budget),
        Command::Isoterm {
            spec,
            word,
            max_len,
            budget,
        } => commands::isoterm(spec, word, *max_len, *budget),
        Command::Nfb(NfbCommand::Gen { n, k, m, out }) => {
            commands::nfb_gen(*n, *k, *m, out.as_deref(), cli.json)
        }
        Command::Nfb(NfbCommand::Verify {
            spec,
            n,
            cert,
            budget,
        }) => commands::nfb_verify(spec, *n, cert.as_deref(), *budget),
        Command::Divisor(args) => commands::divisor(args),
        Command::EmbedIc4 { check } => commands::embed_ic4(*check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                let value = report.to_json(!cli.no_timings);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                );
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            ExitCode::from(report.verdict.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
