//! Command-line front end: load or generate arrangements, build their
//! discriminantal arrangements, classify intersections, and emit reports.
//!
//! Exit codes: 0 success, 2 domain violation (non-generic input, unsupported
//! construction parameters, retry exhaustion), 3 I/O or parse errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use discriminantal::Error as CoreError;

#[derive(Parser)]
#[command(name = "discriminantal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every intersection of B(n,k,A) up to a rank bound.
    Check {
        /// Arrangement file (JSON).
        #[arg(short, long)]
        input: String,
        /// Report destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<String>,
        /// Enumeration depth; defaults to min(n-k-1, 4), at least 1.
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a named arrangement family and its certificate.
    Generate {
        /// One of: dense-uk, a2m, rank2-symmetric, rank2-general, example-8-5.
        #[arg(long)]
        family: String,
        /// Arrangement output path; the certificate lands next to it.
        #[arg(short, long)]
        output: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Slope parameter for the rotation-orbit family, as p or p/q.
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the Gale diagram (dual point configuration) of an arrangement.
    Gale {
        #[arg(short, long)]
        input: String,
        /// Point-configuration destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Compare discriminantal and adjoint rank functions over hyperplane
    /// families.
    Falk {
        #[arg(short, long)]
        input: String,
        #[arg(short, long)]
        output: Option<String>,
        /// Largest family size to check.
        #[arg(long, default_value_t = 4)]
        max_family_size: usize,
        /// Family-count budget; larger spaces are sampled with the seed.
        #[arg(long, default_value_t = 20000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn exit_code_for(err: &commands::CmdError) -> u8 {
    match err {
        commands::CmdError::Io(_) => 3,
        commands::CmdError::Core(core) => match core {
            CoreError::Parse(_) | CoreError::FieldMismatch(_) | CoreError::InvalidArrangement(_) => 3,
            _ => 2,
        },
        commands::CmdError::Usage(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            input,
            output,
            max_rank,
            format,
        } => commands::cmd_check(&input, output.as_deref(), max_rank, format),
        Command::Generate {
            family,
            output,
            k,
            m,
            n,
            p,
            seed,
        } => commands::cmd_generate(&family, &output, k, m, n, &p, seed),
        Command::Gale { input, output } => commands::cmd_gale(&input, output.as_deref()),
        Command::Falk {
            input,
            output,
            max_family_size,
            budget,
            seed,
            format,
        } => commands::cmd_falk(&input, output.as_deref(), max_family_size, budget, seed, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
