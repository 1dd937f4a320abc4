use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use multider::cli::{parse_checks, run, Command, Format, Limits, RunConfig, EXIT_FAIL, EXIT_USAGE};
use multider::multider::Fault;

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Basis,
    Bmatrix,
    Verify,
    Selftest,
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    NegateFirstPartial,
}

/// Exact multiderivation bases for Coxeter arrangements.
#[derive(Parser)]
#[command(name = "multider", version)]
struct Args {
    command: Cmd,
    /// Catalog key such as B3, D4 or I2(5).
    system: Option<String>,
    /// Multiplicity for basis and verify.
    #[arg(long, conflicts_with = "k")]
    m: Option<usize>,
    /// Index of B^(k) for bmatrix.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Fmt,
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Lift the m <= 8 and rank <= 5 limits. Runs may take very long.
    #[arg(long)]
    override_limits: bool,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include elapsed times in the output.
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let checks = match parse_checks(&args.checks) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let config = RunConfig {
        command: match args.command {
            Cmd::Basis => Command::Basis,
            Cmd::Bmatrix => Command::Bmatrix,
            Cmd::Verify => Command::Verify,
            Cmd::Selftest => Command::Selftest,
            Cmd::Catalog => Command::Catalog,
        },
        system: args.system,
        m: args.m,
        k: args.k,
        format: match args.format {
            Fmt::Json => Format::Json,
            Fmt::Text => Format::Text,
        },
        checks,
        limits: Limits {
            allow_override: args.override_limits,
            ..Limits::default()
        },
        out: args.out,
        timings: args.timings,
        fault: args.inject_fault.map(|f| match f {
            FaultArg::NegateFirstPartial => Fault::NegateFirstPartial,
        }),
    };
    let outcome = run(&config);
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => std::io::stdout().write_all(&outcome.output),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAIL as u8);
    }
    ExitCode::from(outcome.exit as u8)
}
