//! Command-line front end: construct the deformed algebras, run the
//! verification suite, emit certificates.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdeform::error::Error;
use qdeform::group_reference::GroupKind;
use qdeform::pipeline::{self, RunConfig};

#[derive(Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Separable deformations of quaternion and dihedral 2-group algebras, \
             with machine-checked certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full construction and verification suite and emit a certificate
    Certify(RunArgs),
    /// Print the construction data without the verification battery
    Construct(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Group order exponent: the group has order 2^n (n >= 3)
    #[arg(long)]
    n: u32,

    /// Group family: quaternion or dihedral
    #[arg(long)]
    group: String,

    /// Root exponent m >= 2^(n-2) (default: the minimum)
    #[arg(long)]
    m: Option<i64>,

    /// First root scalar as a field-element bit pattern (default 1)
    #[arg(long)]
    alpha1: Option<u32>,

    /// Second root scalar as a field-element bit pattern
    /// (default: a multiplicative generator of the field)
    #[arg(long)]
    alpha2: Option<u32>,

    /// Absolute t-adic working precision (default 8m + 2^(n-1) + 16)
    #[arg(long)]
    precision: Option<i64>,

    /// Write the output to this file; certificates then also print a
    /// per-check text summary on stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for the randomized property checks (recorded in the certificate)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RunArgs {
    fn to_config(&self) -> Result<RunConfig, Error> {
        let kind: GroupKind = self.group.parse()?;
        Ok(RunConfig {
            n: self.n,
            kind,
            m: self.m,
            alpha1: self.alpha1,
            alpha2: self.alpha2,
            precision: self.precision,
            seed: self.seed,
        })
    }
}

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Certify(args) => certify(&args),
        Command::Construct(args) => construct(&args),
    }
}

fn certify(args: &RunArgs) -> ExitCode {
    let cfg = match args.to_config() {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let cert = match pipeline::certify(&cfg) {
        Ok(cert) => cert,
        Err(e @ Error::Config(_)) => return usage_error(&e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
    };
    let json = cert.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CHECK_FAILURE);
            }
            print!("{}", cert.text_summary());
        }
        None => println!("{json}"),
    }
    if cert.all_pass() {
        ExitCode::SUCCESS
    } else {
        let first = cert.first_failure().expect("failure exists");
        eprintln!("FAILED: {}", first.name);
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn construct(args: &RunArgs) -> ExitCode {
    let cfg = match args.to_config() {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let report = match pipeline::construct(&cfg) {
        Ok(report) => report,
        Err(e @ Error::Config(_)) => return usage_error(&e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
    };
    let text = format!("{report}");
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CHECK_FAILURE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn usage_error(e: &Error) -> ExitCode {
    eprintln!("usage error: {e}");
    ExitCode::from(EXIT_USAGE)
}
