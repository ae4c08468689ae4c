mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homcalc::io::canonical;
use homcalc::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "homcalc", version, about = "Homological dimensions, constructions and conjecture scans over finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Algebra file (raw or quiver JSON), or a built-in corpus name.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Module file; repeat for several modules.
    #[arg(long = "module", global = true)]
    pub modules: Vec<PathBuf>,
    /// Ext degrees examined before a verdict turns Unknown.
    #[arg(long, global = true, default_value_t = 40)]
    pub cutoff: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random modules per property and algebra.
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub report: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the algebra, modules, or a witness file.
    Validate {
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Projective, injective, Gorenstein, perpendicular and torsionfree dimensions.
    Dims,
    /// dim Ext^i(M, N) for the two given modules.
    Ext {
        /// Degree to compute; repeatable. Defaults to 1 through 6.
        #[arg(long)]
        degree: Vec<usize>,
    },
    /// Auslander-Bridger transpose, a module over the opposite algebra.
    Transpose,
    /// Run a construction on a module and validate the resulting witnesses.
    Construct {
        /// thm36, cor45, prop33, prop34, prop43 or prop44.
        #[arg(long)]
        target: String,
        /// Subcategory the construction is relative to.
        #[arg(long, default_value = "GorensteinProjectives")]
        class: String,
    },
    /// Run property suites on random modules.
    Verify {
        /// Property id, or `all`; repeatable.
        #[arg(long, required = true)]
        suite: Vec<String>,
    },
    /// Scan for counterexample candidates to a conjecture.
    Scan {
        #[arg(long)]
        target: String,
    },
}

/// Exit status of a completed run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Clean,
    Failure,
}

pub struct Response {
    pub json: serde_json::Value,
    pub text: String,
    pub status: Status,
}

/// Errors caused by the inputs rather than by the computation.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Validation { .. }
            | Error::AlgebraMismatch
            | Error::BadModule(_)
            | Error::BadMorphism(_)
            | Error::BadSequence(_)
            | Error::UnknownPropertyId(_)
            | Error::UnknownConjectureId(_)
            | Error::UnsupportedKind(_)
            | Error::NonAssociative(..)
            | Error::BadUnit(_)
            | Error::BadIdempotents(_)
            | Error::RadicalNotIdeal(_)
            | Error::RadicalNotNilpotent(_)
            | Error::RelationNotLengthHomogeneous(_)
            | Error::PathExplosion(_)
            | Error::BadQuiver(_)
            | Error::BadCharacteristic(_)
            | Error::DimensionMismatch(_)
    )
}

fn run(cli: Cli) -> homcalc::Result<Response> {
    let ctx = commands::Context::new(cli.opts)?;
    match cli.command {
        Command::Validate { witness } => commands::validate(&ctx, witness.as_deref()),
        Command::Dims => commands::dims(&ctx),
        Command::Ext { degree } => commands::ext(&ctx, &degree),
        Command::Transpose => commands::transpose(&ctx),
        Command::Construct { target, class } => commands::construct(&ctx, &target, &class),
        Command::Verify { suite } => commands::verify(&ctx, &suite),
        Command::Scan { target } => commands::scan(&ctx, &target),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.opts.report;
    match run(cli) {
        Ok(r) => {
            match format {
                Format::Json => print!("{}", canonical(&r.json)),
                Format::Text => print!("{}", r.text),
            }
            match r.status {
                Status::Clean => ExitCode::SUCCESS,
                Status::Failure => ExitCode::from(1),
            }
        }
        Err(e) => {
            let input = is_input_error(&e);
            match format {
                Format::Json => {
                    let kind = if input { "input" } else { "computation" };
                    print!("{}", canonical(&json!({ "error": { "kind": kind, "message": e.to_string() } })));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(if input { 2 } else { 1 })
        }
    }
}
