//! `lambdacoh`: lambda-ring cohomology and deformations from the command line.
//!
//! Exit status is 0 when everything checked out, 1 when a violation was found or a search
//! came back empty, and 2 for bad input.

mod commands;
mod context;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::context::CliError;
use crate::report::{Bounds, Report, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "lambdacoh", version, about = "Exact lambda-ring cohomology and deformation calculus")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Options {
    /// Built-in ring: Z, RC2 or RC3.
    #[arg(long, global = true, default_value = "Z")]
    pub preset: String,
    /// JSON ring file; overrides --preset.
    #[arg(long, global = true)]
    pub ring: Option<PathBuf>,
    /// Prime universe, e.g. 2,3,5.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exponent bound for sampling and for extension constraints.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    #[serde(skip)]
    pub format: Format,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// JSON deformation file.
    #[arg(long, global = true)]
    pub deformation: Option<PathBuf>,
    /// Second deformation file for `deform equiv`.
    #[arg(long, global = true)]
    pub other: Option<PathBuf>,
    #[arg(long, global = true)]
    pub level: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring axioms on the basis.
    Ring {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Adams generators: ring maps, commuting, Frobenius mod p.
    Adams {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Lambda-operations via the Newton formula.
    Lambda {
        #[command(subcommand)]
        cmd: LambdaCmd,
    },
    /// Universal polynomials in elementary symmetric functions.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Identities of the cochain complex at sampled points.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// H0 and H1 relative to the prime universe.
    Cohomology {
        #[command(subcommand)]
        cmd: CohomologyCmd,
    },
    /// Deformations of the Adams operations up to a finite order.
    Deform {
        #[command(subcommand)]
        cmd: DeformCmd,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Verify,
}

#[derive(Subcommand, Debug)]
enum LambdaCmd {
    /// Lambda-operations from the Adams operations, plus an axiom check.
    FromAdams {
        /// Element coordinates, e.g. 1,2; defaults to the basis and a few multiples.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        element: Option<Vec<i64>>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// P_i: lambda^i of a product.
    #[command(name = "P")]
    P { i: usize },
    /// P_{i,j}: lambda^i of lambda^j.
    #[command(name = "Pij")]
    Pij { i: usize, j: usize },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    Check {
        #[arg(value_enum)]
        identity: IdentityArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum IdentityArg {
    DSquared,
    Cosimplicial,
    Leibniz,
}

#[derive(Subcommand, Debug)]
enum CohomologyCmd {
    H0,
    H1,
    /// H0 and H1 over each prefix of the prime universe.
    Compare,
}

#[derive(Subcommand, Debug)]
enum DeformCmd {
    Verify,
    Infinitesimal,
    Obstruction,
    /// Extend step by step up to --order (default: one more than the input).
    Extend,
    Normalize,
    Equiv,
}

impl Command {
    fn name(&self) -> String {
        let s = match self {
            Command::Ring { .. } => "ring verify",
            Command::Adams { .. } => "adams verify",
            Command::Lambda { .. } => "lambda from-adams",
            Command::Poly { cmd: PolyCmd::P { .. } } => "poly P",
            Command::Poly { cmd: PolyCmd::Pij { .. } } => "poly Pij",
            Command::Complex { .. } => "complex check",
            Command::Cohomology { cmd } => match cmd {
                CohomologyCmd::H0 => "cohomology h0",
                CohomologyCmd::H1 => "cohomology h1",
                CohomologyCmd::Compare => "cohomology compare",
            },
            Command::Deform { cmd } => match cmd {
                DeformCmd::Verify => "deform verify",
                DeformCmd::Infinitesimal => "deform infinitesimal",
                DeformCmd::Obstruction => "deform obstruction",
                DeformCmd::Extend => "deform extend",
                DeformCmd::Normalize => "deform normalize",
                DeformCmd::Equiv => "deform equiv",
            },
        };
        s.to_string()
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = &cli.opts;
    let family = context::load_family(opts)?;
    let default_bound = match &cli.command {
        Command::Deform { .. } => lambdacoh::deformation::DEFAULT_EXPONENT_BOUND,
        _ => 2,
    };
    let bound = opts.bound.unwrap_or(default_bound);
    let ctx = context::Context {
        family,
        opts: opts.clone(),
        bound,
    };
    let mut config = serde_json::to_value(opts).expect("options serialize");
    let outcome = match &cli.command {
        Command::Ring { cmd: VerifyCmd::Verify } => commands::ring_verify(&ctx),
        Command::Adams { cmd: VerifyCmd::Verify } => commands::adams_verify(&ctx),
        Command::Lambda {
            cmd: LambdaCmd::FromAdams { element, degree },
        } => {
            config["element"] = serde_json::json!(element);
            config["degree"] = serde_json::json!(degree);
            commands::lambda_from_adams(&ctx, element.as_deref(), *degree)?
        }
        Command::Poly { cmd: PolyCmd::P { i } } => {
            config["i"] = serde_json::json!(i);
            commands::poly(*i, None)?
        }
        Command::Poly { cmd: PolyCmd::Pij { i, j } } => {
            config["i"] = serde_json::json!(i);
            config["j"] = serde_json::json!(j);
            commands::poly(*i, Some(*j))?
        }
        Command::Complex {
            cmd: ComplexCmd::Check { identity },
        } => {
            config["identity"] = serde_json::json!(identity.to_possible_value().map(|v| v.get_name().to_string()));
            commands::complex_check(&ctx, *identity)?
        }
        Command::Cohomology { cmd } => match cmd {
            CohomologyCmd::H0 => commands::h0(&ctx),
            CohomologyCmd::H1 => commands::h1(&ctx)?,
            CohomologyCmd::Compare => commands::compare(&ctx)?,
        },
        Command::Deform { cmd } => match cmd {
            DeformCmd::Verify => commands::deform_verify(&ctx)?,
            DeformCmd::Infinitesimal => commands::deform_infinitesimal(&ctx)?,
            DeformCmd::Obstruction => commands::deform_obstruction(&ctx)?,
            DeformCmd::Extend => commands::deform_extend(&ctx)?,
            DeformCmd::Normalize => commands::deform_normalize(&ctx)?,
            DeformCmd::Equiv => commands::deform_equiv(&ctx)?,
        },
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name(),
        config,
        status: outcome.status,
        results: outcome.results,
        seed: opts.seed,
        universe: ctx.family.universe().primes().to_vec(),
        bounds: Bounds {
            exponent: bound,
            samples: opts.samples,
            order: opts.order,
        },
        lines: outcome.lines,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.opts.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
