//! `legz`: solve `a x^2 + b y^2 + c z^2 = 0` over the Gaussian integers.

mod report;
mod run;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use legz::GaussianInt;

#[derive(Parser, Debug)]
#[command(name = "legz", version, about = "Legendre's equation over Z[i]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize, decide, search, descend and map back.
    Solve {
        #[command(flatten)]
        eq: EquationArgs,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Evaluate the residual of a triple exactly.
    Check {
        #[command(flatten)]
        eq: EquationArgs,
        #[command(flatten)]
        sol: RequiredSolution,
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form and its reduction trace.
    Normalize {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide solvability of the normal form, with witnesses.
    Samet {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long)]
        json: bool,
    },
    /// Minimal primitive solution within the search bound.
    Search {
        #[command(flatten)]
        eq: EquationArgs,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Print every descent step from a seed (searched for if not given).
    Trace {
        #[command(flatten)]
        eq: EquationArgs,
        #[command(flatten)]
        seed: OptionalSolution,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Args, Debug)]
struct EquationArgs {
    #[arg(short, allow_hyphen_values = true)]
    a: GaussianInt,
    #[arg(short, allow_hyphen_values = true)]
    b: GaussianInt,
    #[arg(short, allow_hyphen_values = true)]
    c: GaussianInt,
}

#[derive(Args, Debug)]
struct RequiredSolution {
    #[arg(short, allow_hyphen_values = true)]
    x: GaussianInt,
    #[arg(short, allow_hyphen_values = true)]
    y: GaussianInt,
    #[arg(short, allow_hyphen_values = true)]
    z: GaussianInt,
}

#[derive(Args, Debug)]
struct OptionalSolution {
    #[arg(short, allow_hyphen_values = true, requires_all = ["y", "z"])]
    x: Option<GaussianInt>,
    #[arg(short, allow_hyphen_values = true, requires_all = ["x", "z"])]
    y: Option<GaussianInt>,
    #[arg(short, allow_hyphen_values = true, requires_all = ["x", "y"])]
    z: Option<GaussianInt>,
}

#[derive(Args, Debug)]
struct SearchOpts {
    /// Largest component norm the search visits.
    #[arg(long, default_value_t = 200)]
    search_bound: u64,
    /// Worker threads for the search; the result does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            _ => {
                let msg = e.to_string();
                let first = msg
                    .lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ");
                eprintln!("legz: usage: {first}");
                return ExitCode::from(run::USAGE);
            }
        },
    };
    let ceiling = match run::factor_ceiling(std::env::var("LEGZ_FACTOR_CEILING").ok().as_deref()) {
        Ok(c) => c,
        Err(f) => return f.emit(),
    };
    let outcome = match cli.command {
        Command::Solve { eq, opts } => run::solve(&eq.into(), &opts.into(), ceiling),
        Command::Check { eq, sol, json } => {
            run::check(&eq.into(), [sol.x, sol.y, sol.z], json, ceiling)
        }
        Command::Normalize { eq, json } => run::normalize(&eq.into(), json, ceiling),
        Command::Samet { eq, json } => run::samet(&eq.into(), json, ceiling),
        Command::Search { eq, opts } => run::search(&eq.into(), &opts.into(), ceiling),
        Command::Trace { eq, seed, opts } => {
            let seed = match (seed.x, seed.y, seed.z) {
                (Some(x), Some(y), Some(z)) => Some([x, y, z]),
                _ => None,
            };
            run::trace(&eq.into(), seed, &opts.into(), ceiling)
        }
    };
    outcome.emit()
}

impl From<EquationArgs> for run::Coefficients {
    fn from(e: EquationArgs) -> Self {
        run::Coefficients([e.a, e.b, e.c])
    }
}

impl From<SearchOpts> for run::Options {
    fn from(o: SearchOpts) -> Self {
        run::Options {
            bound: o.search_bound,
            jobs: o.jobs as usize,
            json: o.json,
        }
    }
}
