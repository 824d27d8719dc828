//! `c2copula` command-line tool.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 usage or parse
//! failure.

mod commands;
mod expr;
mod spec;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use c2copula::optimal::TABLE1_EPSILONS;
use c2copula::Quantity;

#[derive(Debug, Parser)]
#[command(
    name = "c2copula",
    version,
    about = "Smooth bivariate copulas from generator functions"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the generator hypotheses and the copula axioms on a grid.
    Validate {
        /// Spec file, or `-` for stdin.
        spec: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Spearman's rho and Kendall's tau.
    Measures {
        spec: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Gauss-Legendre order for the quadrature method.
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// Closed-form rho and tau of the smoothed extremal family as CSV.
    Table1 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = TABLE1_EPSILONS.to_vec())]
        epsilons: Vec<f64>,
    },
    /// C, density or h on a uniform grid as CSV `u,v,value`.
    Contour {
        spec: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value = "C", value_parser = parse_quantity)]
        quantity: Quantity,
    },
    /// Draw pairs by conditional inversion as CSV `u,v`.
    Sample {
        spec: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Joint CDF `C(F(x), G(y))` for uniform or exponential marginals.
    Compose {
        spec: String,
        /// `uniform(lo,hi)` or `exponential(rate)`.
        #[arg(long)]
        marginal_x: String,
        #[arg(long)]
        marginal_y: String,
        /// Evaluation point `x,y`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        at: (f64, f64),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Quadrature,
    Both,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse()
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let x = x.trim().parse::<f64>().map_err(|e| format!("x: {e}"))?;
    let y = y.trim().parse::<f64>().map_err(|e| format!("y: {e}"))?;
    Ok((x, y))
}

/// A failed run. `Rejected` still carries output for stdout.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Rejected(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Rejected(_) => 1,
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Validate { spec, grid } => commands::validate(spec, *grid),
        Command::Measures { spec, method, order } => commands::measures(spec, *method, *order),
        Command::Table1 { epsilons } => commands::table1(epsilons),
        Command::Contour { spec, grid, quantity } => commands::contour(spec, *grid, *quantity),
        Command::Sample { spec, n, seed } => commands::sample(spec, *n, *seed),
        Command::Compose {
            spec,
            marginal_x,
            marginal_y,
            at,
        } => commands::compose(spec, marginal_x, marginal_y, *at),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| emit(&cli.out, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Rejected(text) => {
                    if let Err(CliError::Usage(msg)) = emit(&cli.out, text) {
                        eprintln!("error: {msg}");
                    }
                }
                CliError::Usage(msg) | CliError::Domain(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(err.code())
        }
    }
}
