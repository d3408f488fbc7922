//! `sheffer`: compute Sheffer sequences, their 2-iterates, Riordan arrays and
//! determinantal forms with exact rational arithmetic.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sheffer_core::rational::parse_rational;
use sheffer_core::Rational;

#[derive(Parser, Debug)]
#[command(
    name = "sheffer",
    version,
    about = "Exact Sheffer and 2-iterated Sheffer polynomial sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog families.
    Families {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Polynomials s_0..s_n of one pair, in the family's own normalization.
    Compute(SingleArgs),
    /// Polynomials of the 2-iterated sequence.
    Iterate(IterArgs),
    /// Rows 0..n of the generalized Riordan array of a pair.
    Riordan(SingleArgs),
    /// Polynomials from the determinantal definition.
    Det {
        #[command(flatten)]
        iter: IterArgs,
        /// Use the iterated determinant even without a second pair.
        #[arg(long)]
        iterated: bool,
    },
    /// Run verification checks on a pair and its iterate.
    Verify {
        #[command(flatten)]
        iter: IterArgs,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "biorthogonality,monomiality,diffeq,group,routes"
        )]
        checks: Vec<Check>,
    },
    /// Sample s_n(x) on a grid and emit decimal plot data.
    Plotdata {
        #[command(flatten)]
        iter: IterArgs,
        #[arg(long, value_enum, default_value_t = SequenceKind::Iterated)]
        sequence: SequenceKind,
        #[arg(long, value_parser = rational_arg, default_value = "-1", allow_hyphen_values = true)]
        xmin: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1", allow_hyphen_values = true)]
        xmax: Rational,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Catalog family (see `sheffer families`).
    #[arg(long, conflicts_with_all = ["g", "f"], required_unless_present_all = ["g", "f"])]
    pub family: Option<String>,
    /// g(t) as an expression.
    #[arg(long, requires = "f", allow_hyphen_values = true)]
    pub g: Option<String>,
    /// f(t) as an expression.
    #[arg(long, requires = "g", allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Parameter binding `key=value`, value a rational such as `3` or `1/2`.
    #[arg(long = "param", value_parser = binding_arg)]
    pub params: Vec<(String, Rational)>,
    /// Reference sequence; defaults to the family's own, or exponential.
    #[arg(long, value_enum)]
    pub cn: Option<Reference>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SingleArgs {
    #[command(flatten)]
    pub pair: PairArgs,
}

#[derive(Args, Debug, Clone)]
pub struct IterArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Second family; the first pair is iterated with itself when absent.
    #[arg(long, conflicts_with_all = ["g2", "f2"])]
    pub family2: Option<String>,
    #[arg(long, requires = "f2", allow_hyphen_values = true)]
    pub g2: Option<String>,
    #[arg(long, requires = "g2", allow_hyphen_values = true)]
    pub f2: Option<String>,
    /// Parameter bindings for the second family.
    #[arg(long = "param2", value_parser = binding_arg)]
    pub params2: Vec<(String, Rational)>,
    #[arg(long, value_enum, default_value_t = ModeArg::Gf)]
    pub mode: ModeArg,
    /// Composition order of the two pairs.
    #[arg(long, value_enum, default_value_t = OrderArg::Gf21)]
    pub order: OrderArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    Classical,
    Exponential,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Gf,
    UmbralRiordan,
    UmbralLiteral,
    Det,
    Conjugate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderArg {
    Gf21,
    Theorem22,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Biorthogonality,
    Monomiality,
    Diffeq,
    Group,
    Routes,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Single,
    Iterated,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn binding_arg(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}` is not of the form key=value"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("`{s}` has an empty key"));
    }
    Ok((k.to_string(), rational_arg(v.trim())?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = outcome.emit() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.checks_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
