mod checks;
mod commands;
mod corpus;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

/// Twisted Thue families: forms, invariants, explicit bounds and exhaustive
/// search in boxes.
#[derive(Parser, Debug)]
#[command(name = "thue-twist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the form F_a.
    Form {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certified lambda0, lambda, mu and the mu case.
    Invariants {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Right-hand sides of the |a| and max(|x|,|y|) bounds.
    Bounds {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Regulator; computed from the descriptor's units when omitted.
        #[arg(long)]
        regulator: Option<f64>,
        #[arg(long, default_value = "1")]
        m: String,
        /// Exponent for the x, y bound.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 1.0)]
        kappa_thm1: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa_thm2: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Enumerate all solutions in a box.
    Solve {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Single exponent; overrides --a-range.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        /// Inclusive range LO:HI.
        #[arg(long, default_value = "0:3", allow_hyphen_values = true)]
        a_range: String,
        #[arg(long, default_value_t = 30)]
        xy_max: i64,
        #[arg(long, default_value = "1")]
        m: String,
        /// Skip exponents for which alpha*upsilon^a does not generate the field.
        #[arg(long)]
        require_degree: bool,
        /// Also fit the smallest kappa of the second bound using this regulator.
        #[arg(long)]
        regulator: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check one claimed solution.
    Verify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value = "1")]
        m: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Run the inequality suites over the bundled corpus.
    Checks {
        /// Extra family files to include.
        #[arg(long)]
        family: Vec<PathBuf>,
        #[command(flatten)]
        prec: PrecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Twists by a root of unity: F_a equals the base form for gcd(a, n) = 1.
    Cyclotomic {
        n: usize,
        #[command(flatten)]
        prec: PrecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// prod (X^h - eps_i^a Y^h) for a unit eps.
    Corollary {
        /// Minimal polynomial of eps, constant term first.
        #[arg(long, default_value = "-1,-1,1", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        a: i64,
        #[command(flatten)]
        prec: PrecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// Family descriptor JSON, or the name of a bundled family.
    #[arg(long)]
    family: String,
    /// Accept a root of unity as the twisting unit.
    #[arg(long)]
    unchecked_root_of_unity: bool,
    #[command(flatten)]
    prec: PrecArgs,
}

#[derive(Args, Debug, Clone, Copy)]
struct PrecArgs {
    #[arg(long, default_value_t = 128)]
    bits: u32,
    #[arg(long, default_value_t = 4096)]
    max_bits: u32,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    ExitCode::from(commands::run(cli.command))
}
