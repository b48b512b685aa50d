mod checks;
mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact local normal zeta functions of Heisenberg groups H(R).
#[derive(Debug, Parser)]
#[command(name = "hzeta", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print W(X, Y) for the shape (e, f).
    Formula {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Variant::Main)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Print the normal subgroup counts of index p^0, ..., p^K.
    Series {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Variant::Main)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run a suite of identity checks and print a pass/fail table.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Prime for the ring-level lemmas.
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Compare brute-force ideal counts with the formula and test the
    /// x_lambda index on random lattices.
    Oracle {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        terms: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = hzeta::oracle::DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, Args)]
struct ShapeArgs {
    /// Ramification index.
    #[arg(long)]
    e: usize,
    /// Inertia degree.
    #[arg(long)]
    f: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Main,
    Snf,
    Inert,
    Totram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Funeq,
    Consistency,
    Coxeter,
    Lemmas,
}

/// Exit statuses.
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(run) => {
            print!("{}", run.text);
            if run.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.status)
        }
    }
}
