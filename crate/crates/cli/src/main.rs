//! `frobtool`: command-line access to the frobsplit pipeline.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 computation error,
//! 4 golden-run mismatch or a violated prediction.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "frobtool", version, about = "Frobenius splitting invariants of hypersurfaces over F_p")]
pub struct Cli {
    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for cached Groebner bases.
    #[arg(long, global = true, env = "FROBTOOL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Soft wall-clock limit, checked inside long computations.
    #[arg(long, global = true, value_parser = positive_seconds)]
    pub budget_seconds: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Ring file with `p`, `vars`, `order`, `f` and optionally `eps`, `c`.
    #[arg(short = 'i', long = "input", conflicts_with = "ring")]
    pub input: Option<PathBuf>,
    /// Inline ring spec, e.g. "p=7 vars=x y z order=grevlex".
    #[arg(long, requires = "f")]
    pub ring: Option<String>,
    /// Inline hypersurface, read in the inline ring.
    #[arg(long, requires = "ring")]
    pub f: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `ε ∈ P^[p]`: splitting numbers must not change.
    #[value(name = "A")]
    A,
    /// `ε ∈ m^[p^e]`: splitting dimension must not drop.
    #[value(name = "B")]
    B,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    TwoComponent,
    FermatCone,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fedder's criterion.
    Fpure {
        #[command(flatten)]
        input: Input,
    },
    /// Reduced Groebner basis of the e-th splitting ideal.
    SplittingIdeal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Splitting numbers, splitting prime and ratio estimates up to --max-e.
    SplittingNumbers {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        max_iter: u32,
    },
    /// The splitting prime, lifted to the polynomial ring.
    SplittingPrime {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        max_iter: u32,
        /// Verify the result inside I_e for e up to this level.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
    },
    /// Splitting dimension dim R/P.
    Dimension {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        max_iter: u32,
    },
    /// a_e / p^(e n) as an exact fraction.
    Ratio {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Partial derivatives of f.
    Jacobian {
        #[command(flatten)]
        input: Input,
    },
    /// Glassbrenner's strong F-regularity test with witness c.
    SfrCheck {
        #[command(flatten)]
        input: Input,
        /// Witness polynomial; falls back to `c` from the input file.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
    },
    /// Compare f with f + ε for an explicit or random ε.
    Perturb {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, ignore_case = true)]
        theorem: Family,
        /// Explicit perturbation; falls back to `eps` from the input file.
        #[arg(long, conflicts_with_all = ["seed", "samples"])]
        eps: Option<String>,
        /// Draw random perturbations from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: Option<u64>,
        /// Bracket level of ε for family B.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
        /// Levels compared for family A.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        max_iter: u32,
    },
    /// Golden reproduction of a worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
    /// Seeded random campaign over both perturbation families.
    Campaign {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        n_vars: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Bracket level of ε for family B.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
        /// Record wall-clock timings (makes the report machine dependent).
        #[arg(long)]
        timings: bool,
    },
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error[{}]: {}", failure.reason, failure.message);
            ExitCode::from(failure.code)
        }
    }
}
