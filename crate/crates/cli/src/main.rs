//! Command-line front end for the `lattice-mobius` library.

mod commands;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_mobius::Family;

#[derive(Parser, Debug)]
#[command(name = "lattice-mobius", version, about = "Möbius numbers and NBB bases of pattern-avoiding weak-order lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Möbius number by recurrence, by NBB bases, by the sparse-set sum and as F_{n-2}(-1).
    Mobius {
        /// Family to build; all three when omitted.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Degree, or an inclusive range such as `3..9`.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow degrees above the default safety bound.
        #[arg(long)]
        force: bool,
    },
    /// NBB bases of 0̂ (families A, C, coatom form) or 1̂ (family B, atom form).
    NbbBases {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_degree)]
        n: usize,
        /// Compare with the sparse-set prediction.
        #[arg(long)]
        predict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Run every structural and enumerative check up to a degree.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random atom orders per family lattice.
        #[arg(long, default_value_t = 20)]
        random_orders: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Export a Hasse diagram.
    Hasse {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_degree)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Print F_n(q) and H_n(q).
    Fib {
        #[arg(long, value_parser = parse_degree)]
        n: usize,
        /// Evaluate at this integer.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_degree(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a degree"))?;
    if n == 0 {
        return Err("degree must be at least 1".to_string());
    }
    Ok(n)
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo = parse_degree(lo)?;
            let hi = parse_degree(hi.trim_start_matches('='))?;
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(lo..=hi)
        }
        None => {
            let n = parse_degree(s)?;
            Ok(n..=n)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mobius {
            family,
            n,
            format,
            force,
        } => commands::mobius(family, n, format, force),
        Command::NbbBases {
            family,
            n,
            predict,
            format,
            force,
        } => commands::nbb_bases(family, n, predict, format, force),
        Command::Verify {
            max_n,
            seed,
            random_orders,
            format,
            force,
        } => commands::verify(max_n, seed, random_orders, format, force),
        Command::Hasse {
            family,
            n,
            format,
            output,
            force,
        } => commands::hasse(family, n, format, output, force),
        Command::Fib { n, eval, format } => commands::fib(n, eval, format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
