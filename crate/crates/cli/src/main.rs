//! `pelem`: command-line front end for the p-elementary rank bounds.
//!
//! Exit status: 0 success, 1 usage error, 2 domain error, 3 verification
//! failure.

mod commands;
mod table;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "pelem",
    version,
    about = "Exact verification of p-elementary rank bounds for tori and the plane Cremona group"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the n-th cyclotomic polynomial, optionally reduced mod p with its roots
    Cyclotomic {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Sweep the order-t root behavior of Phi_n mod p
    Lemma {
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Rank bound for p-elementary subgroups of Cr_2(k) given p and t
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
    },
    /// Fixed-point rank and multiplicity chain for a torus presentation file
    TorusRank {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Finite-field oracle: one torus from --file, or a seeded random sweep
    Oracle {
        #[arg(long, requires = "p")]
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random tori in the sweep
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Primes for the sweep
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Field sizes for the sweep
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
    },
    /// Check that tori attain floor(d / phi(t))
    Sharpness {
        /// Dimension, or the largest dimension for the full table
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, requires = "d")]
        t: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, requires = "p", conflicts_with_all = ["d", "t"])]
        file: Option<PathBuf>,
    },
    /// Audit the Weyl group of PGL_4 on its cocharacter lattice
    WeylAudit {
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => commands::EXIT_USAGE,
            });
        }
    };
    let (stdout, code) = commands::run(&cli);
    print!("{stdout}");
    ExitCode::from(code)
}
