use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Salem numbers as entropies of automorphisms of complex 2-tori.
///
/// Polynomials are written "c_d,...,c_0", highest degree first.
#[derive(Debug, Parser)]
#[command(name = "salem", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format: json everywhere, or csv for enumerate (its default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Width of reported intervals, as "p/q" or a decimal such as 1e-12.
    #[arg(long, global = true, default_value = "1e-12")]
    pub eps: String,
    /// Worker threads for enumerate.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Case, realizing quartets and finiteness for a Salem polynomial.
    Classify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Certify a Salem polynomial or explain why it is not one.
    IsSalem {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Exterior square of a quartic.
    Wedge {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Quartics whose exterior square is the given sextic.
    InvertWedge {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Build an explicit torus model and report its invariants.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Build a model, swap gamma2 for its conjugate and report the result.
    Reorient {
        #[command(subcommand)]
        family: Family,
    },
    /// Classify every Salem polynomial with bounded coefficients.
    Enumerate {
        /// 2, 4 or 6.
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_coeff: i64,
        /// Same as the global --workers.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Companion matrix of a quartic with a chosen pair of H^{1,0} roots.
    Quartic {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Root indices "i,j" in canonical root order.
        #[arg(long, default_value = "0,2")]
        pairing: String,
    },
    /// 2x2 matrix over Z[sqrt(-D)] acting on E x E.
    QuadOrder {
        #[arg(long)]
        d: i64,
        /// Companion shape [[0, -1], [1, b1 + b2 sqrt(-D)]].
        #[arg(long, allow_hyphen_values = true)]
        b1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b2: Option<i64>,
        /// Explicit entries a00,b00,a01,b01,a10,b10,a11,b11 (entry a + b sqrt(-D)).
        #[arg(long, allow_hyphen_values = true)]
        entries: Option<String>,
    },
    /// [[0, -det], [1, r]] acting diagonally on E x E.
    Gl2z {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        det: i64,
    },
    /// Gaussian-type family with D = 4^k, b1 = 1, b2 = 2^(n-k).
    PowerOfTwo {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Integer model with characteristic polynomial t^4 + a t^2 + t + 1.
    DegreeSix {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        b: i64,
        #[arg(long, default_value = "0,2")]
        pairing: String,
    },
}
