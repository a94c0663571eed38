use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use liaison_core::oracle::Surface;

use crate::DEFAULT_SEED;

/// Exact liaison numerics and a brute-force duality checker.
#[derive(Debug, Parser)]
#[command(name = "liaison", version, about)]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Disable ANSI styling (also implied by NO_COLOR).
    #[arg(long, global = true)]
    pub plain: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Print progress to standard error; repeat for more.
    #[arg(long, short, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Division data, Δh profile and maximal genus for (d, n, s).
    Genus(GenusArgs),
    /// Least degree exceeding the admissibility bound for (n, s).
    Bound(BoundArgs),
    /// Divisor and intersection arithmetic on a rational normal scroll.
    Scroll(ScrollArgs),
    /// Linkage classification reports for (d, n, s).
    Classify(TripleArgs),
    /// Check the Hilbert duality on an explicit linked point scheme.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Debug, Args)]
pub struct GenusArgs {
    #[command(flatten)]
    pub triple: TripleArgs,
    /// Also write the Δh table as CSV with header `r,delta_h`.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Debug, Args)]
pub struct ScrollArgs {
    /// Scroll type a1,...,ar.
    #[arg(long = "type", value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub kind: Vec<i64>,
    /// Ambient dimension; must equal a1 + ... + ar + r - 1.
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[command(subcommand)]
    pub verb: ScrollVerb,
}

#[derive(Debug, Subcommand)]
pub enum ScrollVerb {
    /// Class group generators and relations.
    ClassGroup,
    /// Canonical class and its characteristic.
    Canonical,
    /// Top intersection of classes "α1,β1;α2,β2;..." of αH~ + βR~ on the resolution.
    Intersect {
        #[arg(allow_hyphen_values = true)]
        classes: String,
    },
    /// Integral total transform of D ~ dR.
    TotalTransform {
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Proper transform of D ~ cH through the vertex line with multiplicity a, given as "c,a".
    ProperTransform {
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Multiplicity along the vertex line, given as "c1,a1,c2,a2"; "R" stands for a ruling plane.
    VertexMult {
        #[arg(allow_hyphen_values = true)]
        divisors: String,
    },
    /// Degree and genus of a complete intersection of type "a,b" on a 3-fold.
    Ci {
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_surface)]
    pub surface: Surface,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: i64,
    /// Number of points in Z1, drawn with the seed. Defaults to half of
    /// deg Z = a1 a2 deg W, rounded down.
    #[arg(long, conflicts_with = "z1")]
    pub split: Option<usize>,
    /// File of Z1 points, one "x0 x1 x2 x3" per line.
    #[arg(long, value_name = "PATH")]
    pub z1: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// First twist i to check.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub imin: i64,
    /// Last twist i to check; defaults to min(a1, a2) - 1.
    #[arg(long, allow_negative_numbers = true)]
    pub imax: Option<i64>,
    /// Record wall-clock time in the report (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

fn parse_surface(text: &str) -> Result<Surface, String> {
    text.parse().map_err(|e: liaison_core::Error| e.to_string())
}
