use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvecount::fit::DEFAULT_MAX_R;
use curvecount::germ::DEFAULT_CEILING;
use curvecount::series::DEFAULT_TRUNCATION;
use curvecount::severi::DEFAULT_DEGREE_CEILING;

/// Singularity invariants, Severi degrees and universal node polynomials.
#[derive(Debug, Parser)]
#[command(name = "curvecount", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Print versioned JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Severi memo cache, loaded if present and saved after the run.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Seed for the random pencil oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest plane degree (or bidegree side) the Severi engine accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CEILING)]
    pub ceiling: u32,
    /// Largest jet order searched by germ computations.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    pub jet_ceiling: u32,
    /// Highest node count fitted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_R)]
    pub max_r: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local invariants of germs and the singularity catalog.
    #[command(subcommand)]
    Germ(GermCommand),
    /// Severi degrees on P2 and P1 x P1.
    #[command(subcommand)]
    Severi(SeveriCommand),
    /// Universal node polynomials fitted from Severi degrees.
    #[command(subcommand)]
    Fit(FitCommand),
    /// Generating series assembled from a table of a-values.
    #[command(subcommand)]
    Series(SeriesCommand),
}

#[derive(Debug, Subcommand)]
pub enum GermCommand {
    /// Milnor and Tjurina numbers, determinacy window, scheme lengths.
    Analyze {
        /// Polynomial in x and y, e.g. "y^2 - x^3".
        expr: String,
        /// Jet order for the scheme length and orbit computations (default: top of the window).
        #[arg(short, long)]
        k: Option<u32>,
    },
    /// The built-in catalog, validated on load.
    Catalog {
        /// Show only these labels.
        labels: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Surface {
    P2,
    P1xp1,
}

#[derive(Debug, Subcommand)]
pub enum SeveriCommand {
    /// Number of nodal plane curves of degree d through the expected number of points.
    P2 {
        #[arg(short)]
        d: u32,
        #[arg(short, long, default_value_t = 1)]
        nodes: u32,
    },
    /// Number of nodal curves of bidegree (a, b) on P1 x P1.
    P1xp1 {
        #[arg(short)]
        a: u32,
        #[arg(short)]
        b: u32,
        #[arg(short, long, default_value_t = 1)]
        nodes: u32,
    },
    /// Compares the recursion with the independent oracles that cover the input.
    Oracle {
        #[arg(long, value_enum, default_value = "p2")]
        surface: Surface,
        /// Plane degree.
        #[arg(short)]
        d: Option<u32>,
        #[arg(short)]
        a: Option<u32>,
        #[arg(short)]
        b: Option<u32>,
        #[arg(short, long, default_value_t = 1)]
        nodes: u32,
    },
}

#[derive(Debug, Args)]
pub struct FitData {
    /// Plane degrees used as data, as LOW-HIGH.
    #[arg(long, value_parser = parse_range, default_value = "3-12")]
    pub plane: RangeInclusive<u32>,
    /// Bidegrees (a, b) with a and b in LOW-HIGH.
    #[arg(long, value_parser = parse_range, default_value = "1-6")]
    pub quadric: RangeInclusive<u32>,
    /// Use every row instead of only d >= r + 2 and a, b >= r + 1.
    #[arg(long)]
    pub all_rows: bool,
}

#[derive(Debug, Subcommand)]
pub enum FitCommand {
    /// Fits the log coefficients a_r and node polynomials T_r up to --max-r.
    Nodes {
        #[command(flatten)]
        data: FitData,
    },
    /// Compares T_r with Severi degrees over a range and reports where they start to agree.
    Scan {
        #[arg(short, long)]
        r: u32,
        #[arg(long, value_enum, default_value = "p2")]
        surface: Surface,
        /// Degrees (or bidegree sides) scanned, as LOW-HIGH.
        #[arg(long, value_parser = parse_range, default_value = "1-12")]
        range: RangeInclusive<u32>,
        #[command(flatten)]
        data: FitData,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// Predicted count for a collection at a Chern vector.
    Eval {
        #[arg(long, value_name = "FILE")]
        a_table: PathBuf,
        /// Collection, e.g. "A1,A1" or "A1x2".
        #[arg(long)]
        parts: String,
        /// Chern vector L^2,LK,c1^2,c2, e.g. "16,-12,9,3".
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
    },
    /// The full series exp(sum a/#Aut x) with catalog codimension weights.
    Assemble {
        #[arg(long, value_name = "FILE")]
        a_table: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: u32,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s.split_once('-').unwrap_or((s, s));
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range start in '{s}'"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range end in '{s}'"))?;
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}
