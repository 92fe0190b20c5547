use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_sort::verify::Suite;
use cyclic_sort::GeneratorKind;

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-sort",
    version,
    about = "Exact sorting times and Schreier graph diameters for n-cycles under adjacent-transposition conjugation"
)]
pub struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inversion statistics of a permutation, given as a word (`4,3,2,1`)
    /// or in cycle notation (`(1,4,3,2)`).
    Stats { permutation: String },

    /// Distance between two n-cycles in the conjugation graph, with a
    /// minimal witness.
    Dist { first: String, second: String },

    /// The extremal permutation pi0 and its offset sequence.
    Pi0 {
        #[arg(long)]
        n: usize,
    },

    /// Closed-form bounds for one n or an inclusive range.
    Bounds {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        n: Option<usize>,
        /// Inclusive range such as `2..20`.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<usize>>,
    },

    /// Exact breadth-first search over the coset graph.
    Bfs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Sort)]
        mode: Mode,
        #[arg(long, value_parser = parse_generators, default_value = "adjacent")]
        generators: GeneratorKind,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the distance field as a binary dump.
        #[arg(long, value_name = "PATH")]
        dump: Option<PathBuf>,
    },

    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Inclusive n range; each suite has its own default.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per n for sampled sizes.
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Write the whole graph for small n as DOT, CSV, JSON or an adjacency
    /// listing.
    ExportGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_generators, default_value = "adjacent")]
        generators: GeneratorKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Eccentricity of the canonical cycle.
    Sort,
    /// Maximum eccentricity over all vertices.
    Diameter,
    /// Distance histogram from the canonical cycle.
    Distribution,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Refuse searches whose estimated footprint exceeds this size
    /// (e.g. `512MiB`, `4GB`, or plain bytes).
    #[arg(long, value_parser = parse_bytes)]
    pub memory_cap: Option<u64>,
    /// Lift the default size caps up to the library limits.
    #[arg(long)]
    pub allow_large: bool,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_generators(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: cyclic_sort::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: cyclic_sort::Error| e.to_string())
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    s.parse::<bytesize::ByteSize>().map(|b| b.as_u64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..20").unwrap(), 2..=20);
        assert_eq!(parse_range("2..=20").unwrap(), 2..=20);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn byte_sizes() {
        assert_eq!(parse_bytes("1024").unwrap(), 1024);
        assert_eq!(parse_bytes("1 KiB").unwrap(), 1024);
        assert_eq!(parse_bytes("2MB").unwrap(), 2_000_000);
        assert!(parse_bytes("lots").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
