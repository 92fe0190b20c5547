//! Exact search over the Schreier graph of `Sₙ/ℤₙ` under adjacent
//! transpositions, which is isomorphic to the graph `Γₙ` of n-cycles
//! adjacent under conjugation by some `sᵢ`.
//!
//! Vertices are [`CosetIndex`] values; the graph is never materialized for
//! the single-source searches. Neighbors are generated on the fly by the
//! kernel in [`kernel`].

mod bfs;
mod diameter;
mod dump;
mod export;
mod kernel;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cosets::{canonicalize, CosetRep};
use crate::error::{Error, Result};

pub use bfs::{
    bfs, bfs_memory_estimate, is_unimodal, minv_distribution, sort_exact,
    verify_conjecture_sort_eq_pi0, ConjectureReport, DistanceField, MinvHistogram, UNVISITED,
};
pub use diameter::{diameter_exact, diameter_memory_estimate, eccentricities, DiameterReport};
pub use dump::{DUMP_HEADER_LEN, DUMP_MAGIC, DUMP_VERSION};
pub use export::{explicit_graph, ExplicitGraph, MAX_EXPORT_N};

/// Largest `n` accepted by single-source searches. The distance array
/// alone takes `(n−1)!` bytes, about 6.2 GB at the cap.
pub const MAX_BFS_N: usize = 14;

/// Largest `n` accepted by the all-sources diameter search.
pub const MAX_DIAMETER_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// `s₁, …, sₙ₋₁`.
    Adjacent,
    /// The adjacent transpositions plus `(n, 1)`.
    Cyclic,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Adjacent => "adjacent",
            GeneratorKind::Cyclic => "cyclic",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent" => Ok(GeneratorKind::Adjacent),
            "cyclic" => Ok(GeneratorKind::Cyclic),
            other => Err(Error::parse(other, "expected `adjacent` or `cyclic`")),
        }
    }
}

/// A generating set of transpositions acting on cosets by left
/// multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    pub kind: GeneratorKind,
    pub n: usize,
}

impl GeneratorSet {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        Self { kind, n }
    }

    pub fn adjacent(n: usize) -> Self {
        Self::new(GeneratorKind::Adjacent, n)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(GeneratorKind::Cyclic, n)
    }

    /// The generators as value pairs `(a, b)`, 1-based.
    ///
    /// For `n ≤ 2` the transposition `(n, 1)` already lies in the adjacent
    /// set (or does not exist), so both kinds coincide.
    pub fn transpositions(&self) -> Vec<(u8, u8)> {
        let n = self.n as u8;
        let mut out: Vec<(u8, u8)> = (1..n).map(|i| (i, i + 1)).collect();
        if self.kind == GeneratorKind::Cyclic && n >= 3 {
            out.push((n, 1));
        }
        out
    }

    pub fn len(&self) -> usize {
        let adjacent = self.n.saturating_sub(1);
        match self.kind {
            GeneratorKind::Cyclic if self.n >= 3 => adjacent + 1,
            _ => adjacent,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The distinct cosets `s·r` for `s` in the generating set, excluding `r`
/// itself, in increasing order.
pub fn neighbors(rep: &CosetRep, gens: &GeneratorSet) -> Result<Vec<CosetRep>> {
    if rep.n() != gens.n {
        return Err(Error::domain(format!(
            "generator set for n = {} applied to a coset of size {}",
            gens.n,
            rep.n()
        )));
    }
    let mut out: Vec<CosetRep> = gens
        .transpositions()
        .into_iter()
        .map(|(a, b)| canonicalize(&rep.permutation().swap_values(a, b)))
        .filter(|nb| nb != rep)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Worker count and memory budget for the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
    /// Refuse any search whose estimated footprint exceeds this many bytes.
    pub memory_cap: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memory_cap: None,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers,
            ..Self::default()
        }
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        if self.workers == 0 {
            return Err(Error::domain("worker count must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))
    }

    pub(crate) fn check_memory(&self, needed: u64, what: &str) -> Result<()> {
        match self.memory_cap {
            Some(cap) if needed > cap => Err(Error::Resource(format!(
                "{what} needs about {} but the memory cap is {}",
                human_bytes(needed),
                human_bytes(cap)
            ))),
            _ => Ok(()),
        }
    }
}

pub fn human_bytes(bytes: u64) -> String {
    const UNITS: [&str; 5] = ["B", "KiB", "MiB", "GiB", "TiB"];
    let mut value = bytes as f64;
    let mut unit = 0;
    while value >= 1024.0 && unit + 1 < UNITS.len() {
        value /= 1024.0;
        unit += 1;
    }
    if unit == 0 {
        format!("{bytes} B")
    } else {
        format!("{value:.1} {} ({bytes} bytes)", UNITS[unit])
    }
}
