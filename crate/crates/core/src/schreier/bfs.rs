use std::sync::atomic::{AtomicU8, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::checked_factorial;
use crate::cosets::{coset_count, CosetIndex};
use crate::error::{Error, Result};
use crate::extremal::inv_pi0;

use super::kernel::Expander;
use super::{human_bytes, GeneratorKind, GeneratorSet, SearchConfig, MAX_BFS_N};

/// Distance value of a vertex the search has not reached.
pub const UNVISITED: u8 = u8::MAX;

const CHUNK: usize = 1 << 14;

/// Single-source shortest-path distances, one byte per coset, in
/// [`CosetIndex`] order.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub(crate) n: usize,
    pub(crate) kind: GeneratorKind,
    pub(crate) source: CosetIndex,
    pub(crate) dist: Vec<u8>,
}

impl std::fmt::Debug for DistanceField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DistanceField")
            .field("n", &self.n)
            .field("kind", &self.kind)
            .field("source", &self.source)
            .field("vertices", &self.dist.len())
            .finish()
    }
}

impl DistanceField {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn source(&self) -> CosetIndex {
        self.source
    }

    pub fn distances(&self) -> &[u8] {
        &self.dist
    }

    /// Distance to `index`, or `None` if unreached or out of range.
    pub fn get(&self, index: CosetIndex) -> Option<u8> {
        self.dist
            .get(index.0 as usize)
            .copied()
            .filter(|&d| d != UNVISITED)
    }

    pub fn is_complete(&self) -> bool {
        !self.dist.contains(&UNVISITED)
    }

    pub fn eccentricity(&self) -> u8 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNVISITED)
            .max()
            .unwrap_or(0)
    }

    /// Smallest index at maximal distance from the source.
    pub fn farthest(&self) -> CosetIndex {
        let ecc = self.eccentricity();
        let pos = self.dist.iter().position(|&d| d == ecc).unwrap_or(0);
        CosetIndex(pos as u64)
    }

    /// `counts[d]` = number of vertices at distance `d`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.eccentricity() as usize + 1];
        for &d in &self.dist {
            if d != UNVISITED {
                counts[d as usize] += 1;
            }
        }
        counts
    }
}

pub(crate) fn check_bfs_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > MAX_BFS_N {
        let need = match checked_factorial(n - 1) {
            Some(bytes) => human_bytes(bytes),
            None => format!("{}! bytes", n - 1),
        };
        return Err(Error::Resource(format!(
            "n = {n} exceeds the search cap {MAX_BFS_N}: the distance array alone needs {need}"
        )));
    }
    Ok(())
}

/// Estimated peak footprint of one single-source search.
pub fn bfs_memory_estimate(n: usize) -> u64 {
    coset_count(n) + (1 << 20)
}

/// Level-synchronous breadth-first search from `source`.
///
/// Each level scans the distance array for cells equal to the current
/// level and claims unvisited neighbors with a compare-and-swap. A vertex
/// at distance `d` can only be claimed while level `d − 1` is expanded, so
/// every cell ends with its true distance regardless of the schedule.
pub fn bfs(gens: &GeneratorSet, source: CosetIndex, cfg: &SearchConfig) -> Result<DistanceField> {
    let n = gens.n;
    check_bfs_size(n)?;
    let count = coset_count(n);
    if source.0 >= count {
        return Err(Error::domain(format!(
            "source index {} out of range 0..{count}",
            source.0
        )));
    }
    cfg.check_memory(bfs_memory_estimate(n), &format!("BFS for n = {n}"))?;
    let pool = cfg.pool()?;
    let expander = Expander::new(gens);

    let dist: Vec<AtomicU8> = pool.install(|| {
        (0..count as usize)
            .into_par_iter()
            .map(|_| AtomicU8::new(UNVISITED))
            .collect()
    });
    dist[source.0 as usize].store(0, Ordering::Relaxed);

    let mut level = 0u8;
    loop {
        let claimed: u64 = pool.install(|| {
            dist.par_chunks(CHUNK)
                .enumerate()
                .map(|(c, chunk)| {
                    let base = (c * CHUNK) as u64;
                    let mut claimed = 0u64;
                    for (offset, cell) in chunk.iter().enumerate() {
                        if cell.load(Ordering::Relaxed) != level {
                            continue;
                        }
                        expander.for_each_neighbor(base + offset as u64, |nb| {
                            let target = &dist[nb as usize];
                            if target.load(Ordering::Relaxed) == UNVISITED
                                && target
                                    .compare_exchange(
                                        UNVISITED,
                                        level + 1,
                                        Ordering::Relaxed,
                                        Ordering::Relaxed,
                                    )
                                    .is_ok()
                            {
                                claimed += 1;
                            }
                        });
                    }
                    claimed
                })
                .sum()
        });
        if claimed == 0 {
            break;
        }
        level += 1;
        if level == UNVISITED - 1 {
            return Err(Error::Resource(
                "distance exceeds the 8-bit cell width".to_string(),
            ));
        }
    }

    Ok(DistanceField {
        n,
        kind: gens.kind,
        source,
        dist: dist.into_iter().map(AtomicU8::into_inner).collect(),
    })
}

fn require_connected(field: &DistanceField) -> Result<()> {
    if !field.is_complete() {
        return Err(Error::domain(format!(
            "the Schreier graph for n = {} with {} generators is disconnected",
            field.n, field.kind
        )));
    }
    Ok(())
}

/// Sorting time: the eccentricity of the canonical coset under adjacent
/// transpositions.
pub fn sort_exact(n: usize, cfg: &SearchConfig) -> Result<u64> {
    let field = bfs(&GeneratorSet::adjacent(n), CosetIndex(0), cfg)?;
    require_connected(&field)?;
    Ok(field.eccentricity() as u64)
}

/// Coefficients of the `minv` generating function on `Sₙ/ℤₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinvHistogram {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl MinvHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.counts)
    }
}

/// Distance histogram from the canonical coset, which counts cosets by
/// their `minv` value.
pub fn minv_distribution(n: usize, cfg: &SearchConfig) -> Result<MinvHistogram> {
    let field = bfs(&GeneratorSet::adjacent(n), CosetIndex(0), cfg)?;
    require_connected(&field)?;
    Ok(MinvHistogram {
        n,
        counts: field.histogram(),
    })
}

/// Whether the sequence weakly increases to a peak and then weakly
/// decreases.
pub fn is_unimodal(counts: &[u64]) -> bool {
    let peak = counts
        .windows(2)
        .position(|w| w[1] < w[0])
        .unwrap_or(counts.len());
    counts[peak.min(counts.len())..]
        .windows(2)
        .all(|w| w[1] <= w[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub sort_exact: u64,
    pub inv_pi0: u64,
    pub equal: bool,
}

/// Compares the searched sorting time with `inv(π₀)`.
pub fn verify_conjecture_sort_eq_pi0(n: usize, cfg: &SearchConfig) -> Result<ConjectureReport> {
    let sort = sort_exact(n, cfg)?;
    let inv = inv_pi0(n)?;
    Ok(ConjectureReport {
        n,
        sort_exact: sort,
        inv_pi0: inv,
        equal: sort == inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{minv, CosetRep};

    fn cfg() -> SearchConfig {
        SearchConfig::with_workers(2)
    }

    #[test]
    fn small_eccentricities() {
        let f3 = bfs(&GeneratorSet::adjacent(3), CosetIndex(0), &cfg()).unwrap();
        assert_eq!(f3.distances(), &[0, 1]);
        assert_eq!(f3.eccentricity(), 1);
        let f4 = bfs(&GeneratorSet::adjacent(4), CosetIndex(0), &cfg()).unwrap();
        assert_eq!(f4.eccentricity(), 2);
        let f5 = bfs(&GeneratorSet::adjacent(5), CosetIndex(0), &cfg()).unwrap();
        assert_eq!(f5.eccentricity(), 4);
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(sort_exact(1, &cfg()).unwrap(), 0);
        assert_eq!(sort_exact(2, &cfg()).unwrap(), 0);
        assert_eq!(minv_distribution(2, &cfg()).unwrap().counts, vec![1]);
        assert!(sort_exact(0, &cfg()).is_err());
    }

    #[test]
    fn caps_and_ranges() {
        assert!(matches!(
            bfs(&GeneratorSet::adjacent(40), CosetIndex(0), &cfg()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            bfs(&GeneratorSet::adjacent(15), CosetIndex(0), &cfg()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            bfs(&GeneratorSet::adjacent(4), CosetIndex(6), &cfg()),
            Err(Error::Domain(_))
        ));
        let tight = SearchConfig {
            workers: 1,
            memory_cap: Some(1024),
        };
        assert!(matches!(sort_exact(9, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn sort_examples() {
        assert_eq!(sort_exact(4, &cfg()).unwrap(), 2);
        assert_eq!(sort_exact(5, &cfg()).unwrap(), 4);
    }

    #[test]
    fn distributions() {
        assert_eq!(minv_distribution(3, &cfg()).unwrap().counts, vec![1, 1]);
        // (1234) has three neighbors: (1243), (1324), (1342)
        assert_eq!(minv_distribution(4, &cfg()).unwrap().counts, vec![1, 3, 2]);
        for n in 1..=9 {
            let h = minv_distribution(n, &cfg()).unwrap();
            assert_eq!(h.total(), coset_count(n));
            assert_eq!(h.counts[0], 1);
        }
    }

    #[test]
    fn distribution_matches_direct_minv() {
        for n in 1..=8 {
            let h = minv_distribution(n, &cfg()).unwrap();
            let mut direct = vec![0u64; h.counts.len()];
            for k in 0..coset_count(n) {
                let rep = CosetRep::unrank(CosetIndex(k), n).unwrap();
                direct[minv(rep.permutation()) as usize] += 1;
            }
            assert_eq!(h.counts, direct, "n = {n}");
        }
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 2, 3]));
        assert!(!is_unimodal(&[1, 3, 2, 3]));
        assert!(is_unimodal(&[3, 2, 1]));
        assert!(is_unimodal(&[1, 2, 2, 1]));
        assert!(is_unimodal(&[5]));
        assert!(is_unimodal(&[]));
        assert!(!is_unimodal(&[2, 1, 2]));
    }

    #[test]
    fn conjecture_small() {
        let r5 = verify_conjecture_sort_eq_pi0(5, &cfg()).unwrap();
        assert_eq!((r5.sort_exact, r5.inv_pi0, r5.equal), (4, 4, true));
        let r2 = verify_conjecture_sort_eq_pi0(2, &cfg()).unwrap();
        assert_eq!((r2.sort_exact, r2.inv_pi0, r2.equal), (0, 0, true));
    }

    #[test]
    fn worker_count_does_not_change_field() {
        let one = bfs(
            &GeneratorSet::cyclic(8),
            CosetIndex(17),
            &SearchConfig::with_workers(1),
        )
        .unwrap();
        let four = bfs(
            &GeneratorSet::cyclic(8),
            CosetIndex(17),
            &SearchConfig::with_workers(4),
        )
        .unwrap();
        assert_eq!(one, four);
    }
}
