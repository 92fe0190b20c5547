//! All-sources eccentricities by bit-parallel multi-source BFS.
//!
//! Sources are processed in batches of [`LANES`]` × 64`; every vertex keeps
//! one bit per source of the batch for "seen" and "in the current
//! frontier". One sweep over the adjacency table advances all sources of the
//! batch by one level. Batches are independent, so the result does not
//! depend on how they are scheduled.

use rayon::prelude::*;
use serde::Serialize;

use crate::cosets::{coset_count, CosetIndex};
use crate::error::{Error, Result};

use super::bfs::{bfs, check_bfs_size};
use super::kernel::Expander;
use super::{GeneratorKind, GeneratorSet, SearchConfig, MAX_DIAMETER_N};

const LANES: usize = 4;
const BATCH: usize = LANES * 64;

type Mask = [u64; LANES];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub n: usize,
    pub generators: GeneratorKind,
    pub diameter: u64,
    /// Smallest source index of maximal eccentricity.
    pub source: CosetIndex,
    /// Smallest index at maximal distance from `source`.
    pub target: CosetIndex,
}

fn check_diameter_size(n: usize, degree: usize) -> Result<()> {
    check_bfs_size(n)?;
    if n > MAX_DIAMETER_N {
        let v = coset_count(n) as f64;
        return Err(Error::Resource(format!(
            "n = {n} exceeds the diameter cap {MAX_DIAMETER_N}: all-sources search \
             would visit about {:.2e} edges",
            v * v * degree as f64
        )));
    }
    Ok(())
}

/// Estimated peak footprint of the all-sources search.
pub fn diameter_memory_estimate(gens: &GeneratorSet, workers: usize) -> u64 {
    memory_estimate(gens.n, Expander::new(gens).degree(), workers)
}

fn memory_estimate(n: usize, degree: usize, workers: usize) -> u64 {
    let v = coset_count(n);
    let table = v * degree as u64 * 4;
    let per_worker = v * 3 * std::mem::size_of::<Mask>() as u64;
    table + per_worker * workers as u64 + v
}

/// Eccentricity of every vertex, in [`CosetIndex`] order.
pub fn eccentricities(gens: &GeneratorSet, cfg: &SearchConfig) -> Result<Vec<u8>> {
    let n = gens.n;
    let expander = Expander::new(gens);
    let degree = expander.degree();
    check_diameter_size(n, degree)?;
    cfg.check_memory(
        memory_estimate(n, degree, cfg.workers),
        &format!("diameter search for n = {n}"),
    )?;
    let pool = cfg.pool()?;
    let v = coset_count(n) as usize;

    let adjacency: Vec<u32> = pool.install(|| {
        (0..v)
            .into_par_iter()
            .flat_map_iter(|index| {
                let mut row = Vec::with_capacity(degree);
                expander.for_each_neighbor(index as u64, |nb| row.push(nb as u32));
                row
            })
            .collect()
    });

    let batches: Vec<Vec<u8>> = pool.install(|| {
        (0..v.div_ceil(BATCH))
            .into_par_iter()
            .map(|b| {
                let start = b * BATCH;
                let len = BATCH.min(v - start);
                batch_eccentricities(&adjacency, degree, v, start, len)
            })
            .collect()
    });
    Ok(batches.concat())
}

fn batch_eccentricities(
    adjacency: &[u32],
    degree: usize,
    v: usize,
    start: usize,
    len: usize,
) -> Vec<u8> {
    let mut seen: Vec<Mask> = vec![[0; LANES]; v];
    let mut frontier: Vec<Mask> = vec![[0; LANES]; v];
    let mut next: Vec<Mask> = vec![[0; LANES]; v];
    for s in 0..len {
        seen[start + s][s / 64] |= 1 << (s % 64);
        frontier[start + s][s / 64] |= 1 << (s % 64);
    }
    let mut ecc = vec![0u8; len];
    let mut level = 0u8;
    loop {
        level += 1;
        let mut any: Mask = [0; LANES];
        for (vertex, row) in adjacency.chunks_exact(degree.max(1)).enumerate().take(v) {
            let mut acc: Mask = [0; LANES];
            for &u in row {
                let f = &frontier[u as usize];
                for lane in 0..LANES {
                    acc[lane] |= f[lane];
                }
            }
            let s = &mut seen[vertex];
            let out = &mut next[vertex];
            for lane in 0..LANES {
                let fresh = acc[lane] & !s[lane];
                out[lane] = fresh;
                s[lane] |= fresh;
                any[lane] |= fresh;
            }
        }
        if any.iter().all(|&w| w == 0) {
            break;
        }
        for (lane, &word) in any.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let bit = bits.trailing_zeros() as usize;
                ecc[lane * 64 + bit] = level;
                bits &= bits - 1;
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    ecc
}

/// Exact diameter of the Schreier graph, with a pair of vertices realizing
/// it.
pub fn diameter_exact(gens: &GeneratorSet, cfg: &SearchConfig) -> Result<DiameterReport> {
    let ecc = eccentricities(gens, cfg)?;
    let diameter = *ecc.iter().max().unwrap_or(&0);
    let source = CosetIndex(ecc.iter().position(|&e| e == diameter).unwrap_or(0) as u64);
    let field = bfs(gens, source, cfg)?;
    if !field.is_complete() {
        return Err(Error::domain(format!(
            "the Schreier graph for n = {} is disconnected",
            gens.n
        )));
    }
    debug_assert_eq!(field.eccentricity(), diameter);
    Ok(DiameterReport {
        n: gens.n,
        generators: gens.kind,
        diameter: diameter as u64,
        source,
        target: field.farthest(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::with_workers(2)
    }

    // one full BFS per source
    fn eccentricities_by_bfs(gens: &GeneratorSet) -> Vec<u8> {
        (0..coset_count(gens.n))
            .map(|k| bfs(gens, CosetIndex(k), &cfg()).unwrap().eccentricity())
            .collect()
    }

    #[test]
    fn matches_per_source_bfs() {
        for n in 1..=7 {
            for gens in [GeneratorSet::adjacent(n), GeneratorSet::cyclic(n)] {
                assert_eq!(
                    eccentricities(&gens, &cfg()).unwrap(),
                    eccentricities_by_bfs(&gens)
                );
            }
        }
    }

    #[test]
    fn small_diameters() {
        let d = |n| {
            diameter_exact(&GeneratorSet::adjacent(n), &cfg())
                .unwrap()
                .diameter
        };
        assert_eq!(d(1), 0);
        assert_eq!(d(2), 0);
        assert_eq!(d(3), 1);
        assert_eq!(d(4), 2);
        assert_eq!(d(5), 5);
    }

    #[test]
    fn witness_pair_realizes_diameter() {
        let gens = GeneratorSet::adjacent(6);
        let report = diameter_exact(&gens, &cfg()).unwrap();
        let field = bfs(&gens, report.source, &cfg()).unwrap();
        assert_eq!(field.get(report.target), Some(report.diameter as u8));
    }

    #[test]
    fn cap() {
        let err = eccentricities(&GeneratorSet::adjacent(11), &cfg()).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        let bytes = diameter_memory_estimate(&GeneratorSet::adjacent(9), 1);
        assert!(bytes > 40_320 * 8 * 4);
    }
}
