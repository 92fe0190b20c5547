use serde::Serialize;

use crate::cosets::{coset_count, CosetIndex, CosetRep, Cycle};
use crate::error::{Error, Result};

use super::{neighbors, GeneratorKind, GeneratorSet};

/// Largest `n` whose graph is exported vertex by vertex (720 vertices).
pub const MAX_EXPORT_N: usize = 7;

/// The graph `Γₙ` written out explicitly. Vertex `i` is the n-cycle of
/// coset index `i`; each undirected edge is listed once as `(u, v)` with
/// `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitGraph {
    pub n: usize,
    pub generators: GeneratorKind,
    pub vertices: Vec<Cycle>,
    pub edges: Vec<(usize, usize)>,
}

impl Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn explicit_graph(gens: &GeneratorSet) -> Result<ExplicitGraph> {
    let n = gens.n;
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > MAX_EXPORT_N {
        return Err(Error::Resource(format!(
            "explicit export is limited to n <= {MAX_EXPORT_N} ({}! vertices requested)",
            n - 1
        )));
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for k in 0..coset_count(n) {
        let rep = CosetRep::unrank(CosetIndex(k), n)?;
        for nb in neighbors(&rep, gens)? {
            let j = nb.rank().0;
            if k < j {
                edges.push((k as usize, j as usize));
            }
        }
        vertices.push(Cycle::from_coset(rep));
    }
    edges.sort_unstable();
    Ok(ExplicitGraph {
        n,
        generators: gens.kind,
        vertices,
        edges,
    })
}
