//! Exact computations for sorting cyclic permutations by conjugation with
//! adjacent transpositions.
//!
//! Two n-cycles are adjacent when one is obtained from the other by
//! conjugating with some `sᵢ = (i, i+1)`; equivalently, when one step swaps
//! the values `i` and `i + 1` on a circular labeling. The crate computes the
//! sorting time (the eccentricity of `(1,2,…,n)` in that graph) and the
//! diameter exactly by breadth-first search over cosets of `ℤₙ`, and checks
//! the surrounding inversion-statistic identities and closed-form bounds.
//!
//! ```
//! use cyclic_sort::{cosets, extremal, schreier, Permutation};
//!
//! let pi0 = extremal::build_pi0(12).unwrap();
//! assert_eq!(pi0.to_string(), "6,5,4,3,12,2,11,1,10,9,8,7");
//! assert_eq!(cosets::minv(&pi0), 33);
//!
//! let cfg = schreier::SearchConfig::with_workers(1);
//! assert_eq!(schreier::sort_exact(5, &cfg).unwrap(), 4);
//!
//! let w0: Permutation = "4,3,2,1".parse().unwrap();
//! assert_eq!(w0.cwinv(), 4);
//! ```

pub mod combinatorics;
pub mod cosets;
mod error;
pub mod extremal;
pub mod permutation;
pub mod reference;
pub mod schreier;
pub mod verify;

pub use num_rational::Ratio;

pub use cosets::{CosetIndex, CosetRep, Cycle};
pub use error::{Error, Result};
pub use extremal::BoundsReport;
pub use permutation::{Permutation, StatTriple, MAX_N};
pub use schreier::{DistanceField, GeneratorKind, GeneratorSet, MinvHistogram, SearchConfig};
