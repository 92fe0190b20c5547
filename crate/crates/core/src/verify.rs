//! Named verification suites over ranges of `n`.
//!
//! Each suite checks one family of identities against the definitional
//! routes in [`crate::reference`], exhaustively for small `n` and on seeded
//! random samples above that. A suite run is fully determined by its name,
//! its `n` range, the seed and the sample count.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{binomial, sum_of_squares};
use crate::cosets::{
    canonicalize, coset_mean_inv, distance, is_heavy_tailed, minv, prefix_inv_bound,
    prefix_sum_witness, Cycle,
};
use crate::error::{Error, Result};
use crate::extremal::{
    build_pi0, build_pi0_greedy, diameter_upper_bound, inv_pi0, lower_bound, minv_w0_formula,
    sort_upper_bound,
};
use crate::permutation::{Permutation, MAX_N};
use crate::reference::{
    all_permutations, double_coset_min_inv, inv_by_pairs, mean_inv_by_rotations, minv_by_rotations,
    random_permutation, winv_by_pairs,
};
use crate::schreier::{
    bfs, verify_conjecture_sort_eq_pi0, DistanceField, GeneratorSet, SearchConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WinvIdentity,
    CwinvInvariance,
    Complements,
    MeanInv,
    HeavyTailed,
    PrefixBound,
    Witness,
    DistanceOracle,
    Pi0Agreement,
    ConjectureSortPi0,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::WinvIdentity,
        Suite::CwinvInvariance,
        Suite::Complements,
        Suite::MeanInv,
        Suite::HeavyTailed,
        Suite::PrefixBound,
        Suite::Witness,
        Suite::DistanceOracle,
        Suite::Pi0Agreement,
        Suite::ConjectureSortPi0,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::WinvIdentity => "winv-identity",
            Suite::CwinvInvariance => "cwinv-invariance",
            Suite::Complements => "complements",
            Suite::MeanInv => "mean-inv",
            Suite::HeavyTailed => "heavy-tailed",
            Suite::PrefixBound => "prefix-bound",
            Suite::Witness => "witness",
            Suite::DistanceOracle => "distance-oracle",
            Suite::Pi0Agreement => "pi0-agreement",
            Suite::ConjectureSortPi0 => "conjecture-sort-pi0",
        }
    }

    /// Sizes up to which the suite enumerates all of `Sₙ` instead of
    /// sampling.
    pub fn exhaustive_limit(&self) -> usize {
        match self {
            Suite::WinvIdentity
            | Suite::CwinvInvariance
            | Suite::Complements
            | Suite::HeavyTailed => 8,
            Suite::MeanInv | Suite::PrefixBound => 7,
            Suite::Witness
            | Suite::DistanceOracle
            | Suite::Pi0Agreement
            | Suite::ConjectureSortPi0 => 0,
        }
    }

    pub fn max_n(&self) -> usize {
        match self {
            Suite::DistanceOracle => 8,
            Suite::ConjectureSortPi0 => crate::schreier::MAX_BFS_N,
            _ => MAX_N,
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(Suite::name).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::parse(
                    s,
                    format!("unknown suite; valid suites: {}", Suite::names().join(", ")),
                )
            })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random cases per `n` where a suite samples.
    pub cases: usize,
    pub search: SearchConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            cases: 10_000,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub cases: u64,
    /// Total number of failures; `failures` keeps the first few.
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const KEPT_FAILURES: usize = 16;

struct Recorder {
    cases: u64,
    failure_count: u64,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check(
        &mut self,
        ok: bool,
        n: usize,
        input: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) {
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(Failure {
                    n,
                    input: input(),
                    detail: detail(),
                });
            }
        }
    }
}

fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Exhaustive enumeration when `n` is small enough, seeded samples otherwise.
fn inputs(suite: Suite, n: usize, opts: &VerifyOptions) -> Box<dyn Iterator<Item = Permutation>> {
    if n <= suite.exhaustive_limit() {
        Box::new(all_permutations(n))
    } else {
        let mut rng = rng_for(opts.seed, n);
        Box::new((0..opts.cases).map(move |_| random_permutation(&mut rng, n)))
    }
}

pub fn run_suite(
    suite: Suite,
    ns: RangeInclusive<usize>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let (lo, hi) = (*ns.start(), *ns.end());
    if lo == 0 || lo > hi {
        return Err(Error::domain(format!("invalid n range {lo}..={hi}")));
    }
    if hi > suite.max_n() {
        return Err(Error::domain(format!(
            "suite {suite} supports n <= {}, got {hi}",
            suite.max_n()
        )));
    }
    let started = Instant::now();
    let mut rec = Recorder {
        cases: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for n in ns {
        match suite {
            Suite::WinvIdentity => winv_identity(n, opts, &mut rec),
            Suite::CwinvInvariance => cwinv_invariance(n, opts, &mut rec),
            Suite::Complements => complements(n, opts, &mut rec),
            Suite::MeanInv => mean_inv(n, opts, &mut rec),
            Suite::HeavyTailed => heavy_tailed(n, opts, &mut rec),
            Suite::PrefixBound => prefix_bound(n, opts, &mut rec),
            Suite::Witness => witness(n, opts, &mut rec),
            Suite::DistanceOracle => distance_oracle(n, opts, &mut rec)?,
            Suite::Pi0Agreement => pi0_agreement(n, &mut rec)?,
            Suite::ConjectureSortPi0 => conjecture(n, opts, &mut rec)?,
        }
    }
    Ok(VerificationReport {
        suite,
        n_min: lo,
        n_max: hi,
        seed: opts.seed,
        cases: rec.cases,
        failure_count: rec.failure_count,
        failures: rec.failures,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

fn winv_identity(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    let squares = sum_of_squares(n as u64) as f64;
    for p in inputs(Suite::WinvIdentity, n, opts) {
        rec.cases += 1;
        let (fast, slow) = (p.winv(), winv_by_pairs(&p));
        rec.check(
            fast == slow,
            n,
            || p.to_string(),
            || format!("closed form {fast} != pair sum {slow}"),
        );
        let (fast, slow) = (p.inv(), inv_by_pairs(&p));
        rec.check(
            fast == slow,
            n,
            || p.to_string(),
            || format!("merge-sort inv {fast} != pair count {slow}"),
        );
        if n >= 2 {
            let cos = p.cos_angle().expect("n >= 2");
            let expected = 1.0 - slow_winv_ratio(&p, squares);
            rec.check(
                (cos - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                n,
                || p.to_string(),
                || format!("cos angle {cos} != 1 - winv/Σi² = {expected}"),
            );
        }
    }
}

fn slow_winv_ratio(p: &Permutation, squares: f64) -> f64 {
    winv_by_pairs(p) as f64 / squares
}

fn cwinv_invariance(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    let top = binomial(n as u64, 3);
    for p in inputs(Suite::CwinvInvariance, n, opts) {
        rec.cases += 1;
        let c = p.cwinv();
        let by_pairs = n as u64 * inv_by_pairs(&p) - 2 * winv_by_pairs(&p);
        rec.check(
            c == by_pairs,
            n,
            || p.to_string(),
            || format!("cwinv {c} != n·inv − 2·winv = {by_pairs}"),
        );
        rec.check(
            c <= top,
            n,
            || p.to_string(),
            || format!("cwinv {c} exceeds C(n,3) = {top}"),
        );
        for j in 1..n {
            let r = p.rotate(j).expect("in range");
            let rc = r.cwinv();
            rec.check(
                rc == c,
                n,
                || format!("{p} shift {j}"),
                || format!("cwinv changed {c} -> {rc}"),
            );
        }
        let delta =
            inv_by_pairs(&p.rotate(1 % n).expect("in range")) as i64 - inv_by_pairs(&p) as i64;
        rec.check(
            delta == p.inv_rotation_delta(),
            n,
            || p.to_string(),
            || format!("rotation delta {} != {delta}", p.inv_rotation_delta()),
        );
    }
    let id = Permutation::identity(n).expect("valid n");
    let w0 = Permutation::longest(n).expect("valid n");
    rec.check(
        id.cwinv() == 0,
        n,
        || id.to_string(),
        || "cwinv(id) != 0".into(),
    );
    rec.check(
        w0.cwinv() == top,
        n,
        || w0.to_string(),
        || "cwinv(w0) != C(n,3)".into(),
    );
}

fn complements(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    let w0 = Permutation::longest(n).expect("valid n");
    let winv_total = binomial(n as u64 + 1, 3);
    let cwinv_total = binomial(n as u64, 3);
    for p in inputs(Suite::Complements, n, opts) {
        rec.cases += 1;
        let q = p.compose(&w0).expect("same size");
        let w = winv_by_pairs(&p) + winv_by_pairs(&q);
        rec.check(
            w == winv_total,
            n,
            || p.to_string(),
            || format!("winv(π) + winv(πw0) = {w} != {winv_total}"),
        );
        let c = p.cwinv() + q.cwinv();
        rec.check(
            c == cwinv_total,
            n,
            || p.to_string(),
            || format!("cwinv(π) + cwinv(πw0) = {c} != {cwinv_total}"),
        );
    }
}

fn mean_inv(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    let n64 = n as u64;
    let formula = Ratio::new((2 * n64 - 1) * (n64 - 1), 6);
    let mut max = Ratio::from_integer(0);
    for p in inputs(Suite::MeanInv, n, opts) {
        rec.cases += 1;
        let fast = coset_mean_inv(&p);
        let slow = mean_inv_by_rotations(&p);
        rec.check(
            fast == slow,
            n,
            || p.to_string(),
            || format!("closed form {fast} != rotation mean {slow}"),
        );
        rec.check(
            fast <= formula,
            n,
            || p.to_string(),
            || format!("mean {fast} exceeds {formula}"),
        );
        max = max.max(slow);
    }
    if n <= Suite::MeanInv.exhaustive_limit() {
        rec.check(
            max == formula,
            n,
            || format!("max over S_{n}"),
            || format!("maximum mean {max} != {formula}"),
        );
    }
}

fn heavy_tailed(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    for p in inputs(Suite::HeavyTailed, n, opts) {
        rec.cases += 1;
        let slow = minv_by_rotations(&p);
        let fast = minv(&p);
        rec.check(
            fast == slow,
            n,
            || p.to_string(),
            || format!("incremental minv {fast} != naive {slow}"),
        );
        let minimal = inv_by_pairs(&p) == slow;
        let heavy = is_heavy_tailed(&p);
        rec.check(
            minimal == heavy,
            n,
            || p.to_string(),
            || format!("inv = minv is {minimal} but heavy-tailed is {heavy}"),
        );
    }
}

fn prefix_bound(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    for p in inputs(Suite::PrefixBound, n, opts) {
        let inv = inv_by_pairs(&p);
        for k in 0..=n {
            rec.cases += 1;
            let bound = prefix_inv_bound(&p, k).expect("k <= n");
            rec.check(
                inv <= bound,
                n,
                || format!("{p} k={k}"),
                || format!("inv {inv} exceeds bound {bound}"),
            );
        }
    }
}

fn witness(n: usize, opts: &VerifyOptions, rec: &mut Recorder) {
    let mut rng = rng_for(opts.seed, n);
    for _ in 0..opts.cases {
        rec.cases += 1;
        let p1 = random_permutation(&mut rng, n);
        let p2 = random_permutation(&mut rng, n);
        let k = rng.gen_range(0..=n);
        let input = || format!("p1={p1} p2={p2} k={k}");
        let tau = prefix_sum_witness(&p1, &p2, k).expect("valid input");
        let sum = tau.prefix_sum(k);
        rec.check(2 * sum <= k as u64 * (n as u64 + 1), n, input, || {
            format!("τ = {tau} has prefix sum {sum} > k(n+1)/2")
        });
        // τ ∈ π₁ℤₙπ₂⁻¹  ⟺  τ·π₂ ∈ π₁ℤₙ
        let back = tau.compose(&p2).expect("same size");
        rec.check(canonicalize(&back) == canonicalize(&p1), n, input, || {
            format!("τ = {tau} is not in the double coset")
        });
    }
}

fn distance_oracle(n: usize, opts: &VerifyOptions, rec: &mut Recorder) -> Result<()> {
    let mut rng = rng_for(opts.seed, n);
    let gens = GeneratorSet::adjacent(n);
    let mut fields: HashMap<u64, DistanceField> = HashMap::new();
    for _ in 0..opts.cases {
        rec.cases += 1;
        let a = random_permutation(&mut rng, n);
        let b = random_permutation(&mut rng, n);
        let (ia, ib) = (canonicalize(&a).rank(), canonicalize(&b).rank());
        for idx in [ia, ib] {
            if let Entry::Vacant(slot) = fields.entry(idx.0) {
                slot.insert(bfs(&gens, idx, &opts.search)?);
            }
        }
        let ab = fields[&ia.0].get(ib);
        let ba = fields[&ib.0].get(ia);
        let formula = double_coset_min_inv(&a, &b);
        let lemma = distance(&Cycle::new(a.word())?, &Cycle::new(b.word())?)?;
        let input = || format!("({a}) ({b})");
        rec.check(ab == ba, n, input, || {
            format!("asymmetric BFS distances {ab:?} vs {ba:?}")
        });
        rec.check(ab == Some(formula as u8), n, input, || {
            format!("BFS distance {ab:?} != double-coset minimum {formula}")
        });
        rec.check(lemma == formula, n, input, || {
            format!("distance() = {lemma} != {formula}")
        });
    }
    Ok(())
}

fn pi0_agreement(n: usize, rec: &mut Recorder) -> Result<()> {
    rec.cases += 1;
    let w0 = Permutation::longest(n)?;
    let formula = minv_w0_formula(n);
    let direct = minv_by_rotations(&w0);
    rec.check(
        direct == formula,
        n,
        || w0.to_string(),
        || format!("minv(w0) {direct} != {formula}"),
    );
    if n < 2 {
        return Ok(());
    }
    let pi0 = build_pi0(n)?;
    let greedy = build_pi0_greedy(n)?;
    let inv = inv_pi0(n)?;
    rec.check(
        pi0 == greedy,
        n,
        || pi0.to_string(),
        || format!("greedy construction gives {greedy}"),
    );
    rec.check(
        is_heavy_tailed(&pi0),
        n,
        || pi0.to_string(),
        || "π0 is not heavy-tailed".into(),
    );
    let by_pairs = inv_by_pairs(&pi0);
    rec.check(
        by_pairs == inv,
        n,
        || pi0.to_string(),
        || format!("inv(π0) = {by_pairs} != C(n,2) − Σk = {inv}"),
    );
    let m = minv_by_rotations(&pi0);
    rec.check(
        m == inv,
        n,
        || pi0.to_string(),
        || format!("minv(π0) = {m} != {inv}"),
    );
    let lower = lower_bound(n);
    rec.check(
        lower <= inv as f64,
        n,
        || pi0.to_string(),
        || format!("lower bound {lower} exceeds inv(π0) = {inv}"),
    );
    Ok(())
}

fn conjecture(n: usize, opts: &VerifyOptions, rec: &mut Recorder) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    rec.cases += 1;
    let report = verify_conjecture_sort_eq_pi0(n, &opts.search)?;
    rec.check(
        report.equal,
        n,
        || format!("n={n}"),
        || {
            format!(
                "Sort_n = {} but inv(π0) = {}",
                report.sort_exact, report.inv_pi0
            )
        },
    );
    let sort = Ratio::from_integer(report.sort_exact);
    rec.check(
        lower_bound(n) <= report.sort_exact as f64
            && sort <= sort_upper_bound(n)
            && sort <= diameter_upper_bound(n),
        n,
        || format!("n={n}"),
        || {
            format!(
                "Sort_n = {} escapes the closed-form bounds",
                report.sort_exact
            )
        },
    );
    Ok(())
}
