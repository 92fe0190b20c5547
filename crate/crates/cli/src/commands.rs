use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use serde::Serialize;

use cyclic_sort::cosets::{
    coset_mean_inv, distance_witness, is_heavy_tailed, minv_shifts, CosetIndex,
};
use cyclic_sort::extremal::{bounds, build_pi0, format_ratio, kt_sequence, serialize_ratio};
use cyclic_sort::schreier::{
    bfs, bfs_memory_estimate, diameter_exact, diameter_memory_estimate, explicit_graph,
    human_bytes, is_unimodal, MAX_BFS_N, MAX_DIAMETER_N,
};
use cyclic_sort::verify::{run_suite, Suite, VerifyOptions};
use cyclic_sort::{
    BoundsReport, CosetRep, Cycle, DistanceField, GeneratorKind, GeneratorSet, Permutation, Ratio,
    SearchConfig,
};

use crate::args::{Format, Mode, SearchArgs};
use crate::error::{CliError, CliResult};
use crate::output::Sink;

pub const DEFAULT_SORT_CAP: usize = 11;
pub const DEFAULT_DIAMETER_CAP: usize = 9;
pub const DEFAULT_DISTRIBUTION_CAP: usize = 11;

/// A one-line word, or cycle notation when the input starts with `(`.
fn parse_permutation(s: &str) -> CliResult<Permutation> {
    if s.trim_start().starts_with('(') {
        Ok(s.parse::<Cycle>()?.as_permutation())
    } else {
        Ok(s.parse()?)
    }
}

fn parse_cycle(s: &str) -> CliResult<Cycle> {
    if s.trim_start().starts_with('(') {
        Ok(s.parse()?)
    } else {
        Ok(Cycle::from_permutation(&s.parse()?)?)
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct StatsOut {
    word: Permutation,
    n: usize,
    inv: u64,
    winv: u64,
    cwinv: u64,
    minv: u64,
    minv_shifts: Vec<usize>,
    heavy_tailed: bool,
    #[serde(serialize_with = "serialize_ratio")]
    coset_mean_inv: Ratio<u64>,
    cos_angle: Option<f64>,
}

pub fn stats(sink: &mut Sink, input: &str) -> CliResult {
    let p = parse_permutation(input)?;
    let (minv, shifts) = minv_shifts(&p);
    let st = p.stats();
    let out = StatsOut {
        word: p,
        n: p.n(),
        inv: st.inv,
        winv: st.winv,
        cwinv: st.cwinv,
        minv,
        minv_shifts: shifts,
        heavy_tailed: is_heavy_tailed(&p),
        coset_mean_inv: coset_mean_inv(&p),
        cos_angle: p.cos_angle().ok(),
    };
    let cos = out
        .cos_angle
        .map_or("undefined".to_string(), |c| format!("{c:.6}"));
    let mean = format!(
        "{} ({})",
        out.coset_mean_inv,
        format_ratio(&out.coset_mean_inv)
    );
    match sink.format {
        Format::Text => sink.pairs(&[
            ("word", out.word.to_string()),
            ("n", out.n.to_string()),
            ("inv", out.inv.to_string()),
            ("winv", out.winv.to_string()),
            ("cwinv", out.cwinv.to_string()),
            ("minv", out.minv.to_string()),
            ("minv_shifts", join(&out.minv_shifts, " ")),
            ("heavy_tailed", out.heavy_tailed.to_string()),
            ("coset_mean_inv", mean),
            ("cos_angle", cos),
        ]),
        Format::Json => sink.json(&out),
        Format::Csv => sink.csv(
            &[
                "word",
                "n",
                "inv",
                "winv",
                "cwinv",
                "minv",
                "minv_shifts",
                "heavy_tailed",
                "coset_mean_inv",
                "cos_angle",
            ],
            &[vec![
                out.word.to_string(),
                out.n.to_string(),
                out.inv.to_string(),
                out.winv.to_string(),
                out.cwinv.to_string(),
                out.minv.to_string(),
                join(&out.minv_shifts, " "),
                out.heavy_tailed.to_string(),
                out.coset_mean_inv.to_string(),
                out.cos_angle.map_or(String::new(), |c| format!("{c:.6}")),
            ]],
        ),
        Format::Dot => Err(sink.unsupported("stats", "text, json, csv")),
    }
}

#[derive(Serialize)]
struct DistOut {
    first: Cycle,
    second: Cycle,
    distance: u64,
    /// `j` in `τ = γ̄₁·cⁿʲ·γ̄₂⁻¹`.
    shift: usize,
    tau: Permutation,
}

pub fn dist(sink: &mut Sink, first: &str, second: &str) -> CliResult {
    let (a, b) = (parse_cycle(first)?, parse_cycle(second)?);
    let w = distance_witness(&a, &b)?;
    let out = DistOut {
        first: a,
        second: b,
        distance: w.distance,
        shift: w.shift,
        tau: w.tau,
    };
    match sink.format {
        Format::Text => sink.pairs(&[
            ("first", out.first.to_string()),
            ("second", out.second.to_string()),
            ("distance", out.distance.to_string()),
            ("witness", format!("{} (shift {})", out.tau, out.shift)),
        ]),
        Format::Json => sink.json(&out),
        Format::Csv => sink.csv(
            &["first", "second", "distance", "shift", "tau"],
            &[vec![
                out.first.to_string(),
                out.second.to_string(),
                out.distance.to_string(),
                out.shift.to_string(),
                out.tau.to_string(),
            ]],
        ),
        Format::Dot => Err(sink.unsupported("dist", "text, json, csv")),
    }
}

#[derive(Serialize)]
struct Pi0Out {
    n: usize,
    pi0: Permutation,
    kt: Vec<u64>,
    inv_pi0: u64,
    bounds: BoundsReport,
}

pub fn pi0(sink: &mut Sink, n: usize) -> CliResult {
    let pi0 = build_pi0(n)?;
    let out = Pi0Out {
        n,
        pi0,
        kt: kt_sequence(n)?.values,
        inv_pi0: pi0.inv(),
        bounds: bounds(n)?,
    };
    match sink.format {
        Format::Text => sink.pairs(&[
            ("n", n.to_string()),
            ("pi0", out.pi0.to_string()),
            ("k_t", join(&out.kt, " ")),
            ("inv_pi0", out.inv_pi0.to_string()),
            ("lower", format!("{:.6}", out.bounds.lower)),
            (
                "sort_upper",
                format!(
                    "{} ({})",
                    out.bounds.sort_upper,
                    format_ratio(&out.bounds.sort_upper)
                ),
            ),
            (
                "diam_upper",
                format!(
                    "{} ({})",
                    out.bounds.diam_upper,
                    format_ratio(&out.bounds.diam_upper)
                ),
            ),
        ]),
        Format::Json => sink.json(&out),
        Format::Csv => sink.csv(
            &["n", "pi0", "k_t", "inv_pi0"],
            &[vec![
                n.to_string(),
                out.pi0.to_string(),
                join(&out.kt, " "),
                out.inv_pi0.to_string(),
            ]],
        ),
        Format::Dot => Err(sink.unsupported("pi0", "text, json, csv")),
    }
}

const BOUNDS_COLUMNS: [&str; 8] = [
    "n",
    "lower",
    "inv_pi0",
    "minv_w0",
    "sort_upper",
    "sort_upper_floor",
    "diam_upper",
    "diam_upper_floor",
];

fn bounds_row(r: &BoundsReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        format!("{:.6}", r.lower),
        r.inv_pi0.to_string(),
        r.minv_w0.to_string(),
        r.sort_upper.to_string(),
        r.sort_upper_floor.to_string(),
        r.diam_upper.to_string(),
        r.diam_upper_floor.to_string(),
    ]
}

pub fn bounds_table(sink: &mut Sink, ns: RangeInclusive<usize>) -> CliResult {
    if *ns.start() < 2 {
        return Err(CliError::Usage("bounds need n >= 2".into()));
    }
    let rows = ns.map(bounds).collect::<Result<Vec<_>, _>>()?;
    match sink.format {
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(bounds_row).collect();
            let widths: Vec<usize> = (0..BOUNDS_COLUMNS.len())
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([BOUNDS_COLUMNS[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let w = sink.writer();
            let line = |w: &mut dyn Write, cols: Vec<&str>| -> std::io::Result<()> {
                let padded: Vec<String> = cols
                    .iter()
                    .zip(&widths)
                    .map(|(c, &width)| format!("{c:>width$}"))
                    .collect();
                writeln!(w, "{}", padded.join("  "))
            };
            line(w, BOUNDS_COLUMNS.to_vec())?;
            for row in &cells {
                line(w, row.iter().map(String::as_str).collect())?;
            }
            Ok(())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Table {
                rows: Vec<BoundsReport>,
            }
            sink.json(&Table { rows })
        }
        Format::Csv => sink.csv(
            &BOUNDS_COLUMNS,
            &rows.iter().map(bounds_row).collect::<Vec<_>>(),
        ),
        Format::Dot => Err(sink.unsupported("bounds", "text, json, csv")),
    }
}

fn search_config(args: &SearchArgs) -> SearchConfig {
    let mut cfg = SearchConfig::default();
    if let Some(w) = args.workers {
        cfg.workers = w as usize;
    }
    cfg.memory_cap = args.memory_cap;
    cfg
}

/// Applies the desk-scale default cap unless `--allow-large` is given, in
/// which case the estimate is reported on stderr before the run.
fn enforce_cap(
    what: &str,
    n: usize,
    default_cap: usize,
    library_cap: usize,
    allow_large: bool,
    estimate: impl Fn() -> u64,
) -> CliResult {
    if n <= default_cap || n > library_cap {
        return Ok(());
    }
    let bytes = human_bytes(estimate());
    if !allow_large {
        return Err(CliError::Refused(format!(
            "{what} for n = {n} is above the default cap {default_cap} \
             (estimated memory {bytes}); pass --allow-large to run up to n = {library_cap}"
        )));
    }
    eprintln!("{what} for n = {n}: estimated memory {bytes}");
    Ok(())
}

#[derive(Serialize)]
struct SortOut {
    n: usize,
    generators: GeneratorKind,
    mode: &'static str,
    source: Cycle,
    value: u64,
}

#[derive(Serialize)]
struct DiameterOut {
    n: usize,
    generators: GeneratorKind,
    mode: &'static str,
    diameter: u64,
    source: Cycle,
    source_index: u64,
    target: Cycle,
    target_index: u64,
}

#[derive(Serialize)]
struct DistributionOut {
    n: usize,
    generators: GeneratorKind,
    mode: &'static str,
    counts: Vec<u64>,
    total: u64,
    unimodal: bool,
}

fn cycle_at(index: CosetIndex, n: usize) -> CliResult<Cycle> {
    Ok(Cycle::from_coset(CosetRep::unrank(index, n)?))
}

fn connected(field: DistanceField) -> CliResult<DistanceField> {
    if field.is_complete() {
        Ok(field)
    } else {
        Err(CliError::Lib(cyclic_sort::Error::Domain(format!(
            "the graph for n = {} is disconnected",
            field.n()
        ))))
    }
}

fn write_dump(field: &DistanceField, path: &Path) -> CliResult {
    let mut out = BufWriter::new(File::create(path)?);
    field.write_dump(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn bfs_command(
    sink: &mut Sink,
    n: usize,
    mode: Mode,
    kind: GeneratorKind,
    search: &SearchArgs,
    dump: Option<&Path>,
) -> CliResult {
    let cfg = search_config(search);
    let gens = GeneratorSet::new(kind, n);
    if sink.format == Format::Dot {
        return Err(sink.unsupported("bfs", "text, json, csv"));
    }
    match mode {
        Mode::Sort | Mode::Distribution => {
            let (what, cap) = if mode == Mode::Sort {
                ("sort search", DEFAULT_SORT_CAP)
            } else {
                ("distribution search", DEFAULT_DISTRIBUTION_CAP)
            };
            enforce_cap(what, n, cap, MAX_BFS_N, search.allow_large, || {
                bfs_memory_estimate(n)
            })?;
            let field = connected(bfs(&gens, CosetIndex(0), &cfg)?)?;
            if let Some(path) = dump {
                write_dump(&field, path)?;
            }
            if mode == Mode::Sort {
                render_sort(sink, &field)
            } else {
                render_distribution(sink, &field)
            }
        }
        Mode::Diameter => {
            enforce_cap(
                "diameter search",
                n,
                DEFAULT_DIAMETER_CAP,
                MAX_DIAMETER_N,
                search.allow_large,
                || diameter_memory_estimate(&gens, cfg.workers),
            )?;
            let report = diameter_exact(&gens, &cfg)?;
            if let Some(path) = dump {
                write_dump(&bfs(&gens, report.source, &cfg)?, path)?;
            }
            let out = DiameterOut {
                n,
                generators: kind,
                mode: "diameter",
                diameter: report.diameter,
                source: cycle_at(report.source, n)?,
                source_index: report.source.0,
                target: cycle_at(report.target, n)?,
                target_index: report.target.0,
            };
            match sink.format {
                Format::Json => sink.json(&out),
                Format::Csv => sink.csv(
                    &[
                        "n",
                        "generators",
                        "diameter",
                        "source",
                        "source_index",
                        "target",
                        "target_index",
                    ],
                    &[vec![
                        n.to_string(),
                        kind.to_string(),
                        out.diameter.to_string(),
                        out.source.to_string(),
                        out.source_index.to_string(),
                        out.target.to_string(),
                        out.target_index.to_string(),
                    ]],
                ),
                _ => sink.pairs(&[
                    ("n", n.to_string()),
                    ("generators", kind.to_string()),
                    ("diameter", out.diameter.to_string()),
                    (
                        "source",
                        format!("{} (index {})", out.source, out.source_index),
                    ),
                    (
                        "target",
                        format!("{} (index {})", out.target, out.target_index),
                    ),
                ]),
            }
        }
    }
}

fn render_sort(sink: &mut Sink, field: &DistanceField) -> CliResult {
    let n = field.n();
    let out = SortOut {
        n,
        generators: field.generator_kind(),
        mode: "sort",
        source: cycle_at(field.source(), n)?,
        value: field.eccentricity() as u64,
    };
    match sink.format {
        Format::Json => sink.json(&out),
        Format::Csv => sink.csv(
            &["n", "generators", "sort"],
            &[vec![
                n.to_string(),
                out.generators.to_string(),
                out.value.to_string(),
            ]],
        ),
        _ => sink.pairs(&[
            ("n", n.to_string()),
            ("generators", out.generators.to_string()),
            ("sort", out.value.to_string()),
        ]),
    }
}

fn render_distribution(sink: &mut Sink, field: &DistanceField) -> CliResult {
    let counts = field.histogram();
    let out = DistributionOut {
        n: field.n(),
        generators: field.generator_kind(),
        mode: "distribution",
        total: counts.iter().sum(),
        unimodal: is_unimodal(&counts),
        counts,
    };
    match sink.format {
        Format::Json => sink.json(&out),
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .counts
                .iter()
                .enumerate()
                .map(|(d, c)| vec![out.n.to_string(), d.to_string(), c.to_string()])
                .collect();
            sink.csv(&["n", "distance", "count"], &rows)
        }
        _ => {
            let w = sink.writer();
            writeln!(w, "distance  count")?;
            for (d, c) in out.counts.iter().enumerate() {
                writeln!(w, "{d:>8}  {c}")?;
            }
            writeln!(w, "total     {}", out.total)?;
            writeln!(w, "unimodal  {}", out.unimodal)?;
            Ok(())
        }
    }
}

fn default_range(suite: Suite) -> RangeInclusive<usize> {
    match suite {
        Suite::DistanceOracle => 2..=7,
        Suite::Pi0Agreement => 2..=16,
        Suite::ConjectureSortPi0 => 2..=DEFAULT_SORT_CAP,
        Suite::Witness => 1..=8,
        other => 1..=other.exhaustive_limit(),
    }
}

pub fn verify(
    sink: &mut Sink,
    suite: Suite,
    range: Option<RangeInclusive<usize>>,
    seed: u64,
    cases: usize,
    search: &SearchArgs,
) -> CliResult {
    let range = range.unwrap_or_else(|| default_range(suite));
    if suite == Suite::ConjectureSortPi0 {
        let n = *range.end();
        enforce_cap(
            "sort search",
            n,
            DEFAULT_SORT_CAP,
            MAX_BFS_N,
            search.allow_large,
            || bfs_memory_estimate(n),
        )?;
    }
    let opts = VerifyOptions {
        seed,
        cases,
        search: search_config(search),
    };
    let report = run_suite(suite, range, &opts)?;
    match sink.format {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(
            &[
                "suite",
                "n_min",
                "n_max",
                "seed",
                "cases",
                "failures",
                "passed",
                "wall_time_secs",
            ],
            &[vec![
                suite.to_string(),
                report.n_min.to_string(),
                report.n_max.to_string(),
                seed.to_string(),
                report.cases.to_string(),
                report.failure_count.to_string(),
                report.passed().to_string(),
                format!("{:.3}", report.wall_time_secs),
            ]],
        )?,
        Format::Text => {
            let w = sink.writer();
            writeln!(
                w,
                "{}  {suite}  n={}..{}  seed={seed}  cases={}  failures={}  {:.2}s",
                if report.passed() { "PASS" } else { "FAIL" },
                report.n_min,
                report.n_max,
                report.cases,
                report.failure_count,
                report.wall_time_secs
            )?;
            for f in &report.failures {
                writeln!(w, "  n={}  input {}  {}", f.n, f.input, f.detail)?;
            }
        }
        Format::Dot => return Err(sink.unsupported("verify", "text, json, csv")),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "suite {suite} failed on {} case(s)",
            report.failure_count
        )))
    }
}

pub fn export_graph(sink: &mut Sink, n: usize, kind: GeneratorKind) -> CliResult {
    let graph = explicit_graph(&GeneratorSet::new(kind, n))?;
    let label = |i: usize| graph.vertices[i].to_string();
    match sink.format {
        Format::Dot => {
            let w = sink.writer();
            writeln!(w, "graph gamma_{n}_{kind} {{")?;
            for v in &graph.vertices {
                writeln!(w, "  \"{v}\";")?;
            }
            for &(u, v) in &graph.edges {
                writeln!(w, "  \"{}\" -- \"{}\";", label(u), label(v))?;
            }
            writeln!(w, "}}")?;
            Ok(())
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = graph
                .edges
                .iter()
                .map(|&(u, v)| vec![u.to_string(), v.to_string(), label(u), label(v)])
                .collect();
            sink.csv(&["source_index", "target_index", "source", "target"], &rows)
        }
        Format::Json => sink.json(&graph),
        Format::Text => {
            let mut adjacency = vec![Vec::new(); graph.vertices.len()];
            for &(u, v) in &graph.edges {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            let w = sink.writer();
            for (u, nbrs) in adjacency.iter_mut().enumerate() {
                nbrs.sort_unstable();
                let names: Vec<String> = nbrs.iter().map(|&v| label(v)).collect();
                writeln!(w, "{}: {}", label(u), names.join(" "))?;
            }
            Ok(())
        }
    }
}
