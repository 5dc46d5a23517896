//! TOML-described sweeps: each writes a CSV table plus a text summary and
//! fails (exit 1) when one of its embedded assertions does.
//!
//! ```toml
//! experiment = "dhm-sweep"   # see `Experiment` for the list
//! k = [4, 12]                # an inclusive range, or a single value
//! seed = 1                   # required by randomized experiments
//! out = "dhm.csv"
//! ```

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sepsplit::census::{burnside_count, count_sep_with};
use sepsplit::enumerate::binomial;
use sepsplit::search::{exact_min_family_size_with, Property};
use sepsplit::separate::{
    build_n_separating_randomized_with, ceil_log2, check_implication_with, estimate_separation_probability,
    implication_suite, StressPlan,
};
use sepsplit::split::{
    build_2_splitting_randomized_with, calibrated_split_constant, count_simultaneous_splitters, split_probability,
    two_splitting_bounds, volume_lower_bound_with, VolumeMode,
};
use sepsplit::Limits;

use crate::commands::{identity_reports, parse_property, volume_row};
use crate::output::{json, read_text, write_atomic, CliError, CliResult, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Simultaneous splitter counts over all (s, t, b); nondecreasing in b.
    DhmSweep,
    /// Orbit counts of k-point sets in Q_m; duality and Burnside agreement.
    Census,
    /// Volume bounds for each n, k; max volume at |A| = k/2 and increasing bounds.
    VolumeTable,
    /// Randomized n-separating builds against the ceiling.
    NsepBounds,
    /// Randomized 2-splitting builds between the volume bound and the ceiling.
    SplitBounds,
    /// Monte-Carlo separation probability against 2^-n.
    SeparationProbability,
    /// Exact split probability p_t and the constant min sqrt(t)·p_t.
    Calibration,
    /// Exact minimum family sizes.
    MinSearch,
    /// Counting identities for every valid (s, t) at each k.
    Identities,
    /// Implication stress tests and counterexample constructions.
    Implications,
}

impl Experiment {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Span {
    One(usize),
    Range([usize; 2]),
}

impl Span {
    fn range(self) -> RangeInclusive<usize> {
        match self {
            Span::One(v) => v..=v,
            Span::Range([a, b]) => a..=b,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub k: Option<Span>,
    pub n: Option<Span>,
    pub m: Option<Span>,
    pub t: Option<Span>,
    pub seed: Option<u64>,
    /// Seeds per configuration for the randomized builds.
    pub seeds: Option<usize>,
    pub samples: Option<usize>,
    pub families: Option<usize>,
    pub property: Option<String>,
    pub mode: Option<String>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub unsafe_limits: bool,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub assertion: String,
    pub detail: String,
}

pub struct ExperimentRun {
    pub table: Table,
    pub summary: Vec<String>,
    pub failures: Vec<Failure>,
}

impl ExperimentRun {
    fn new(header: &[&'static str]) -> Self {
        ExperimentRun {
            table: Table::new(header),
            summary: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, assertion: &str, detail: impl Into<String>) {
        if !ok {
            self.failures.push(Failure {
                assertion: assertion.to_string(),
                detail: detail.into(),
            });
        }
    }
}

pub fn load_spec(path: &Path) -> CliResult<ExperimentSpec> {
    toml::from_str(&read_text(path)?).map_err(|e| CliError::Spec(e.to_string()))
}

fn span_or(span: Option<Span>, default: RangeInclusive<usize>) -> RangeInclusive<usize> {
    span.map_or(default, Span::range)
}

fn need_seed(spec: &ExperimentSpec) -> CliResult<u64> {
    spec.seed
        .ok_or_else(|| CliError::Spec(format!("{} is randomized and needs a seed", spec.experiment.name())))
}

pub fn run(spec: &ExperimentSpec, limits: &Limits) -> CliResult<ExperimentRun> {
    match spec.experiment {
        Experiment::DhmSweep => dhm_sweep(span_or(spec.k, 4..=12)),
        Experiment::Census => census(span_or(spec.m, 1..=3), limits),
        Experiment::VolumeTable => volume_table(span_or(spec.n, 1..=2), span_or(spec.k, 2..=12), spec, limits),
        Experiment::NsepBounds => nsep_bounds(spec, limits),
        Experiment::SplitBounds => split_bounds(spec, limits),
        Experiment::SeparationProbability => separation_probability(spec),
        Experiment::Calibration => calibration(span_or(spec.t, 1..=20)),
        Experiment::MinSearch => min_search(spec, limits),
        Experiment::Identities => identities(span_or(spec.k, 2..=8)),
        Experiment::Implications => implications(spec, limits),
    }
}

fn dhm_sweep(ks: RangeInclusive<usize>) -> CliResult<ExperimentRun> {
    let mut run = ExperimentRun::new(&["k", "s", "t", "b", "count"]);
    let mut configs = 0;
    for k in ks {
        for s in 1..k {
            for t in 1..=k - s {
                let mut prev = 0;
                for b in 0..=s.min(t) {
                    let c = count_simultaneous_splitters(s, t, b, k)?.count;
                    run.table.push([k as u64, s as u64, t as u64, b as u64, c]);
                    run.check(
                        c >= prev,
                        "nondecreasing in b",
                        format!("k={k} s={s} t={t} b={b}: {c} < {prev}"),
                    );
                    prev = c;
                }
                configs += 1;
            }
        }
    }
    run.summary.push(format!("{configs} (s,t,k) configurations swept"));
    Ok(run)
}

fn census(ms: RangeInclusive<usize>, limits: &Limits) -> CliResult<ExperimentRun> {
    let mut run = ExperimentRun::new(&["m", "k", "count", "burnside"]);
    for m in ms {
        let size = 1usize << m;
        let counts: Vec<u128> = (0..=size)
            .map(|k| count_sep_with(m, k, limits))
            .collect::<Result<_, _>>()?;
        for (k, &c) in counts.iter().enumerate() {
            let b = burnside_count(m, k)?;
            run.table.push([m as u128, k as u128, c, b]);
            run.check(c == b, "burnside agreement", format!("m={m} k={k}: {c} vs {b}"));
            run.check(
                c == counts[size - k],
                "duality",
                format!("m={m} k={k}: {c} vs {}", counts[size - k]),
            );
        }
        run.check(counts[size] == 1, "full cube is one orbit", format!("m={m}"));
        run.summary.push(format!("m={m}: {counts:?}"));
    }
    Ok(run)
}

fn volume_table(
    ns: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
    spec: &ExperimentSpec,
    limits: &Limits,
) -> CliResult<ExperimentRun> {
    let mode = match spec.mode.as_deref() {
        None | Some("exact") => VolumeMode::Exact,
        Some("closed-form") => VolumeMode::ClosedForm,
        Some(other) => return Err(CliError::Spec(format!("unknown mode {other:?}"))),
    };
    let mut run = ExperimentRun::new(&[
        "n",
        "k",
        "mode",
        "collections",
        "max_volume",
        "argmax_size",
        "bound",
        "min_size",
    ]);
    for n in ns {
        let mut prev_even = 0.0;
        for k in ks.clone() {
            let b = volume_lower_bound_with(n, k, mode, limits)?;
            volume_row(&mut run.table, &b);
            if n == 1 && k % 2 == 0 {
                run.check(
                    b.argmax_size == k / 2,
                    "max volume at k/2",
                    format!("k={k}: argmax {}", b.argmax_size),
                );
                let cap = 3 * binomial(k as u64, (k / 2) as u64);
                run.check(
                    b.max_volume <= cap,
                    "max volume <= 3 C(k,k/2)",
                    format!("k={k}: {} > {cap}", b.max_volume),
                );
            }
            if k % 2 == 0 {
                run.check(
                    b.value() > prev_even,
                    "bound increasing over even k",
                    format!("n={n} k={k}"),
                );
                prev_even = b.value();
            }
        }
    }
    Ok(run)
}

fn nsep_bounds(spec: &ExperimentSpec, limits: &Limits) -> CliResult<ExperimentRun> {
    let seed = need_seed(spec)?;
    let seeds = spec.seeds.unwrap_or(100);
    let mut run = ExperimentRun::new(&["n", "k", "seed", "size", "ceiling", "certified"]);
    for n in span_or(spec.n, 2..=2) {
        for k in span_or(spec.k, 8..=8) {
            let mut ok = 0;
            let mut ceiling = 0;
            for s in seed..seed + seeds as u64 {
                match build_n_separating_randomized_with(n, k, s, true, limits) {
                    Ok(r) => {
                        ceiling = r.bounds.ceiling();
                        ok += usize::from(r.certified && r.family.len() <= ceiling);
                        run.table
                            .push([n, k, s as usize, r.family.len(), ceiling, usize::from(r.certified)]);
                    }
                    Err(sepsplit::Error::RetryExhausted { size, ceiling: c, .. }) => {
                        ceiling = c;
                        run.table.push([n, k, s as usize, size, c, 0]);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            run.check(
                ok * 100 >= 95 * seeds,
                "at least 95% of seeds within the ceiling",
                format!("n={n} k={k}: {ok}/{seeds}"),
            );
            run.summary
                .push(format!("n={n} k={k}: {ok}/{seeds} certified within ceiling {ceiling}"));
        }
    }
    Ok(run)
}

fn split_bounds(spec: &ExperimentSpec, limits: &Limits) -> CliResult<ExperimentRun> {
    let seed = need_seed(spec)?;
    let seeds = spec.seeds.unwrap_or(20);
    let mut run = ExperimentRun::new(&["k", "seed", "size", "volume_bound", "ceiling"]);
    for k in span_or(spec.k, 6..=6) {
        let floor = volume_lower_bound_with(2, k, VolumeMode::Exact, limits)?.min_family_size();
        let ceiling = two_splitting_bounds(k)?.ceiling();
        for s in seed..seed + seeds as u64 {
            let r = build_2_splitting_randomized_with(k, s, true, limits)?;
            let size = r.family.len();
            run.table
                .push([k as u128, s as u128, size as u128, floor, ceiling as u128]);
            run.check(
                r.certified && size as u128 >= floor && size <= ceiling,
                "volume bound <= size <= ceiling",
                format!("k={k} seed={s}: {floor} <= {size} <= {ceiling}"),
            );
        }
        run.summary
            .push(format!("k={k}: volume bound {floor}, ceiling {ceiling}"));
    }
    Ok(run)
}

fn separation_probability(spec: &ExperimentSpec) -> CliResult<ExperimentRun> {
    let seed = need_seed(spec)?;
    let samples = spec.samples.unwrap_or(10_000);
    let mut run = ExperimentRun::new(&["n", "k", "samples", "hits", "mean", "std_error", "floor"]);
    for n in span_or(spec.n, 1..=3) {
        for k in span_or(spec.k, 16..=16) {
            let e = estimate_separation_probability(n, k, samples, seed)?;
            let floor = (-(n as f64)).exp2();
            run.table.push([
                n.to_string(),
                k.to_string(),
                e.samples.to_string(),
                e.hits.to_string(),
                format!("{:.6}", e.mean),
                format!("{:.6}", e.std_error),
                format!("{floor:.6}"),
            ]);
            run.check(
                e.mean >= floor - 3.0 * e.std_error,
                "mean >= 2^-n - 3 SE",
                format!("n={n} k={k}: {:.4} vs {floor}", e.mean),
            );
        }
    }
    Ok(run)
}

fn calibration(ts: RangeInclusive<usize>) -> CliResult<ExperimentRun> {
    let mut run = ExperimentRun::new(&["t", "p_t", "sqrt_t_p_t"]);
    let mut best = (f64::INFINITY, 0);
    for t in ts.clone() {
        let p = split_probability(t);
        let v = (t as f64).sqrt() * p;
        if v < best.0 {
            best = (v, t);
        }
        run.table.push([t.to_string(), format!("{p:.9}"), format!("{v:.9}")]);
    }
    let (c, at) = calibrated_split_constant(*ts.end());
    run.check(
        ts.start() > &1 || (c == best.0 && at == best.1),
        "calibrated constant is the table minimum",
        format!("{c} at t={at} vs {} at t={}", best.0, best.1),
    );
    run.summary.push(format!("c = {c:.9} at t = {at}"));
    Ok(run)
}

fn min_search(spec: &ExperimentSpec, limits: &Limits) -> CliResult<ExperimentRun> {
    let n = spec.n.map(|s| *s.range().start());
    let prop = parse_property(spec.property.as_deref().unwrap_or("separating"), n)?;
    let mut run = ExperimentRun::new(&["property", "k", "value", "exhausted", "nodes"]);
    for k in span_or(spec.k, 2..=8) {
        let r = exact_min_family_size_with(prop, k, limits)?;
        run.table.push([
            prop.to_string(),
            k.to_string(),
            r.value.to_string(),
            r.exhausted.to_string(),
            r.nodes.to_string(),
        ]);
        run.check(r.exhausted, "search exhausted", format!("k={k}"));
        match prop {
            Property::Separating => run.check(
                r.value == ceil_log2(k),
                "value = ceil(log2 k)",
                format!("k={k}: {}", r.value),
            ),
            Property::Splitting => {
                let floor = volume_lower_bound_with(1, k, VolumeMode::Exact, limits)?.value();
                run.check(
                    r.value as f64 >= floor && r.value <= k.div_ceil(2),
                    "N/v <= value <= ceil(k/2)",
                    format!("k={k}: {floor:.3} <= {} <= {}", r.value, k.div_ceil(2)),
                );
            }
            _ => {}
        }
    }
    Ok(run)
}

fn identities(ks: RangeInclusive<usize>) -> CliResult<ExperimentRun> {
    let mut run = ExperimentRun::new(&["k", "check", "params", "instances", "violations"]);
    for k in ks {
        for r in identity_reports(k)? {
            run.table.push([
                k.to_string(),
                r.check.clone(),
                r.params.clone(),
                r.instances.to_string(),
                r.violations.to_string(),
            ]);
            run.check(r.passed, &r.check, r.to_string());
        }
    }
    Ok(run)
}

fn implications(spec: &ExperimentSpec, limits: &Limits) -> CliResult<ExperimentRun> {
    let plan = StressPlan {
        families: spec.families.unwrap_or(200),
        seed: need_seed(spec)?,
    };
    let mut run = ExperimentRun::new(&[
        "k",
        "check",
        "params",
        "instances",
        "premise_hits",
        "violations",
        "passed",
    ]);
    for k in span_or(spec.k, 6..=8) {
        for kind in implication_suite(k) {
            let r = check_implication_with(kind, k, &plan, limits)?;
            run.table.push([
                k.to_string(),
                r.check.clone(),
                r.params.clone(),
                r.instances.to_string(),
                r.premise_hits.to_string(),
                r.violations.to_string(),
                r.passed.to_string(),
            ]);
            run.check(r.passed, &r.check, r.to_string());
        }
    }
    Ok(run)
}

/// Runs a spec file and writes `<out>` (CSV) and `<out>.summary.txt`.
/// Returns the exit code and the summary text.
pub fn run_file(path: &Path, out_override: Option<&Path>, unsafe_limits: bool) -> CliResult<(u8, String)> {
    let spec = load_spec(path)?;
    let limits = if unsafe_limits || spec.unsafe_limits {
        Limits::unlimited()
    } else {
        Limits::default()
    };
    let out = out_override
        .map(Path::to_path_buf)
        .or_else(|| spec.out.clone())
        .unwrap_or_else(|| path.with_extension("csv"));
    let mut summary_path = out.clone().into_os_string();
    summary_path.push(".summary.txt");
    let summary_path = PathBuf::from(summary_path);

    let result = run(&spec, &limits);
    let (code, text) = match result {
        Ok(r) => {
            write_atomic(&out, &r.table.to_csv())?;
            let mut text = format!("experiment {}: ", spec.experiment.name());
            if r.failures.is_empty() {
                text.push_str("all assertions passed\n");
            } else {
                text.push_str(&format!("{} assertion(s) failed\n", r.failures.len()));
            }
            for line in &r.summary {
                text.push_str(&format!("  {line}\n"));
            }
            text.push_str(&format!("table: {}\n", out.display()));
            if !r.failures.is_empty() {
                text.push_str("failures:\n");
                text.push_str(&json(&r.failures));
            }
            (u8::from(!r.failures.is_empty()), text)
        }
        Err(e) => {
            let kind = match &e {
                CliError::Core(err) if err.is_guard() => "GuardExceeded",
                _ => "Error",
            };
            let text = format!(
                "experiment {}: aborted\nfailures:\n{}",
                spec.experiment.name(),
                json(&[Failure {
                    assertion: kind.to_string(),
                    detail: e.to_string(),
                }])
            );
            (e.exit_code(), text)
        }
    };
    write_atomic(&summary_path, &text)?;
    Ok((code, text))
}
