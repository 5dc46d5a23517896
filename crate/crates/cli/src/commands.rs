use std::path::Path;

use serde::Serialize;
use serde_json::json;

use sepsplit::census::{burnside_count, count_sep_with};
use sepsplit::ground::{emit_family, parse_family_auto, Format, SetCollection, SetFamily};
use sepsplit::rng::{random_subset, seeded};
use sepsplit::search::{exact_min_family_size_with, Property, SearchResult};
use sepsplit::separate::{
    build_2_separating, build_min_separating, build_n_separating_randomized_with, check_implication_with,
    find_ij_violation_with, find_n_separating_violation_with, find_unseparated_pair, implication_suite,
    RandomizedBuild, StressPlan,
};
use sepsplit::split::{
    build_2_splitting_randomized_with, build_interval_splitting, build_triple_splitter, count_simultaneous_splitters,
    counting_identities_check, find_n_splitting_violation_with, find_unsplit_set, is_splittable_with, splits,
    triple_splittable_parity, volume_lower_bound_with, VolumeMode,
};
use sepsplit::{Limits, VerdictReport};

use crate::args::{CheckKind, ConstructKind, CountKind, OutFormat, Params, VerifyKind, VolumeModeArg};
use crate::output::{json, read_text, usage, CliResult, Table};

/// What a command produced: the primary output, its exit code, and an
/// optional line for stderr.
pub struct Outcome {
    pub body: String,
    pub code: u8,
    pub note: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            code: 0,
            note: None,
        }
    }
}

/// Shared command context: output format and limits.
pub struct Ctx {
    pub format: Option<OutFormat>,
    pub limits: Limits,
}

impl Ctx {
    fn json(&self) -> bool {
        self.format == Some(OutFormat::Json)
    }

    fn family_format(&self) -> Format {
        match self.format {
            Some(OutFormat::Matrix) => Format::Matrix,
            Some(OutFormat::Json) => Format::Json,
            _ => Format::Sets,
        }
    }

    fn table(&self, t: &Table) -> String {
        if self.json() {
            t.to_json()
        } else {
            t.to_csv()
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

pub fn load_family(path: &Path) -> CliResult<SetFamily> {
    Ok(parse_family_auto(&read_text(path)?)?)
}

pub fn construct(ctx: &Ctx, what: ConstructKind, p: &Params, input: Option<&Path>, verify: bool) -> CliResult<Outcome> {
    let mut note = None;
    let family = match what {
        ConstructKind::MinSep => build_min_separating(need(p.k, "k")?)?,
        ConstructKind::TwoSep => {
            let base = match input {
                Some(path) => load_family(path)?,
                None => build_min_separating(need(p.k, "k")?)?,
            };
            build_2_separating(&base)?
        }
        ConstructKind::IntervalSplit => build_interval_splitting(need(p.k, "k")?)?,
        ConstructKind::RandNsep | ConstructKind::Rand2Split => {
            let (k, seed) = (need(p.k, "k")?, need(p.seed, "seed")?);
            let r: RandomizedBuild = if what == ConstructKind::RandNsep {
                build_n_separating_randomized_with(need(p.n, "n")?, k, seed, verify, &ctx.limits)?
            } else {
                build_2_splitting_randomized_with(k, seed, verify, &ctx.limits)?
            };
            note = Some(format!(
                "size={} ceiling={} certified={} draws={}",
                r.family.len(),
                r.bounds.ceiling(),
                r.certified,
                r.draws
            ));
            r.family
        }
    };
    Ok(Outcome {
        body: emit_family(&family, ctx.family_format())?,
        code: 0,
        note,
    })
}

pub fn verify(ctx: &Ctx, what: VerifyKind, p: &Params, input: &Path) -> CliResult<Outcome> {
    let f = load_family(input)?;
    let (name, params, counterexample): (&str, String, Option<String>) = match what {
        VerifyKind::Sep => (
            "separating",
            String::new(),
            find_unseparated_pair(&f).map(|(x, y)| format!("{{{x},{y}}}")),
        ),
        VerifyKind::Nsep => {
            let n = need(p.n, "n")?;
            let v = find_n_separating_violation_with(&f, n, &ctx.limits)?;
            (
                "n-separating",
                format!("n={n}"),
                v.map(|c: SetCollection| c.to_string()),
            )
        }
        VerifyKind::Ijsep => {
            let (i, j) = (need(p.i, "i")?, need(p.j, "j")?);
            let v = find_ij_violation_with(&f, i, j, &ctx.limits)?;
            (
                "ij-separating",
                format!("i={i} j={j}"),
                v.map(|(a, b)| format!("P={a} Q={b}")),
            )
        }
        VerifyKind::Split => (
            "splitting",
            String::new(),
            find_unsplit_set(&f, &ctx.limits)?.map(|b| b.to_string()),
        ),
        VerifyKind::Nsplit => {
            let n = need(p.n, "n")?;
            let v = find_n_splitting_violation_with(&f, n, &ctx.limits)?;
            ("n-splitting", format!("n={n}"), v.map(|c| c.to_string()))
        }
    };
    let code = u8::from(counterexample.is_some());
    let status = format!(
        "{} {name} {params}{}k={} members={}",
        if code == 0 { "PASS" } else { "FAIL" },
        if params.is_empty() { "" } else { " " },
        f.k(),
        f.len()
    );
    let body = if ctx.json() {
        json(&json!({
            "property": name,
            "params": params,
            "k": f.k(),
            "members": f.len(),
            "holds": code == 0,
            "counterexample": counterexample,
        }))
    } else {
        match &counterexample {
            Some(c) => format!("{c}\n"),
            None => format!("{status}\n"),
        }
    };
    Ok(Outcome {
        body,
        code,
        note: counterexample.map(|_| status),
    })
}

pub fn count(ctx: &Ctx, what: CountKind, p: &Params, mode: VolumeModeArg) -> CliResult<Outcome> {
    let table = match what {
        CountKind::SepCensus => {
            let m = need(p.m, "m")?;
            let ks: Vec<usize> = match p.k {
                Some(k) => vec![k],
                None => (0..=1usize << m.min(16)).collect(),
            };
            let mut t = Table::new(&["m", "k", "count", "burnside"]);
            for k in ks {
                let c = count_sep_with(m, k, &ctx.limits)?;
                t.push([
                    m.to_string(),
                    k.to_string(),
                    c.to_string(),
                    burnside_count(m, k)?.to_string(),
                ]);
            }
            t
        }
        CountKind::Splitters => {
            let (s, tt, k) = (need(p.s, "s")?, need(p.t, "t")?, need(p.k, "k")?);
            let bs: Vec<usize> = match p.b {
                Some(b) => vec![b],
                None => (0..=s.min(tt)).filter(|&b| s + tt - b <= k).collect(),
            };
            let mut t = Table::new(&["s", "t", "b", "k", "count"]);
            for b in bs {
                let r = count_simultaneous_splitters(s, tt, b, k)?;
                t.push([r.s as u64, r.t as u64, r.b as u64, r.k as u64, r.count]);
            }
            t
        }
        CountKind::Volume => {
            let (n, k) = (need(p.n, "n")?, need(p.k, "k")?);
            let mut t = Table::new(&[
                "n",
                "k",
                "mode",
                "collections",
                "max_volume",
                "argmax_size",
                "bound",
                "min_size",
            ]);
            let b = volume_lower_bound_with(n, k, volume_mode(mode), &ctx.limits)?;
            volume_row(&mut t, &b);
            t
        }
    };
    Ok(Outcome::ok(ctx.table(&table)))
}

pub fn volume_mode(m: VolumeModeArg) -> VolumeMode {
    match m {
        VolumeModeArg::Exact => VolumeMode::Exact,
        VolumeModeArg::ClosedForm => VolumeMode::ClosedForm,
    }
}

pub fn volume_row(t: &mut Table, b: &sepsplit::split::VolumeBound) {
    t.push([
        b.n.to_string(),
        b.k.to_string(),
        match b.mode {
            VolumeMode::Exact => "exact",
            VolumeMode::ClosedForm => "closed-form",
        }
        .to_string(),
        b.collections.to_string(),
        b.max_volume.to_string(),
        b.argmax_size.to_string(),
        format!("{:.6}", b.value()),
        b.min_family_size().to_string(),
    ]);
}

pub fn parse_property(name: &str, n: Option<usize>) -> CliResult<Property> {
    let key = name.to_ascii_lowercase().replace('_', "-");
    let need_n = || need(n, "n");
    Ok(match key.as_str() {
        "separating" | "sep" => Property::Separating,
        "n-separating" | "nsep" => Property::NSeparating(need_n()?),
        "splitting" | "split" => Property::Splitting,
        "n-splitting" | "nsplit" => Property::NSplitting(need_n()?),
        _ => return Err(usage(format!("unknown property {name:?}"))),
    })
}

#[derive(Serialize)]
struct SearchDoc {
    objective: String,
    property: String,
    k: usize,
    value: usize,
    exhausted: bool,
    nodes: u64,
    certificate: Vec<Vec<usize>>,
}

pub fn search_doc(r: &SearchResult) -> serde_json::Value {
    serde_json::to_value(SearchDoc {
        objective: r.objective(),
        property: r.property.to_string(),
        k: r.k,
        value: r.value,
        exhausted: r.exhausted,
        nodes: r.nodes,
        certificate: r.certificate.iter().map(|a| a.elements()).collect(),
    })
    .expect("plain data serializes")
}

pub fn search(ctx: &Ctx, property: &str, p: &Params) -> CliResult<Outcome> {
    let prop = parse_property(property, p.n)?;
    let r = exact_min_family_size_with(prop, need(p.k, "k")?, &ctx.limits)?;
    let body = if ctx.json() {
        json(&search_doc(&r))
    } else {
        format!(
            "{}: {} ({}, {} nodes)\n{}",
            r.objective(),
            r.value,
            if r.exhausted { "exhausted" } else { "budget reached" },
            r.nodes,
            emit_family(&r.certificate, Format::Sets)?
        )
    };
    Ok(Outcome::ok(body))
}

pub fn check(ctx: &Ctx, what: CheckKind, p: &Params, families: usize, samples: usize) -> CliResult<Outcome> {
    let reports: Vec<VerdictReport> = match what {
        CheckKind::Implications => {
            let k = need(p.k, "k")?;
            let plan = StressPlan {
                families,
                seed: p.seed.unwrap_or(0),
            };
            implication_suite(k)
                .into_iter()
                .map(|kind| check_implication_with(kind, k, &plan, &ctx.limits))
                .collect::<Result<_, _>>()?
        }
        CheckKind::Identities => {
            let k = need(p.k, "k")?;
            match (p.s, p.t) {
                (Some(s), Some(t)) => vec![counting_identities_check(s, t, k)?],
                _ => identity_reports(k)?,
            }
        }
        CheckKind::ParityOracle => vec![parity_oracle(
            need(p.k, "k")?,
            samples,
            p.seed.unwrap_or(0),
            &ctx.limits,
        )?],
    };
    let failed = reports.iter().any(|r| !r.passed);
    let body = if ctx.json() {
        json(&reports)
    } else {
        reports.iter().map(|r| format!("{r}\n")).collect()
    };
    Ok(Outcome {
        body,
        code: u8::from(failed),
        note: None,
    })
}

/// Identity checks for every `(s, t)` at `k` with a supported parity and a valid overlap.
pub fn identity_reports(k: usize) -> CliResult<Vec<VerdictReport>> {
    let mut out = Vec::new();
    for s in 1..=k {
        for t in (2..=k).step_by(2) {
            match counting_identities_check(s, t, k) {
                Ok(r) => out.push(r),
                Err(sepsplit::Error::Domain(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

/// Parity rule, constructive splitter and brute force on random triples over `[k]`.
pub fn parity_oracle(k: usize, samples: usize, seed: u64, limits: &Limits) -> CliResult<VerdictReport> {
    let mut report = VerdictReport::new("parity-oracle", format!("k={k} samples={samples} seed={seed}"));
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let v: Vec<_> = (0..3).map(|_| random_subset(k, &mut rng)).collect();
        let brute = is_splittable_with(&SetCollection::new(v.clone())?, limits)?.is_some();
        let parity = triple_splittable_parity(&v[0], &v[1], &v[2])?;
        let built = build_triple_splitter(&v[0], &v[1], &v[2])?;
        report.instances += 1;
        if brute {
            report.premise_hits += 1;
        }
        let built_ok = match &built {
            Some(a) => v.iter().all(|b| splits(a, b).unwrap_or(false)),
            None => !brute,
        };
        if parity != brute || built.is_some() != brute || !built_ok {
            report.violation(format!("{} {} {}: brute={brute} parity={parity}", v[0], v[1], v[2]));
        }
    }
    Ok(report)
}
