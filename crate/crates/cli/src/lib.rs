//! Command implementations behind the `fispec` binary.
//!
//! Every command returns its output as a string together with a [`Status`];
//! the binary only prints and picks the exit code.

pub mod config;

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use fispec::fiset::Decomposition;
use fispec::multiplicity::{per_n_multiplicity, stable_from, stable_multiplicity};
use fispec::spectra::{analyze, consistency_check, Operator, SpectralReport, SpectrumOptions, SCHEMA_VERSION};
use fispec::{Caps, FISetSpec, Partition, PermutationGroup, ProductOutcome, RelationSpec};
use serde::{Deserialize, Serialize};

pub use config::{ConfigError, JobConfig};

pub const COMMANDS: &[&str] = &["eval", "orbits", "decompose", "multiplicities", "spectrum", "report"];

/// Window of consecutive agreeing degrees used by stability detection.
pub const WINDOW: usize = 3;

pub const DEFAULT_N_MAX: usize = 10;
pub const DEFAULT_LAMBDA_CUTOFF: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Undecided,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
            Status::Undecided => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub status: Status,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            status: Status::Success,
        }
    }
}

/// Lists `X_n` for a fiset, or the pairs of `R_n` as triplet CSV for a
/// relation (preceded by a `#` line holding the basis orderings as JSON).
pub fn cmd_eval(cfg: &JobConfig, name: &str, n: usize) -> Result<String> {
    let caps = &cfg.caps;
    if cfg.relations.contains_key(name) {
        let rel = cfg.relation(name)?;
        let (xs, ys) = rel.evaluate(n, caps)?;
        let ys = ys.unwrap_or_else(|| xs.clone());
        let target = if rel.is_self_relation() {
            rel.source()
        } else {
            rel.target()
        };
        let header = serde_json::json!({
            "degree": n,
            "rows": ys.elements().iter().map(|e| target.format_element(e)).collect::<Vec<_>>(),
            "cols": xs.elements().iter().map(|e| rel.source().format_element(e)).collect::<Vec<_>>(),
        });
        let matrix = rel.materialize_in(&xs, &ys, caps)?;
        return Ok(format!("# {header}\n{}", matrix.to_triplet_csv()));
    }
    let spec = cfg.fiset(name)?;
    let ev = spec.evaluate(n, caps)?;
    let labels = ev.orbit_labels(&spec);
    let mut out = String::new();
    for (e, k) in ev.elements().iter().zip(labels) {
        let _ = writeln!(out, "{}\torbit {k}", spec.format_element(e));
    }
    Ok(out)
}

/// Per-degree sizes, orbit counts and transition behaviour, with the
/// detected stable start.
pub fn cmd_orbits(cfg: &JobConfig, name: &str, n_max: usize) -> Result<Output> {
    let spec = cfg.fiset(name)?;
    let range = spec.detect_stable_range(n_max, WINDOW, &cfg.caps)?;
    let mut out = String::from("n\tsize\torbits\tinjective\torbit-bijective\n");
    let flag = |b: Option<bool>| b.map_or("-", |b| if b { "yes" } else { "no" });
    for o in &range.observations {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            o.n,
            o.size,
            o.orbit_count,
            flag(o.injective),
            flag(o.orbit_bijective)
        );
    }
    Ok(match range.start {
        Some(s) => Output::ok(format!("{out}stable from degree {s} (window {WINDOW})\n")),
        None => Output {
            text: format!("{out}undecided: no stable range found up to degree {n_max} (window {WINDOW})\n"),
            status: Status::Undecided,
        },
    })
}

/// `H` as `trivial`, `S_m`, or its generators.
pub fn subgroup_name(h: &PermutationGroup, caps: &Caps) -> Result<String> {
    let order = h.order(caps)?;
    let m = h.degree();
    Ok(if order == 1 {
        "trivial".into()
    } else if (1..=m).product::<usize>() == order {
        format!("S_{m}")
    } else {
        format!("<{}>", h.generator_strings().join(", "))
    })
}

fn describe(spec: &FISetSpec, d: &Decomposition, n_max: usize, caps: &Caps) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    match d.stable.start {
        Some(s) => lines.push(format!("stable from degree {s}")),
        None => lines.push(format!("undecided: no stable range found up to degree {n_max}")),
    }
    for (k, o) in d.orbits.iter().enumerate() {
        lines.push(match o {
            ProductOutcome::Found(o) => format!(
                "orbit {k}: (m={}, H={}) from degree {}, representative {}",
                o.m,
                subgroup_name(&o.h, caps)?,
                o.certified_from,
                spec.format_element(&o.representative)
            ),
            ProductOutcome::Absent => format!("orbit {k}: stabilizer is not of the form H x S_(n-m)"),
            ProductOutcome::Undecided(why) => format!("orbit {k}: undecided ({why})"),
        });
    }
    Ok(lines)
}

/// Orbit decomposition `X_n ≅ ⊔ S_n / (H_i × S_{n-m_i})`; undecided when
/// no stable range or some stabilizer could not be settled by `n_max`.
pub fn cmd_decompose(cfg: &JobConfig, name: &str, n_max: usize) -> Result<Output> {
    let spec = cfg.fiset(name)?;
    let d = spec.decompose(n_max, WINDOW, &cfg.caps)?;
    let mut text = describe(&spec, &d, n_max, &cfg.caps)?.join("\n");
    text.push('\n');
    Ok(Output {
        text,
        status: if d.is_certified() {
            Status::Success
        } else {
            Status::Undecided
        },
    })
}

/// One row of the multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub lambda: Partition,
    pub stable: u64,
    pub from: usize,
    /// Degrees at which the character computation was compared.
    pub checked: Vec<usize>,
}

/// Stable multiplicities for `|λ| ≤ cutoff`, each compared with the
/// character inner product at every degree from its stable start up to
/// `n_max`. A disagreement is an error naming `(λ, n)`.
pub fn multiplicity_table(spec: &FISetSpec, cutoff: usize, n_max: usize, caps: &Caps) -> Result<Vec<MultiplicityRow>> {
    let mut rows = Vec::new();
    for lambda in Partition::up_to(cutoff) {
        let stable = stable_multiplicity(spec, &lambda, caps)?;
        let from = stable_from(spec, &lambda, caps)?;
        let mut checked = Vec::new();
        for n in from..=n_max {
            let observed = per_n_multiplicity(spec, n, &lambda, caps)?;
            if observed != stable {
                bail!("multiplicity mismatch at lambda = {lambda}, n = {n}: stable value {stable}, character value {observed}");
            }
            checked.push(n);
        }
        if stable > 0 {
            rows.push(MultiplicityRow {
                lambda,
                stable,
                from,
                checked,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_multiplicities(cfg: &JobConfig, name: &str, cutoff: usize, n_max: usize) -> Result<String> {
    let spec = cfg.fiset(name)?;
    let rows = multiplicity_table(&spec, cutoff, n_max, &cfg.caps)?;
    let mut out = String::from("lambda\tstable\tchecked\n");
    for r in rows {
        let checked = match (r.checked.first(), r.checked.last()) {
            (Some(a), Some(b)) => format!("n={a}..{b}"),
            _ => format!("none (stable from {})", r.from),
        };
        let _ = writeln!(out, "{}\t{}\t{checked}", r.lambda, r.stable);
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct SpectrumFlags {
    /// First degree of the verification range.
    pub n: Option<usize>,
    /// Last degree of the verification range.
    pub n_max: Option<usize>,
    pub laplacian: bool,
    pub singular: bool,
    pub oracle_check: bool,
    /// A previously written spectrum document to check instead of
    /// recomputing.
    pub cached: Option<SpectrumDocument>,
}

/// The JSON written by `spectrum`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema: u32,
    pub relation: String,
    pub report: SpectralReport,
}

impl SpectrumDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpectrumDocument = serde_json::from_str(text).context("reading cached spectrum report")?;
        if doc.schema != SCHEMA_VERSION {
            bail!("cached report has schema {}, expected {SCHEMA_VERSION}", doc.schema);
        }
        Ok(doc)
    }
}

fn operator(rel: &RelationSpec, flags: &SpectrumFlags) -> Result<Operator> {
    match (flags.laplacian, flags.singular) {
        (true, true) => bail!("--laplacian and --singular are exclusive"),
        (true, false) => Ok(Operator::Laplacian),
        (false, true) => Ok(Operator::Gram),
        (false, false) if !rel.is_self_relation() => {
            bail!("relation between different fisets: use --singular")
        }
        (false, false) => Ok(Operator::Adjacency),
    }
}

/// The first two degrees past every stable start whose matrices fit under
/// the oracle cap.
pub fn oracle_degrees(report: &SpectralReport, caps: &Caps) -> Result<Vec<usize>> {
    let start = report
        .blocks
        .iter()
        .map(|b| b.valid_from)
        .chain([report.stable_start, report.distinct_from])
        .max()
        .unwrap_or(0);
    let size = |n: usize| report.cardinality.eval_int(n as i64).to_integer();
    let degrees: Vec<usize> = (start..)
        .take_while(|&n| size(n) <= caps.oracle_size.into())
        .take(2)
        .collect();
    if degrees.len() < 2 {
        bail!(
            "no two degrees from {start} fit under the oracle cap of {}",
            caps.oracle_size
        );
    }
    Ok(degrees)
}

/// Runs the spectral pipeline and returns the report as JSON. With
/// `oracle_check`, the report is compared with brute force at two degrees
/// and any disagreement fails the command.
pub fn cmd_spectrum(cfg: &JobConfig, name: &str, flags: &SpectrumFlags) -> Result<Output> {
    let rel = cfg.relation(name)?;
    let caps = &cfg.caps;
    let mut report = match &flags.cached {
        Some(doc) => {
            if doc.relation != name {
                bail!("cached report is for relation {:?}, not {name:?}", doc.relation);
            }
            if doc.report.caps != *caps {
                bail!("cached report was computed under different caps");
            }
            doc.report.clone()
        }
        None => {
            let verify = match (flags.n, flags.n_max) {
                (_, None) => None,
                (n, Some(n_max)) => {
                    let n = n.unwrap_or(0);
                    if n > n_max {
                        bail!("empty degree range {n}..{n_max}");
                    }
                    Some(n..=n_max)
                }
            };
            let opts = SpectrumOptions {
                operator: operator(&rel, flags)?,
                verify,
                oracle_degrees: Vec::new(),
            };
            analyze(&rel, &opts, caps).with_context(|| format!("spectrum of {name:?}"))?
        }
    };
    if flags.oracle_check {
        let degrees = oracle_degrees(&report, caps)?;
        report.oracle = degrees
            .iter()
            .map(|&n| consistency_check(&report, &rel, n, caps))
            .collect::<fispec::Result<_>>()?;
    }
    let failed = !report.is_verified();
    let doc = SpectrumDocument {
        schema: SCHEMA_VERSION,
        relation: name.to_string(),
        report,
    };
    Ok(Output {
        text: doc.to_json(),
        status: if failed { Status::Failed } else { Status::Success },
    })
}

/// Decomposition and multiplicities of every fiset and the spectrum of
/// every relation, as one JSON document.
pub fn cmd_report(cfg: &JobConfig, n_max: usize, cutoff: usize, oracle_check: bool) -> Result<Output> {
    let caps = &cfg.caps;
    let mut status = Status::Success;
    let mut fisets = Vec::new();
    for name in cfg.fisets.keys() {
        let spec = cfg.fiset(name)?;
        let d = spec.decompose(n_max, WINDOW, caps)?;
        if !d.is_certified() {
            status = Status::Undecided;
        }
        let rows = multiplicity_table(&spec, cutoff, n_max, caps)?;
        fisets.push(serde_json::json!({
            "name": name,
            "certified": d.is_certified(),
            "decomposition": describe(&spec, &d, n_max, caps)?,
            "multiplicities": rows,
        }));
    }
    let mut relations = Vec::new();
    for name in cfg.relations.keys() {
        let rel = cfg.relation(name)?;
        let flags = SpectrumFlags {
            singular: !rel.is_self_relation(),
            oracle_check,
            ..Default::default()
        };
        let out = cmd_spectrum(cfg, name, &flags)?;
        if out.status == Status::Failed {
            status = Status::Failed;
        }
        let doc = SpectrumDocument::from_json(&out.text)?;
        relations.push(serde_json::json!({ "name": name, "report": doc.report }));
    }
    let doc = serde_json::json!({
        "schema": SCHEMA_VERSION,
        "caps": caps,
        "n_max": n_max,
        "lambda_cutoff": cutoff,
        "fisets": fisets,
        "relations": relations,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| anyhow!(e))? + "\n";
    Ok(Output { text, status })
}
