//! Command-line front end behind the `rsw` binary.
//!
//! Inputs are `.rswm.json` paths or catalog names. Reports go to stdout (or
//! `--output`), diagnostics to stderr. Exit status: 0 clean, 1 rule
//! violations, 2 input or precondition error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{
    check_identities, connected_sum, degree_relations, fiber_sum, localize_b1zero,
    localize_general, psc_rule, self_sum, spin_rule, wall_cross, OrdinaryData, RuleOutcome,
};
use crate::exotic::{a0_from_manifold, check_admissible, exotic_family, nonzero_degree_witness};
use crate::model::{self, table_get, Chamber, RealFourManifold, RealSpinC, Violation};

/// Environment variable naming a directory of `.rswm.json` files that
/// replaces the built-in catalog.
pub const CATALOG_ENV: &str = "RSW_CATALOG_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "rsw",
    version,
    about = "Real Seiberg–Witten invariant calculus"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Validate records and run every applicable rule.
    Check {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Largest identity index `j` checked.
        #[arg(long, default_value_t = 4)]
        j_max: u32,
        /// Largest table index `m` checked.
        #[arg(long, default_value_t = 8)]
        m_max: u32,
        /// Chamber containing the zero perturbation (PSC rule, b₊^{-σ} = 1).
        #[arg(long)]
        chamber: Option<Chamber>,
    },
    /// Equivariant connected sum.
    Sum {
        first: String,
        second: String,
        /// Spin^c structure of the first record (default: its first).
        #[arg(long)]
        spinc1: Option<String>,
        /// Spin^c structure of the second record (default: its first).
        #[arg(long)]
        spinc2: Option<String>,
        /// Chamber of the first summand.
        #[arg(long)]
        chamber: Option<Chamber>,
        /// Also save the resulting record as `.rswm.json`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Fiber sum along fixed tori of square zero.
    Fibersum {
        first: String,
        second: String,
        /// Spin^c structure of the first record (default: its first).
        #[arg(long)]
        spinc1: Option<String>,
        /// Spin^c structure of the second record (default: its first).
        #[arg(long)]
        spinc2: Option<String>,
        /// Also save the resulting record as `.rswm.json`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// `X # X` with the swap, from ordinary data of `X` (JSON file).
    Selfsum {
        input: PathBuf,
        /// Also save the resulting record as `.rswm.json`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Other chamber's table from the stored one.
    Wallcross {
        input: String,
        /// Spin^c structure to use (default: the first).
        #[arg(long)]
        spinc: Option<String>,
        /// Source chamber.
        #[arg(long, default_value = "negative")]
        chamber: Chamber,
    },
    /// Ordinary invariants from Real ones by localization.
    Localize {
        input: String,
        /// Spin^c structure to use (default: the first).
        #[arg(long)]
        spinc: Option<String>,
        /// Ordinary index; defaults to Δ/2 (or 0).
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        /// Known Real values, `s0=1,s1=0` (or `1` when b₁ = 0); missing ones are unknowns.
        #[arg(long)]
        swr: Option<String>,
        /// Chamber whose stored table supplies the Real value (b₁ = 0, no `--swr`).
        #[arg(long)]
        chamber: Option<Chamber>,
    },
    /// Admissibility case and nonzero-degree witness.
    Admissible { input: String },
    /// Degree-set family `A_n = 3^{rn}·A_0`.
    ExoticFamily {
        /// Comma-separated positive degrees forming `A_0`.
        #[arg(long, value_delimiter = ',', required_unless_present = "from")]
        a0: Vec<u128>,
        /// Take `A_0` from the declared degrees of a record.
        #[arg(long, conflicts_with = "a0")]
        from: Option<String>,
        /// Largest family index.
        #[arg(long, default_value_t = 20)]
        n: u32,
    },
    /// List the catalog, print one entry, or dump all entries to a directory.
    Catalog {
        names: Vec<String>,
        /// Write every catalog record into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

/// Input or precondition failure; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input_err(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

/// A rule outcome together with the structure it was evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinc: Option<String>,
    #[serde(flatten)]
    pub outcome: RuleOutcome,
}

/// Report section for one subject.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub subject: String,
    pub outcomes: Vec<Entry>,
    /// Every violation found, structural ones first.
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip)]
    pub text: Option<String>,
}

impl Section {
    fn new(subject: impl Into<String>) -> Self {
        Section {
            subject: subject.into(),
            ..Default::default()
        }
    }

    fn push(&mut self, o: RuleOutcome) {
        self.push_for(None, o);
    }

    fn push_for(&mut self, spinc: Option<&str>, o: RuleOutcome) {
        self.violations.extend(o.violations.iter().cloned());
        self.outcomes.push(Entry {
            spinc: spinc.map(str::to_string),
            outcome: o,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn violation_count(&self) -> usize {
        self.sections.iter().map(|s| s.violations.len()).sum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "# {} {}", self.verb, s.subject);
            let mut rows: Vec<(String, String, String)> = Vec::new();
            for e in &s.outcomes {
                let o = &e.outcome;
                let label = match &e.spinc {
                    Some(n) => format!("{} [{n}]", o.rule),
                    None => o.rule.clone(),
                };
                for (k, v) in &o.assignments {
                    rows.push((label.clone(), k.clone(), v.to_string()));
                }
                for r in &o.relations {
                    rows.push((label.clone(), "relation".into(), r.text.clone()));
                }
                for n in &o.notes {
                    rows.push((label.clone(), "note".into(), n.clone()));
                }
            }
            let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
            let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
            for (a, b, c) in &rows {
                let _ = writeln!(out, "  {a:<w0$}  {b:<w1$}  {c}");
            }
            match &s.text {
                Some(t) => {
                    for line in t.lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                None => {
                    if let Some(v) = &s.result {
                        let mut lines = Vec::new();
                        flatten(v, "", &mut lines);
                        let w = lines.iter().map(|l| l.0.chars().count()).max().unwrap_or(0);
                        for (k, v) in lines {
                            let _ = writeln!(out, "  {k:<w$}  {v}");
                        }
                    }
                }
            }
            let _ = writeln!(out, "  violations: {}", s.violations.len());
            for v in &s.violations {
                let _ = writeln!(out, "    {v}");
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Dotted-key lines for the text report; embedded records are left to JSON.
fn flatten(v: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) if map.is_empty() => out.push((prefix.to_string(), "{}".into())),
        Value::Object(map) => {
            for (k, x) in map {
                if k != "manifold" {
                    flatten(x, &key(k), out);
                }
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), parts.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &key(&i.to_string()), out);
            }
        }
        _ => out.push((prefix.to_string(), scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

// Loading and saving.

pub fn load(path: &Path) -> Result<RealFourManifold, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    RealFourManifold::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn save(m: &RealFourManifold, path: &Path) -> Result<(), InputError> {
    std::fs::write(path, m.to_json()).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn save_report(r: &Report, format: Format, path: &Path) -> Result<(), InputError> {
    std::fs::write(path, r.render(format))
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_ordinary(path: &Path) -> Result<OrdinaryData, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        InputError(format!(
            "{}: schema error at /{}: {}",
            path.display(),
            e.path(),
            e.inner()
        ))
    })
}

/// Entries of `RSW_CATALOG_DIR` when set, else the built-in catalog.
pub fn catalog() -> Result<Vec<RealFourManifold>, InputError> {
    let Some(dir) = std::env::var_os(CATALOG_ENV) else {
        return Ok(model::catalog());
    };
    let dir = PathBuf::from(dir);
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| InputError(format!("{CATALOG_ENV}={}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".rswm.json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

/// A path when one exists, otherwise a catalog name.
pub fn resolve(input: &str) -> Result<RealFourManifold, InputError> {
    let path = Path::new(input);
    if path.is_file() {
        return load(path);
    }
    if std::env::var_os(CATALOG_ENV).is_none() {
        if let Some(m) = model::catalog_entry(input) {
            return Ok(m);
        }
    }
    catalog()?
        .into_iter()
        .find(|m| m.name == input)
        .ok_or_else(|| {
            InputError(format!(
                "{input:?} is neither a readable file nor a catalog name"
            ))
        })
}

fn pick<'a>(m: &'a RealFourManifold, name: &Option<String>) -> Result<&'a RealSpinC, InputError> {
    match name {
        Some(n) => m.spinc_named(n).map_err(input_err),
        None => m
            .spinc
            .first()
            .ok_or_else(|| InputError(format!("{} declares no Real spin^c structure", m.name))),
    }
}

fn structural(m: &RealFourManifold, section: &mut Section) -> bool {
    let v = model::validate(m);
    let ok = v.is_empty();
    section.violations.extend(v);
    ok
}

// Verbs.

/// All rules that apply to one record.
pub fn check_manifold(
    m: &RealFourManifold,
    j_max: u32,
    m_max: u32,
    zero_chamber: Option<Chamber>,
) -> Section {
    let mut sec = Section::new(m.name.clone());
    if !structural(m, &mut sec) {
        return sec;
    }
    for s in &m.spinc {
        let mut ids = RuleOutcome::new("check_identities");
        ids.violations = check_identities(s, m.b1_minus, j_max, m_max);
        for v in &mut ids.violations {
            v.locus = format!("{}: {}", s.name, v.locus);
        }
        let name = Some(s.name.as_str());
        sec.push_for(name, ids);
        sec.push_for(name, degree_relations(m, s));
        if s.is_spin {
            if let Ok(o) = spin_rule(m, s) {
                sec.push_for(name, o);
            }
        }
        if m.psc_invariant_metric {
            sec.push_for(name, psc_rule(m, s, zero_chamber));
        }
    }
    sec
}

fn summary(m: &RealFourManifold, s: &RealSpinC) -> Value {
    let tables: BTreeMap<String, BTreeMap<String, String>> = s
        .sw_mod2
        .iter()
        .map(|(ch, t)| {
            (
                ch.to_string(),
                t.iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "name": m.name,
        "spinc": s.name,
        "b1_total": m.b1_total,
        "b_plus_total": m.b_plus_total,
        "b_plus_minus": m.b_plus_minus,
        "signature": m.signature,
        "d": s.d,
        "sw_mod2": tables,
        "sw_int": s.sw_int.as_ref().map(|c| c.to_string()),
        "deg_r": s.deg_r.as_ref().map(|c| c.to_string()),
    })
}

fn finish_sum(
    m: RealFourManifold,
    s: &RealSpinC,
    subject: String,
    emit: &Option<PathBuf>,
) -> Result<Section, InputError> {
    let mut sec = check_manifold(&m, 4, 8, None);
    sec.subject = subject;
    sec.result = Some(json!({ "summary": summary(&m, s), "manifold": m }));
    if let Some(p) = emit {
        save(&m, p)?;
    }
    Ok(sec)
}

fn parse_swr(text: &str, b1: u32) -> Result<BTreeMap<u64, bool>, InputError> {
    let mut out = BTreeMap::new();
    let bit = |v: &str| match v.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(InputError(format!("--swr: value {other:?} is not 0 or 1"))),
    };
    if b1 == 0 && !text.contains('=') {
        out.insert(0, bit(text)?);
        return Ok(out);
    }
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| InputError(format!("--swr: {part:?} is not s<bits>=<0|1>")))?;
        let bits = k
            .trim()
            .strip_prefix('s')
            .ok_or_else(|| InputError(format!("--swr: {k:?} must start with 's'")))?;
        if bits.len() != b1 as usize || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(InputError(format!(
                "--swr: {k:?} needs exactly {b1} binary digits"
            )));
        }
        let eps = bits
            .chars()
            .enumerate()
            .fold(0u64, |acc, (i, c)| acc | (u64::from(c == '1') << i));
        out.insert(eps, bit(v)?);
    }
    Ok(out)
}

fn localize_section(
    m: &RealFourManifold,
    s: &RealSpinC,
    mm: Option<i64>,
    swr: &Option<String>,
    chamber: Option<Chamber>,
) -> Result<Section, InputError> {
    let b1 = m.b1_total;
    let big_delta = 2 * s.d - m.b_plus_total as i64 + b1 as i64 - 1;
    let mm = mm.unwrap_or(if big_delta >= 0 && big_delta % 2 == 0 {
        big_delta / 2
    } else {
        0
    });
    let known = match swr {
        Some(t) => parse_swr(t, b1)?,
        None if b1 == 0 => {
            let ch = chamber.unwrap_or(Chamber::default_for(m.b_plus_minus));
            let delta = s.d - m.b_plus_minus as i64;
            match s.sw_mod2.get(&ch) {
                Some(t) => [(0, table_get(t, delta, 0).constant_term())]
                    .into_iter()
                    .collect(),
                None => BTreeMap::new(),
            }
        }
        None => BTreeMap::new(),
    };
    let loc = localize_general(m, s, &known, mm).map_err(input_err)?;
    let mut sec = Section::new(format!("{} [{}] m={mm}", m.name, s.name));
    let shown: BTreeMap<&String, String> = loc
        .evidence
        .iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect();
    let mut result = json!({
        "evidence": shown,
        "total": loc.total.as_ref().map(|c| c.to_string()),
        "ordinary": loc.ordinary.as_ref().map(|c| c.to_string()),
    });
    if b1 == 0 {
        if let Some(v) = known.get(&0) {
            let b = localize_b1zero(m.b_plus_total, m.b_plus_inv().max(0) as u32, *v);
            result["b1zero"] = json!(b);
        }
    }
    sec.push_for(Some(&s.name), loc.outcome);
    sec.result = Some(result);
    Ok(sec)
}

fn exotic_section(a0: &BTreeSet<u128>, n: u32, subject: String) -> Result<Section, InputError> {
    let rep = exotic_family(a0, n).map_err(input_err)?;
    let mut sec = Section::new(subject);
    let mut o = RuleOutcome::new("exotic_family");
    if !rep.bands {
        o.violations.push(Violation::new(
            "exotic_family",
            "bands",
            "max A_n ≥ min A_{n+1} for some n",
        ));
    }
    for c in &rep.witness_collisions {
        o.violations.push(Violation::new(
            "exotic_family",
            format!("A_{} ∩ A_{}", c.n1, c.n2),
            format!("{} in both", c.value),
        ));
    }
    sec.push(o);
    sec.text = Some(rep.to_text());
    sec.result = Some(serde_json::to_value(&rep).expect("report serializes"));
    Ok(sec)
}

/// Executes one parsed command.
pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let (verb, sections) = match &cli.verb {
        Verb::Check {
            inputs,
            j_max,
            m_max,
            chamber,
        } => {
            let ms = inputs
                .iter()
                .map(|i| resolve(i))
                .collect::<Result<Vec<_>, _>>()?;
            (
                "check",
                ms.iter()
                    .map(|m| check_manifold(m, *j_max, *m_max, *chamber))
                    .collect(),
            )
        }
        Verb::Sum {
            first,
            second,
            spinc1,
            spinc2,
            chamber,
            emit,
        } => {
            let (a, b) = (resolve(first)?, resolve(second)?);
            let (sa, sb) = (pick(&a, spinc1)?, pick(&b, spinc2)?);
            let ch = chamber.unwrap_or(Chamber::default_for(a.b_plus_minus));
            let (m, s) = connected_sum(&a, &b, sa, sb, ch).map_err(input_err)?;
            (
                "sum",
                vec![finish_sum(m, &s, format!("{first} # {second}"), emit)?],
            )
        }
        Verb::Fibersum {
            first,
            second,
            spinc1,
            spinc2,
            emit,
        } => {
            let (a, b) = (resolve(first)?, resolve(second)?);
            let (sa, sb) = (pick(&a, spinc1)?, pick(&b, spinc2)?);
            let (m, s) = fiber_sum(&a, &b, sa, sb).map_err(input_err)?;
            (
                "fibersum",
                vec![finish_sum(m, &s, format!("{first} #f {second}"), emit)?],
            )
        }
        Verb::Selfsum { input, emit } => {
            let x = load_ordinary(input)?;
            let (m, s) = self_sum(&x).map_err(input_err)?;
            (
                "selfsum",
                vec![finish_sum(m, &s, format!("{} # {}", x.name, x.name), emit)?],
            )
        }
        Verb::Wallcross {
            input,
            spinc,
            chamber,
        } => {
            let m = resolve(input)?;
            let s = pick(&m, spinc)?;
            let mut sec = Section::new(format!("{} [{}]", m.name, s.name));
            if m.b_plus_minus != 1 {
                return Err(InputError(format!(
                    "{}: wall-crossing needs b_plus_minus = 1",
                    m.name
                )));
            }
            let src = s
                .sw_mod2
                .get(chamber)
                .ok_or_else(|| InputError(format!("{}: no {chamber} table stored", s.name)))?;
            let other = wall_cross(src, s.d, &s.minus_dr).map_err(input_err)?;
            let target = chamber.opposite();
            let mut o = RuleOutcome::new("wall_cross");
            if let Some(stored) = s.sw_mod2.get(&target) {
                for k in other
                    .keys()
                    .chain(stored.keys())
                    .copied()
                    .collect::<BTreeSet<_>>()
                {
                    let (a, b) = (
                        table_get(&other, k as i64, s.beta()),
                        table_get(stored, k as i64, s.beta()),
                    );
                    if a != b {
                        o.violations.push(Violation::new(
                            "wall_cross",
                            format!("sw_mod2.{target}.{k}"),
                            format!("formula gives {a}, stored {b}"),
                        ));
                    }
                }
            }
            sec.push(o);
            let shown: BTreeMap<u32, String> =
                other.iter().map(|(k, v)| (*k, v.to_string())).collect();
            sec.result = Some(json!({ "chamber": target, "sw_mod2": shown }));
            ("wallcross", vec![sec])
        }
        Verb::Localize {
            input,
            spinc,
            m,
            swr,
            chamber,
        } => {
            let man = resolve(input)?;
            let s = pick(&man, spinc)?;
            (
                "localize",
                vec![localize_section(&man, s, *m, swr, *chamber)?],
            )
        }
        Verb::Admissible { input } => {
            let m = resolve(input)?;
            let mut sec = Section::new(m.name.clone());
            let mut o = RuleOutcome::new("check_admissible");
            match check_admissible(&m) {
                Ok(w) => {
                    let d = nonzero_degree_witness(&m, &w).map_err(input_err)?;
                    sec.result = Some(json!({ "admissible": true, "witness": w, "degree": d }));
                }
                Err(reasons) => {
                    o.notes = reasons.clone();
                    sec.result = Some(json!({ "admissible": false, "reasons": reasons }));
                }
            }
            sec.push(o);
            ("admissible", vec![sec])
        }
        Verb::ExoticFamily { a0, from, n } => {
            let (set, subject): (BTreeSet<u128>, String) = match from {
                Some(f) => {
                    let m = resolve(f)?;
                    (a0_from_manifold(&m), format!("A_0 from {}", m.name))
                }
                None => {
                    let set: BTreeSet<u128> = a0.iter().copied().collect();
                    let s = set
                        .iter()
                        .map(u128::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    (set, format!("A_0 = {{{s}}}"))
                }
            };
            ("exotic-family", vec![exotic_section(&set, *n, subject)?])
        }
        Verb::Catalog { .. } => unreachable!("handled in run"),
    };
    Ok(Report {
        verb: verb.to_string(),
        sections,
    })
}

fn catalog_verb(
    names: &[String],
    dump: &Option<PathBuf>,
    format: Format,
) -> Result<String, InputError> {
    let all = catalog()?;
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
        for m in &all {
            save(m, &dir.join(format!("{}.rswm.json", m.name)))?;
        }
    }
    if !names.is_empty() {
        let ms = names
            .iter()
            .map(|n| resolve(n))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(ms.iter().map(RealFourManifold::to_json).collect());
    }
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = all
                .iter()
                .map(|m| {
                    json!({
                        "name": m.name,
                        "b1_total": m.b1_total,
                        "b_plus_total": m.b_plus_total,
                        "signature": m.signature,
                        "b_plus_minus": m.b_plus_minus,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let w = all.iter().map(|m| m.name.len()).max().unwrap_or(4).max(4);
            let mut s = format!("{:<w$}  b1  b+  sig  b+^-\n", "name");
            for m in &all {
                let _ = writeln!(
                    s,
                    "{:<w$}  {:>2}  {:>2}  {:>3}  {:>4}",
                    m.name, m.b1_total, m.b_plus_total, m.signature, m.b_plus_minus
                );
            }
            s
        }
    })
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_INPUT,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let emit = |text: String, stdout: &mut dyn Write, stderr: &mut dyn Write| -> bool {
        match &cli.output {
            Some(p) => match std::fs::write(p, text) {
                Ok(()) => true,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {}: {e}", p.display());
                    false
                }
            },
            None => stdout.write_all(text.as_bytes()).is_ok(),
        }
    };
    if let Verb::Catalog { names, dump } = &cli.verb {
        return match catalog_verb(names, dump, cli.format) {
            Ok(text) => {
                if emit(text, stdout, stderr) {
                    EXIT_OK
                } else {
                    EXIT_INPUT
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_INPUT
            }
        };
    }
    match execute(&cli) {
        Ok(report) => {
            let n = report.violation_count();
            if !emit(report.render(cli.format), stdout, stderr) {
                return EXIT_INPUT;
            }
            if n > 0 {
                let _ = writeln!(stderr, "{n} violation(s)");
                EXIT_VIOLATIONS
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
