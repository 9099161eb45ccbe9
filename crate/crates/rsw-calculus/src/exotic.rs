//! Admissible involutions, nonzero-degree witnesses and the degree-set
//! families used to separate exotic copies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::known_degree;
use crate::model::{RealFourManifold, RealSpinC};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExoticError {
    #[error("a0 is empty")]
    EmptyA0,
    #[error("a0 contains 0; degree sets must consist of positive integers")]
    ZeroInA0,
    #[error("A_{n} overflows u128")]
    Overflow { n: u32 },
    #[error("witness invalid: {0}")]
    InvalidWitness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdmissibleCase {
    Symplectic,
    SpinZeroSig,
    OddSW,
    CP2bar,
    SwapDouble,
}

impl fmt::Display for AdmissibleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityWitness {
    pub case: AdmissibleCase,
    pub witness_spinc: String,
    /// Sub-conditions that were checked and hold.
    pub notes: Vec<String>,
}

fn mod4_is_3(m: &RealFourManifold) -> bool {
    (m.b_plus_total as i64 - m.b1_total as i64).rem_euclid(4) == 3
}

fn half_index(m: &RealFourManifold) -> i64 {
    (m.b_plus_total as i64 - m.b1_total as i64 + 1) / 2
}

type Check = Result<Vec<String>, String>;

fn common(m: &RealFourManifold) -> Check {
    let mut bad = Vec::new();
    if m.b1_minus != 0 {
        bad.push(format!("b1_minus = {} (must be 0)", m.b1_minus));
    }
    if !m.has_nonisolated_fixed_point {
        bad.push("no non-isolated fixed point".to_string());
    }
    if bad.is_empty() {
        Ok(vec![
            "b1_minus = 0".into(),
            "non-isolated fixed point".into(),
        ])
    } else {
        Err(bad.join("; "))
    }
}

fn equalities(m: &RealFourManifold, s: &RealSpinC) -> Check {
    let h = half_index(m);
    if !mod4_is_3(m) {
        return Err(format!(
            "b_plus − b1 = {} is not 3 mod 4",
            m.b_plus_total as i64 - m.b1_total as i64
        ));
    }
    if s.d != h || m.b_plus_minus as i64 != h {
        return Err(format!(
            "d = {}, (b_plus − b1 + 1)/2 = {h}, b_plus_minus = {} are not all equal",
            s.d, m.b_plus_minus
        ));
    }
    Ok(vec![
        "b_plus − b1 ≡ 3 mod 4".into(),
        format!("d = (b_plus − b1 + 1)/2 = b_plus_minus = {h}"),
    ])
}

fn case_check(m: &RealFourManifold, s: &RealSpinC, case: AdmissibleCase) -> Check {
    match case {
        AdmissibleCase::Symplectic => {
            if !m.symplectic_antiinvariant {
                return Err("no anti-invariant symplectic form declared".into());
            }
            let mut ok = vec!["anti-invariant symplectic form".to_string()];
            ok.extend(equalities(m, s)?);
            Ok(ok)
        }
        AdmissibleCase::SpinZeroSig => {
            if !s.is_spin {
                return Err(format!("{} is not spin", s.name));
            }
            if m.signature != 0 {
                return Err(format!("signature = {}", m.signature));
            }
            Ok(vec!["spin".into(), "signature = 0".into()])
        }
        AdmissibleCase::OddSW => {
            let mut ok = equalities(m, s)?;
            match s.ordinary_sw_parity(m) {
                Some(true) => ok.push("ordinary SW odd".into()),
                Some(false) => return Err("ordinary SW even".into()),
                None => return Err("ordinary SW unknown".into()),
            }
            Ok(ok)
        }
        AdmissibleCase::CP2bar => {
            let ok =
                m.b1_total == 0 && m.b_plus_total == 0 && m.signature == -1 && m.b_plus_minus == 0;
            if !ok {
                return Err("not a rational homology CP2bar with b_plus_minus = 0".into());
            }
            if s.c_squared != -1 {
                return Err(format!("c² = {} (need −1)", s.c_squared));
            }
            Ok(vec![
                "b1 = b_plus = 0, signature = −1".into(),
                "b_plus_minus = 0".into(),
                "c² = −1".into(),
            ])
        }
        AdmissibleCase::SwapDouble => {
            let Some(n) = &m.swap_factor else {
                return Err("not declared as a factor swap".into());
            };
            if m.b1_total != 0 || m.b_plus_total != 0 {
                return Err(format!(
                    "b1 = {}, b_plus = {} (need 0, 0)",
                    m.b1_total, m.b_plus_total
                ));
            }
            if s.c_squared != m.signature {
                return Err(format!("c² = {} ≠ signature {}", s.c_squared, m.signature));
            }
            Ok(vec![
                format!("swap of {n} # {n}"),
                "b1 = b_plus = 0".into(),
                "c² = signature".into(),
            ])
        }
    }
}

const ORDER: [AdmissibleCase; 4] = [
    AdmissibleCase::SpinZeroSig,
    AdmissibleCase::OddSW,
    AdmissibleCase::CP2bar,
    AdmissibleCase::SwapDouble,
];

/// First admissibility case satisfied by some declared structure, or every
/// failure reason.
pub fn check_admissible(m: &RealFourManifold) -> Result<AdmissibilityWitness, Vec<String>> {
    let base = common(m).map_err(|e| vec![e])?;
    let mut reasons = Vec::new();
    if m.spinc.is_empty() {
        return Err(vec!["no Real spin^c structure declared".into()]);
    }
    if m.symplectic_antiinvariant && mod4_is_3(m) {
        for s in &m.spinc {
            if let Ok(mut notes) = case_check(m, s, AdmissibleCase::OddSW) {
                notes.splice(0..0, base.clone());
                notes.push("symplectic origin".into());
                return Ok(AdmissibilityWitness {
                    case: AdmissibleCase::OddSW,
                    witness_spinc: s.name.clone(),
                    notes,
                });
            }
        }
        for s in &m.spinc {
            if let Ok(mut notes) = case_check(m, s, AdmissibleCase::Symplectic) {
                notes.splice(0..0, base.clone());
                return Ok(AdmissibilityWitness {
                    case: AdmissibleCase::Symplectic,
                    witness_spinc: s.name.clone(),
                    notes,
                });
            }
        }
    }
    for case in ORDER {
        for s in &m.spinc {
            match case_check(m, s, case) {
                Ok(mut notes) => {
                    notes.splice(0..0, base.clone());
                    return Ok(AdmissibilityWitness {
                        case,
                        witness_spinc: s.name.clone(),
                        notes,
                    });
                }
                Err(r) => reasons.push(format!("{case} [{}]: {r}", s.name)),
            }
        }
    }
    Err(reasons)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeGuarantee {
    Odd,
    /// `deg = 2·SW_Z` with `SW_Z` odd.
    EvenNonzero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWitness {
    pub spinc: String,
    pub guarantee: DegreeGuarantee,
    pub note: String,
    /// `|deg_R|` when the record determines it.
    pub abs_degree: Option<u128>,
}

/// Which parity class the witness structure's degree falls in.
pub fn nonzero_degree_witness(
    m: &RealFourManifold,
    w: &AdmissibilityWitness,
) -> Result<DegreeWitness, ExoticError> {
    common(m).map_err(ExoticError::InvalidWitness)?;
    let s = m
        .spinc_named(&w.witness_spinc)
        .map_err(|e| ExoticError::InvalidWitness(e.to_string()))?;
    case_check(m, s, w.case)
        .map_err(|e| ExoticError::InvalidWitness(format!("{}: {e}", w.case)))?;
    let (guarantee, note) = match w.case {
        AdmissibleCase::SpinZeroSig => (
            DegreeGuarantee::Odd,
            "spin with signature 0: deg odd".to_string(),
        ),
        AdmissibleCase::CP2bar => (
            DegreeGuarantee::Odd,
            "d = 0, b_plus_minus = 0: deg odd".to_string(),
        ),
        AdmissibleCase::SwapDouble => (
            DegreeGuarantee::Odd,
            "factor swap with b_plus = d = 0: |deg| = 1".to_string(),
        ),
        AdmissibleCase::OddSW | AdmissibleCase::Symplectic if m.b_plus_minus == 0 => (
            DegreeGuarantee::Odd,
            "b_plus_minus = 0, d = 0: deg odd".to_string(),
        ),
        AdmissibleCase::OddSW | AdmissibleCase::Symplectic => (
            DegreeGuarantee::EvenNonzero,
            "deg = 2·SW_Z with SW_Z ≡ SW_R ≡ ordinary SW ≡ 1 mod 2".to_string(),
        ),
    };
    let abs_degree = known_degree(m, s)
        .and_then(|d| d.as_scalar())
        .and_then(|v| v.to_u128());
    if let Some(v) = abs_degree {
        let consistent = match guarantee {
            DegreeGuarantee::Odd => v % 2 == 1,
            DegreeGuarantee::EvenNonzero => v % 4 == 2,
        };
        if !consistent {
            return Err(ExoticError::InvalidWitness(format!(
                "declared |deg_r| = {v} contradicts {guarantee:?}"
            )));
        }
    }
    Ok(DegreeWitness {
        spinc: s.name.clone(),
        guarantee,
        note,
        abs_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub n1: u32,
    pub n2: u32,
    pub value: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoticFamilyReport {
    pub r: u32,
    pub a0: BTreeSet<u128>,
    pub rows: BTreeMap<u32, BTreeSet<u128>>,
    /// Pairwise disjointness of the rows, checked directly.
    pub distinct: bool,
    /// `max A_n < min A_{n+1}` for every `n`.
    pub bands: bool,
    pub witness_collisions: Vec<Collision>,
}

impl ExoticFamilyReport {
    /// Fixed-width table with columns `n`, `A_n`, `band-gap`.
    pub fn to_text(&self) -> String {
        let fmt_set =
            |s: &BTreeSet<u128>| s.iter().map(u128::to_string).collect::<Vec<_>>().join(",");
        let mut lines = vec![("n".to_string(), "A_n".to_string(), "band-gap".to_string())];
        let mut prev_max: Option<u128> = None;
        for (n, row) in &self.rows {
            let gap = match (prev_max, row.first()) {
                (Some(p), Some(lo)) if *lo > p => (lo - p).to_string(),
                (Some(p), Some(lo)) => format!("-{}", p - lo),
                _ => "-".to_string(),
            };
            lines.push((n.to_string(), fmt_set(row), gap));
            prev_max = row.last().copied();
        }
        let w0 = lines.iter().map(|l| l.0.len()).max().unwrap_or(0);
        let w1 = lines.iter().map(|l| l.1.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "r = {}  A_0 = {{{}}}", self.r, fmt_set(&self.a0));
        for (a, b, c) in &lines {
            let _ = writeln!(out, "{a:>w0$}  {b:<w1$}  {c}");
        }
        let _ = writeln!(out, "distinct = {}  bands = {}", self.distinct, self.bands);
        out
    }
}

/// `A_n = 3^{rn}·A_0` for `n ≤ n_max`, with `r` minimal such that `3^r > max A_0`.
pub fn exotic_family(a0: &BTreeSet<u128>, n_max: u32) -> Result<ExoticFamilyReport, ExoticError> {
    let max = *a0.last().ok_or(ExoticError::EmptyA0)?;
    if a0.contains(&0) {
        return Err(ExoticError::ZeroInA0);
    }
    let mut r = 1u32;
    while 3u128.checked_pow(r).ok_or(ExoticError::Overflow { n: 1 })? <= max {
        r += 1;
    }
    let mut rows: BTreeMap<u32, BTreeSet<u128>> = BTreeMap::new();
    for n in 0..=n_max {
        let scale = r
            .checked_mul(n)
            .and_then(|e| 3u128.checked_pow(e))
            .ok_or(ExoticError::Overflow { n })?;
        let row = a0
            .iter()
            .map(|a| a.checked_mul(scale).ok_or(ExoticError::Overflow { n }))
            .collect::<Result<_, _>>()?;
        rows.insert(n, row);
    }
    let mut witness_collisions = Vec::new();
    let mut seen: BTreeMap<u128, u32> = BTreeMap::new();
    for (n, row) in &rows {
        for v in row {
            match seen.get(v) {
                Some(first) => witness_collisions.push(Collision {
                    n1: *first,
                    n2: *n,
                    value: *v,
                }),
                None => {
                    seen.insert(*v, *n);
                }
            }
        }
    }
    let bands = rows
        .values()
        .zip(rows.values().skip(1))
        .all(|(a, b)| a.last() < b.first());
    Ok(ExoticFamilyReport {
        r,
        a0: a0.clone(),
        rows,
        distinct: witness_collisions.is_empty(),
        bands,
        witness_collisions,
    })
}

/// Nonzero `|deg_R|` values over the declared structures.
pub fn a0_from_manifold(m: &RealFourManifold) -> BTreeSet<u128> {
    m.spinc
        .iter()
        .filter_map(|s| known_degree(m, s))
        .filter_map(|d| d.as_scalar())
        .filter_map(|v| v.to_u128())
        .filter(|v| *v != 0)
        .collect()
}
