//! Numeric data for a 4-manifold with involution and its Real spin^c
//! structures, structural validation, and the built-in catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charclass::VirtualBundle;
use crate::ring::{Mod2Class, UpToSignClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("c² − σ = {0} is not divisible by 8")]
    NotCharacteristic(i64),
    #[error("{0} Real structures requested with b1_minus = {1}; the fixed set of the Jacobian involution is not a finite set of points")]
    Unsupported(&'static str, u32),
    #[error("no Real spin^c structure named {0:?}")]
    UnknownSpinc(String),
}

/// Chamber tag for invariants that depend on a perturbation chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chamber {
    Positive,
    Negative,
    Unique,
}

impl Chamber {
    pub fn default_for(b_plus_minus: u32) -> Self {
        if b_plus_minus == 1 {
            Chamber::Positive
        } else {
            Chamber::Unique
        }
    }

    pub fn allowed_for(self, b_plus_minus: u32) -> bool {
        (self == Chamber::Unique) == (b_plus_minus != 1)
    }

    pub fn opposite(self) -> Self {
        match self {
            Chamber::Positive => Chamber::Negative,
            Chamber::Negative => Chamber::Positive,
            Chamber::Unique => Chamber::Unique,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Chamber::Positive => "positive",
            Chamber::Negative => "negative",
            Chamber::Unique => "unique",
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Chamber {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "positive" | "+" => Ok(Chamber::Positive),
            "negative" | "-" => Ok(Chamber::Negative),
            "unique" => Ok(Chamber::Unique),
            _ => Err(format!(
                "unknown chamber {s:?} (expected positive, negative or unique)"
            )),
        }
    }
}

/// Invariants indexed by `m`. A stored table is complete: a missing `m` is zero.
pub type SwTable = BTreeMap<u32, Mod2Class>;

pub fn table_get(t: &SwTable, m: i64, beta: u32) -> Mod2Class {
    u32::try_from(m)
        .ok()
        .and_then(|m| t.get(&m))
        .cloned()
        .unwrap_or_else(|| Mod2Class::zero(beta))
}

/// Drops zero entries so equal tables compare equal.
pub fn normalize_table(t: SwTable) -> SwTable {
    t.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// One Real spin^c structure. Optional invariants are unknown when `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealSpinC {
    pub name: String,
    pub c_squared: i64,
    pub d: i64,
    pub is_spin: bool,
    pub w1_dr_zero: bool,
    pub minus_dr: VirtualBundle,
    #[serde(default)]
    pub sw_mod2: BTreeMap<Chamber, SwTable>,
    #[serde(default)]
    pub sw_int: Option<UpToSignClass>,
    #[serde(default)]
    pub deg_r: Option<UpToSignClass>,
    #[serde(default)]
    pub ordinary_sw_mod2: Option<SwTable>,
    #[serde(default)]
    pub ordinary_sw_int: Option<i64>,
}

impl RealSpinC {
    /// Structure with no invariants recorded and `−D_R` stably trivial.
    pub fn bare(
        name: &str,
        c_squared: i64,
        signature: i64,
        beta: u32,
        is_spin: bool,
    ) -> Result<Self, ModelError> {
        let d = derive_d(c_squared, signature)?;
        Ok(RealSpinC {
            name: name.to_string(),
            c_squared,
            d,
            is_spin,
            w1_dr_zero: true,
            minus_dr: VirtualBundle::trivial(beta, -d),
            sw_mod2: BTreeMap::new(),
            sw_int: None,
            deg_r: None,
            ordinary_sw_mod2: None,
            ordinary_sw_int: None,
        })
    }

    pub fn beta(&self) -> u32 {
        self.minus_dr.beta()
    }

    /// Ordinary pure invariant mod 2, from whichever ordinary datum is present.
    pub fn ordinary_sw_parity(&self, m: &RealFourManifold) -> Option<bool> {
        if let Some(v) = self.ordinary_sw_int {
            return Some(v.rem_euclid(2) == 1);
        }
        let t = self.ordinary_sw_mod2.as_ref()?;
        let delta = 2 * self.d - m.b_plus_total as i64 + m.b1_total as i64 - 1;
        if delta < 0 || delta % 2 != 0 {
            return Some(false);
        }
        Some(table_get(t, delta / 2, m.b1_total).pushforward_top())
    }
}

/// A closed oriented 4-manifold with involution, as seen through its Betti
/// numbers, signature, fixed-set flags and Real spin^c data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFourManifold {
    pub name: String,
    pub b1_total: u32,
    pub b_plus_total: u32,
    pub signature: i64,
    pub b1_minus: u32,
    pub b_plus_minus: u32,
    pub has_nonisolated_fixed_point: bool,
    pub fixed_set_connected: bool,
    pub fixed_torus_selfint_zero: bool,
    pub psc_invariant_metric: bool,
    pub symplectic_antiinvariant: bool,
    /// Name of `N` when this record is `N # N` with the factor-swapping involution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap_factor: Option<String>,
    pub spinc: Vec<RealSpinC>,
}

impl RealFourManifold {
    /// `b₊^σ`; negative only for invalid records.
    pub fn b_plus_inv(&self) -> i64 {
        self.b_plus_total as i64 - self.b_plus_minus as i64
    }

    pub fn beta(&self) -> u32 {
        self.b1_minus
    }

    pub fn spinc_named(&self, name: &str) -> Result<&RealSpinC, ModelError> {
        self.spinc
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| ModelError::UnknownSpinc(name.to_string()))
    }

    /// Parses a `.rswm.json` document, reporting the JSON pointer of the first error.
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let m: RealFourManifold =
            serde_path_to_error::deserialize(de).map_err(|e| SchemaError {
                pointer: json_pointer(e.path()),
                message: e.inner().to_string(),
            })?;
        Ok(m)
    }

    /// Canonical pretty JSON with trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at {pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// A failed rule: which rule, where, and what was found.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Violation {
    pub rule: String,
    pub locus: String,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: &str, locus: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            rule: rule.to_string(),
            locus: locus.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.rule, self.locus, self.detail)
    }
}

pub fn derive_d(c_squared: i64, signature: i64) -> Result<i64, ModelError> {
    let diff = c_squared - signature;
    if diff.rem_euclid(8) != 0 {
        return Err(ModelError::NotCharacteristic(diff));
    }
    Ok(diff / 8)
}

/// `d − b₊^{-σ} + b₁^{-σ}`.
pub fn moduli_dimension(m: &RealFourManifold, s: &RealSpinC) -> i64 {
    s.d - m.b_plus_minus as i64 + m.b1_minus as i64
}

/// `2^{b₁}` Real structures on a fixed spin^c structure when `b₁^{-σ} = 0`.
pub fn count_real_structures(m: &RealFourManifold) -> Result<u128, ModelError> {
    if m.b1_minus > 0 {
        return Err(ModelError::Unsupported("counting", m.b1_minus));
    }
    if m.b1_total >= 128 {
        return Err(ModelError::Unsupported("counting beyond u128", m.b1_minus));
    }
    Ok(1u128 << m.b1_total)
}

pub const RULE_NONISOLATED: &str = "Real spin^c requires non-isolated fixed point";

/// All structural violations; empty when the record is well formed.
pub fn validate(m: &RealFourManifold) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad =
        |rule: &str, locus: String, detail: String| out.push(Violation::new(rule, locus, detail));

    if m.b1_minus > m.b1_total {
        bad(
            "betti bounds",
            "b1_minus".into(),
            format!(
                "b1_minus = {} exceeds b1_total = {}",
                m.b1_minus, m.b1_total
            ),
        );
    }
    if m.b1_minus > crate::ring::MAX_BETA {
        bad(
            "betti bounds",
            "b1_minus".into(),
            format!(
                "b1_minus = {} exceeds {}",
                m.b1_minus,
                crate::ring::MAX_BETA
            ),
        );
    }
    if m.b_plus_minus > m.b_plus_total {
        bad(
            "betti bounds",
            "b_plus_minus".into(),
            format!(
                "b_plus_minus = {} exceeds b_plus_total = {}",
                m.b_plus_minus, m.b_plus_total
            ),
        );
    }
    if m.signature > m.b_plus_total as i64 {
        bad(
            "signature bound",
            "signature".into(),
            format!(
                "signature {} exceeds b_plus_total {}",
                m.signature, m.b_plus_total
            ),
        );
    }
    if !m.spinc.is_empty() && !m.has_nonisolated_fixed_point {
        bad(
            RULE_NONISOLATED,
            "has_nonisolated_fixed_point".into(),
            "spinc list is nonempty but the fixed set has no non-isolated point".into(),
        );
    }
    let mut names = BTreeSet::new();
    for (i, s) in m.spinc.iter().enumerate() {
        let at = |f: &str| format!("spinc[{i}].{f}");
        if !names.insert(s.name.as_str()) {
            bad(
                "unique spinc names",
                at("name"),
                format!("duplicate name {:?}", s.name),
            );
        }
        spinc_violations(m, s, &at, &mut bad);
    }
    out
}

fn spinc_violations(
    m: &RealFourManifold,
    s: &RealSpinC,
    at: &dyn Fn(&str) -> String,
    bad: &mut dyn FnMut(&str, String, String),
) {
    let beta = m.b1_minus;
    let bpm = m.b_plus_minus as i64;
    match derive_d(s.c_squared, m.signature) {
        Ok(d) if d != s.d => bad(
            "d = (c² − σ)/8",
            at("d"),
            format!("stored d = {} but (c² − σ)/8 = {d}", s.d),
        ),
        Ok(_) => {}
        Err(e) => bad("d = (c² − σ)/8", at("c_squared"), e.to_string()),
    }
    if s.is_spin && s.c_squared != 0 {
        bad(
            "spin implies c² = 0",
            at("c_squared"),
            format!("c_squared = {} on a spin structure", s.c_squared),
        );
    }
    if s.minus_dr.beta() != beta {
        bad(
            "class lives on Jac_R",
            at("minus_dr.total.beta"),
            format!("beta {} but b1_minus = {beta}", s.minus_dr.beta()),
        );
    }
    if s.minus_dr.rank() != -s.d {
        bad(
            "rank(−D_R) = −d",
            at("minus_dr.rank"),
            format!("rank {} but d = {}", s.minus_dr.rank(), s.d),
        );
    }
    if s.w1_dr_zero != s.minus_dr.w(1).is_zero() {
        bad(
            "w1_dr_zero matches −D_R",
            at("w1_dr_zero"),
            format!(
                "flag is {} but w1(−D_R) = {}",
                s.w1_dr_zero,
                s.minus_dr.w(1)
            ),
        );
    }
    if bpm == 0 && !s.sw_mod2.is_empty() {
        bad(
            "mod-2 invariants need b₊^{-σ} > 0",
            at("sw_mod2"),
            "b_plus_minus = 0".into(),
        );
    }
    for (ch, table) in &s.sw_mod2 {
        if !ch.allowed_for(m.b_plus_minus) {
            bad(
                "chamber tag",
                at(&format!("sw_mod2.{ch}")),
                format!("chamber {ch} not permitted when b_plus_minus = {bpm}"),
            );
        }
        for (k, c) in table {
            let locus = at(&format!("sw_mod2.{ch}.{k}"));
            if c.beta() != beta {
                bad(
                    "class lives on Jac_R",
                    locus.clone(),
                    format!("beta {} but b1_minus = {beta}", c.beta()),
                );
            }
            let deg = *k as i64 - (s.d - bpm);
            if !c.is_homogeneous_of(deg) {
                bad(
                    "SW_{R,m} has degree m − (d − b₊^{-σ})",
                    locus,
                    format!("class {c} is not homogeneous of degree {deg}"),
                );
            }
        }
    }
    let int_deg = bpm - s.d;
    for (field, v) in [("sw_int", &s.sw_int), ("deg_r", &s.deg_r)] {
        if let Some(c) = v {
            if c.beta() != beta {
                bad(
                    "class lives on Jac_R",
                    at(field),
                    format!("beta {} but b1_minus = {beta}", c.beta()),
                );
            }
            if !c.is_homogeneous_of(int_deg) {
                bad(
                    "integer invariants have degree b₊^{-σ} − d",
                    at(field),
                    format!("class {c} is not homogeneous of degree {int_deg}"),
                );
            }
            if !s.w1_dr_zero {
                bad(
                    "integer invariants need w₁(D_R) = 0",
                    at(field),
                    "w1_dr_zero is false".into(),
                );
            }
        }
    }
    if s.sw_int.is_some() {
        if bpm == 0 {
            bad(
                "integer SW needs b₊^{-σ} > 0",
                at("sw_int"),
                "b_plus_minus = 0".into(),
            );
        }
        if s.d % 2 != 0 {
            bad(
                "integer SW needs even d",
                at("sw_int"),
                format!("d = {}", s.d),
            );
        }
    }
    if let Some(t) = &s.ordinary_sw_mod2 {
        let big_delta = 2 * s.d - m.b_plus_total as i64 - 1;
        for (k, c) in t {
            let locus = at(&format!("ordinary_sw_mod2.{k}"));
            if c.beta() != m.b1_total {
                bad(
                    "class lives on Jac",
                    locus.clone(),
                    format!("beta {} but b1_total = {}", c.beta(), m.b1_total),
                );
            }
            let deg = 2 * *k as i64 - big_delta;
            if !c.is_homogeneous_of(deg) {
                bad(
                    "SW_m has degree 2m − (2d − b₊ − 1)",
                    locus,
                    format!("class {c} is not homogeneous of degree {deg}"),
                );
            }
        }
    }
    if let Some(z) = &s.sw_int {
        for (ch, table) in &s.sw_mod2 {
            let r0 = table_get(table, 0, beta);
            if z.beta() == beta && z.reduce_mod2() != r0 {
                bad(
                    "SW_{R,Z} ≡ SW_{R,0} mod 2",
                    at(&format!("sw_mod2.{ch}.0")),
                    format!("reduce(sw_int) = {} but SW_{{R,0}} = {r0}", z.reduce_mod2()),
                );
            }
        }
    }
}

fn unit(beta: u32) -> Mod2Class {
    Mod2Class::one(beta)
}

fn table(entries: &[(u32, Mod2Class)]) -> SwTable {
    entries.iter().cloned().collect()
}

/// K3 with an odd non-free involution fixing two tori, spin structure.
pub fn k3() -> RealFourManifold {
    let mut s = RealSpinC::bare("spin", 0, -16, 0, true).expect("valid");
    s.sw_mod2.insert(Chamber::Unique, table(&[(0, unit(0))]));
    s.sw_int = Some(UpToSignClass::scalar(0, 1));
    s.deg_r = Some(UpToSignClass::scalar(0, 2));
    s.ordinary_sw_mod2 = Some(table(&[(0, unit(0))]));
    s.ordinary_sw_int = Some(1);
    RealFourManifold {
        name: "K3".into(),
        b1_total: 0,
        b_plus_total: 3,
        signature: -16,
        b1_minus: 0,
        b_plus_minus: 2,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: false,
        fixed_torus_selfint_zero: true,
        psc_invariant_metric: false,
        symplectic_antiinvariant: true,
        swap_factor: None,
        spinc: vec![s],
    }
}

fn sphere_like(name: &str, deg: Option<BigInt>, psc: bool) -> RealFourManifold {
    let mut s = RealSpinC::bare("spin", 0, 0, 0, true).expect("valid");
    s.deg_r = deg.map(|d| UpToSignClass::scalar(0, d));
    RealFourManifold {
        name: name.into(),
        b1_total: 0,
        b_plus_total: 0,
        signature: 0,
        b1_minus: 0,
        b_plus_minus: 0,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: true,
        fixed_torus_selfint_zero: false,
        psc_invariant_metric: psc,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![s],
    }
}

/// S⁴ with the involution fixing an equatorial 2-sphere.
pub fn s4() -> RealFourManifold {
    sphere_like("S4", Some(BigInt::from(1)), true)
}

/// `M_n`: the n-fold twist-roll-spun branched covers, homotopy 4-spheres.
pub fn m_n(n: u32) -> RealFourManifold {
    sphere_like(&format!("M{n}"), Some(BigInt::from(3).pow(n)), false)
}

/// CP² with reversed orientation and complex conjugation (fixed set RP²).
pub fn cp2bar() -> RealFourManifold {
    let mut s = RealSpinC::bare("c2=-1", -1, -1, 0, false).expect("valid");
    s.deg_r = Some(UpToSignClass::scalar(0, 1));
    RealFourManifold {
        name: "CP2bar".into(),
        b1_total: 0,
        b_plus_total: 0,
        signature: -1,
        b1_minus: 0,
        b_plus_minus: 0,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: true,
        fixed_torus_selfint_zero: false,
        psc_invariant_metric: true,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![s],
    }
}

/// S² × S² with the factor swap (fixed set the diagonal).
pub fn s2xs2_swap() -> RealFourManifold {
    let s = RealSpinC::bare("spin", 0, 0, 0, true).expect("valid");
    RealFourManifold {
        name: "S2xS2-swap".into(),
        b1_total: 0,
        b_plus_total: 1,
        signature: 0,
        b1_minus: 0,
        b_plus_minus: 0,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: true,
        fixed_torus_selfint_zero: false,
        psc_invariant_metric: true,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![s],
    }
}

/// S² × T² with the rotation by π on the sphere factor (fixed set two tori).
pub fn s2xt2() -> RealFourManifold {
    let mut s = RealSpinC::bare("spin", 0, 0, 0, true).expect("valid");
    s.deg_r = Some(UpToSignClass::scalar(0, 1));
    RealFourManifold {
        name: "S2xT2".into(),
        b1_total: 2,
        b_plus_total: 1,
        signature: 0,
        b1_minus: 0,
        b_plus_minus: 0,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: false,
        fixed_torus_selfint_zero: true,
        psc_invariant_metric: true,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![s],
    }
}

/// Built-in entries.
pub fn catalog() -> Vec<RealFourManifold> {
    vec![
        k3(),
        s4(),
        cp2bar(),
        s2xs2_swap(),
        s2xt2(),
        m_n(1),
        m_n(2),
        m_n(3),
    ]
}

pub fn catalog_entry(name: &str) -> Option<RealFourManifold> {
    if let Some(n) = name.strip_prefix('M').and_then(|n| n.parse::<u32>().ok()) {
        return Some(m_n(n));
    }
    catalog().into_iter().find(|m| m.name == name)
}

/// Synthetic records used by tests and examples.
pub mod fixtures {
    use super::*;

    /// β = 0, given `d` and `b₊^{-σ}`, with a complete but empty mod-2 table.
    pub fn synthetic(name: &str, d: i64, b_plus_minus: u32, b_plus_total: u32) -> RealFourManifold {
        let signature = -8 * d;
        let mut s = RealSpinC::bare("s", 0, signature, 0, false).expect("valid");
        s.sw_mod2
            .insert(Chamber::default_for(b_plus_minus), SwTable::new());
        if b_plus_minus == 1 {
            s.sw_mod2.insert(Chamber::Negative, SwTable::new());
        }
        RealFourManifold {
            name: name.into(),
            b1_total: 0,
            b_plus_total,
            signature,
            b1_minus: 0,
            b_plus_minus,
            has_nonisolated_fixed_point: true,
            fixed_set_connected: true,
            fixed_torus_selfint_zero: false,
            psc_invariant_metric: false,
            symplectic_antiinvariant: false,
            swap_factor: None,
            spinc: vec![s],
        }
    }

    /// β = 0, d = 4, b₊^{-σ} = 2. The identities force `SW_{R,2} = 0` here.
    pub fn identity_d4() -> RealFourManifold {
        synthetic("Y(d=4)", 4, 2, 3)
    }

    /// Same record with the degree-0 entry `SW_{R,2}` switched on.
    pub fn identity_d4_flipped() -> RealFourManifold {
        let mut m = identity_d4();
        m.spinc[0]
            .sw_mod2
            .get_mut(&Chamber::Unique)
            .expect("table")
            .insert(2, unit(0));
        m
    }

    /// β = 0, b₊^{-σ} = 1 record with negative-chamber value `SW_{R,d-1} = neg`.
    pub fn wall(d: i64, neg: bool) -> RealFourManifold {
        let mut m = synthetic(&format!("W(d={d})"), d, 1, 1);
        if neg && d >= 1 {
            m.spinc[0]
                .sw_mod2
                .get_mut(&Chamber::Negative)
                .expect("table")
                .insert((d - 1) as u32, unit(0));
        }
        m
    }
}
