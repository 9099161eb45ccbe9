//! Rules relating the invariants: wall-crossing, the Steenrod identity
//! family, spin and PSC vanishing, degree relations, splitting changes,
//! localization, and the connected/fiber/self-sum formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charclass::{binom_mod2, binom_mod2_or_zero, CharClassError, VirtualBundle};
use crate::model::{
    derive_d, normalize_table, table_get, Chamber, ModelError, RealFourManifold, RealSpinC,
    SwTable, Violation,
};
use crate::ring::{kunneth, IntClass, LaurentClass, Mod2Class, Monomial, RingError, UpToSignClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("spin rule called on non-spin structure {0:?}")]
    NotSpin(String),
    #[error("gluing error: {0}")]
    Gluing(String),
    #[error("fiber-sum precondition failed: {0}")]
    FiberSum(String),
    #[error("localization precondition failed: {0}")]
    Localization(String),
    #[error("self-sum input incomplete: {0}")]
    SelfSum(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    CharClass(#[from] CharClassError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type Result<T> = std::result::Result<T, EngineError>;

/// A value forced by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Assigned {
    Mod2(Mod2Class),
    Int(UpToSignClass),
    Bool(bool),
}

impl fmt::Display for Assigned {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assigned::Mod2(c) => write!(f, "{c}"),
            Assigned::Int(c) => write!(f, "{c}"),
            Assigned::Bool(b) => write!(f, "{}", u8::from(*b)),
        }
    }
}

/// `Σ terms ≡ rhs (mod 2)` among named Z₂ unknowns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<String>,
    pub rhs: bool,
    pub text: String,
}

impl Relation {
    pub fn new(terms: Vec<String>, rhs: bool) -> Self {
        let text = format!("{} = {}", terms.join(" + "), u8::from(rhs));
        Relation { terms, rhs, text }
    }
}

/// Result of applying one rule.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOutcome {
    pub rule: String,
    pub assignments: BTreeMap<String, Assigned>,
    pub violations: Vec<Violation>,
    pub relations: Vec<Relation>,
    /// Clauses skipped for missing hypotheses, with the reason.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RuleOutcome {
    pub fn new(rule: &str) -> Self {
        RuleOutcome {
            rule: rule.to_string(),
            ..Default::default()
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records `key = value`, or a violation when `stored` disagrees.
    fn force(&mut self, key: String, value: Assigned, stored: Option<Assigned>) {
        match stored {
            Some(s) if s != value => {
                let detail = format!("forced {value} but stored {s}");
                self.violations
                    .push(Violation::new(&self.rule, key, detail));
            }
            _ => {
                self.assignments.insert(key, value);
            }
        }
    }

    fn violate(&mut self, locus: impl Into<String>, detail: impl Into<String>) {
        let rule = self.rule.clone();
        self.violations.push(Violation::new(&rule, locus, detail));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn sw_key(ch: Chamber, m: i64) -> String {
    format!("sw_mod2.{ch}.{m}")
}

fn stored_sw(s: &RealSpinC, ch: Chamber, m: i64, beta: u32) -> Option<Assigned> {
    s.sw_mod2
        .get(&ch)
        .map(|t| Assigned::Mod2(table_get(t, m, beta)))
}

/// Chambers a rule should speak about: those stored, else the mandatory ones.
fn chambers_of(m: &RealFourManifold, s: &RealSpinC) -> Vec<Chamber> {
    if !s.sw_mod2.is_empty() {
        return s.sw_mod2.keys().copied().collect();
    }
    if m.b_plus_minus == 1 {
        vec![Chamber::Positive, Chamber::Negative]
    } else {
        vec![Chamber::Unique]
    }
}

/// Largest `m` at which `SW_{R,m}` can be nonzero for degree reasons.
fn top_m(m: &RealFourManifold, s: &RealSpinC) -> i64 {
    s.d - m.b_plus_minus as i64 + m.b1_minus as i64
}

// Wall-crossing.

/// `SW⁺_m = SW⁻_m + w_{m−(d−1)}(−D_R)`.
pub fn wall_cross(sw_neg: &SwTable, d: i64, minus_dr: &VirtualBundle) -> Result<SwTable> {
    let beta = minus_dr.beta();
    let mut ms: BTreeSet<i64> = sw_neg.keys().map(|k| *k as i64).collect();
    ms.extend((0..=beta as i64).map(|i| i + d - 1).filter(|m| *m >= 0));
    let mut out = SwTable::new();
    for m in ms {
        let v = table_get(sw_neg, m, beta).add(&minus_dr.w(m - (d - 1)))?;
        out.insert(m as u32, v);
    }
    Ok(normalize_table(out))
}

// Identities.

/// `Σ_{l=0}^{j} binom(d−1−m+j, l) · w_{j−l}(−D_R) · SW_{R,m+l} = 0` for
/// `0 ≤ m ≤ m_max`, `1 ≤ j ≤ j_max`, every stored chamber.
pub fn check_identities(s: &RealSpinC, beta: u32, j_max: u32, m_max: u32) -> Vec<Violation> {
    let mut out = Vec::new();
    for (ch, table) in &s.sw_mod2 {
        for m in 0..=m_max as i64 {
            for j in 1..=j_max as i64 {
                match identity_value(s, table, beta, m, j) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => out.push(Violation::new(
                        "check_identities",
                        format!("{ch} m={m} j={j}"),
                        format!("identity sums to {v}"),
                    )),
                    Err(e) => out.push(Violation::new(
                        "check_identities",
                        format!("{ch} m={m} j={j}"),
                        e.to_string(),
                    )),
                }
            }
        }
    }
    out
}

fn identity_value(s: &RealSpinC, table: &SwTable, beta: u32, m: i64, j: i64) -> Result<Mod2Class> {
    let mut acc = Mod2Class::zero(beta);
    for l in 0..=j {
        if binom_mod2(s.d - 1 - m + j, l)? {
            let term = s.minus_dr.w(j - l).cup(&table_get(table, m + l, beta))?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

// Splittings.

/// `SW′_m = SW_m + (m mod 2)·a⌣SW_{m−1}`.
pub fn change_splitting(sw: &SwTable, a: &Mod2Class) -> Result<SwTable> {
    if !a.is_homogeneous_of(1) {
        return Err(RingError::NotDegreeOne(a.to_string()).into());
    }
    let beta = a.beta();
    let ms: BTreeSet<i64> = sw.keys().flat_map(|k| [*k as i64, *k as i64 + 1]).collect();
    let mut out = SwTable::new();
    for m in ms {
        let mut v = table_get(sw, m, beta);
        if m % 2 == 1 {
            v = v.add(&a.cup(&table_get(sw, m - 1, beta))?)?;
        }
        out.insert(m as u32, v);
    }
    Ok(normalize_table(out))
}

/// Moves a structure to the splitting twisted by the line bundle with `w₁ = a`.
pub fn change_splitting_spinc(s: &RealSpinC, a: &Mod2Class) -> Result<RealSpinC> {
    let mut out = s.clone();
    out.minus_dr = s.minus_dr.tensor_by_line(a)?;
    out.w1_dr_zero = out.minus_dr.w(1).is_zero();
    out.sw_mod2 = s
        .sw_mod2
        .iter()
        .map(|(ch, t)| Ok((*ch, change_splitting(t, a)?)))
        .collect::<Result<_>>()?;
    Ok(out)
}

/// For odd `d`, the unique splitting with `w₁(D_R) = 0`; `None` for even `d`.
pub fn normalize_odd_splitting(s: &RealSpinC) -> Result<Option<RealSpinC>> {
    if s.d % 2 == 0 {
        return Ok(None);
    }
    let lambda = s.minus_dr.w(1);
    Ok(Some(change_splitting_spinc(s, &lambda)?))
}

// Spin structures.

pub fn spin_rule(m: &RealFourManifold, s: &RealSpinC) -> Result<RuleOutcome> {
    if !s.is_spin {
        return Err(EngineError::NotSpin(s.name.clone()));
    }
    let beta = m.b1_minus;
    let bpm = m.b_plus_minus;
    let mut out = RuleOutcome::new("spin_rule");
    for j in (1..=beta as i64).step_by(2) {
        let w = s.minus_dr.w(j);
        let key = format!("minus_dr.w{j}");
        out.force(
            key,
            Assigned::Mod2(Mod2Class::zero(beta)),
            Some(Assigned::Mod2(w)),
        );
    }
    if bpm == 0 {
        out.note("b_plus_minus = 0: no mod-2 invariants to constrain");
        return Ok(out);
    }
    let top = top_m(m, s);
    for ch in chambers_of(m, s) {
        for k in (2..=top).step_by(2) {
            out.force(
                sw_key(ch, k),
                Assigned::Mod2(Mod2Class::zero(beta)),
                stored_sw(s, ch, k, beta),
            );
        }
        match bpm {
            1 => {}
            2 => {
                let w = s.minus_dr.w(2 + m.signature.div_euclid(8));
                out.force(sw_key(ch, 0), Assigned::Mod2(w), stored_sw(s, ch, 0, beta));
            }
            _ => out.force(
                sw_key(ch, 0),
                Assigned::Mod2(Mod2Class::zero(beta)),
                stored_sw(s, ch, 0, beta),
            ),
        }
    }
    if bpm == 1 {
        if let (Some(p), Some(n)) = (
            s.sw_mod2.get(&Chamber::Positive),
            s.sw_mod2.get(&Chamber::Negative),
        ) {
            let (p0, n0) = (table_get(p, 0, beta), table_get(n, 0, beta));
            if p0 != n0 {
                out.violate(
                    sw_key(Chamber::Positive, 0),
                    format!("SW_{{R,0}} differs across chambers: {p0} vs {n0}"),
                );
            }
        }
    }
    Ok(out)
}

// Positive scalar curvature.

/// `zero_chamber` names the chamber containing the zero perturbation when `b₊^{-σ} = 1`.
pub fn psc_rule(m: &RealFourManifold, s: &RealSpinC, zero_chamber: Option<Chamber>) -> RuleOutcome {
    let mut out = RuleOutcome::new("psc_rule");
    if !m.psc_invariant_metric {
        out.note("no invariant PSC metric declared");
        return out;
    }
    let beta = m.b1_minus;
    let bpm = m.b_plus_minus;
    let top = top_m(m, s);
    let zero_table = |out: &mut RuleOutcome, ch: Chamber| {
        for k in 0..=top {
            out.force(
                sw_key(ch, k),
                Assigned::Mod2(Mod2Class::zero(beta)),
                stored_sw(s, ch, k, beta),
            );
        }
    };
    let int_defined = bpm > 0 && s.d % 2 == 0 && s.w1_dr_zero;
    match bpm {
        0 => {
            if beta == 0 && s.is_spin {
                if s.d != 0 {
                    out.violate("d", format!("|deg_r| = 1 forces d = 0, found d = {}", s.d));
                } else {
                    let stored = s.deg_r.clone().map(Assigned::Int);
                    out.force(
                        "deg_r".into(),
                        Assigned::Int(UpToSignClass::scalar(0, 1)),
                        stored,
                    );
                }
            } else {
                out.note("b_plus_minus = 0: degree clause needs b1_minus = 0 and a spin structure");
            }
        }
        1 => match zero_chamber {
            Some(ch) => zero_table(&mut out, ch),
            None => out.note("zero-perturbation chamber not declared: chamber clause skipped"),
        },
        _ => zero_table(&mut out, Chamber::Unique),
    }
    if int_defined {
        let stored = s.sw_int.clone().map(Assigned::Int);
        out.force(
            "sw_int".into(),
            Assigned::Int(UpToSignClass::zero(beta)),
            stored,
        );
        let stored = s.deg_r.clone().map(Assigned::Int);
        out.force(
            "deg_r".into(),
            Assigned::Int(UpToSignClass::zero(beta)),
            stored,
        );
    }
    out
}

// Degree relations.

fn halve(c: &UpToSignClass) -> Option<UpToSignClass> {
    let two = BigInt::from(2);
    let mut terms = Vec::new();
    for (mono, v) in c.rep().terms() {
        if !(v % &two).is_zero() {
            return None;
        }
        terms.push((mono, v / &two));
    }
    IntClass::from_terms(c.beta(), terms)
        .ok()
        .map(UpToSignClass::new)
}

pub fn degree_relations(m: &RealFourManifold, s: &RealSpinC) -> RuleOutcome {
    let mut out = RuleOutcome::new("degree_relations");
    let beta = m.b1_minus;
    let bpm = m.b_plus_minus;
    if bpm == 0 {
        if s.d > 0 {
            out.violate(
                "d",
                format!("b_plus_minus = 0 forces d ≤ 0, found d = {}", s.d),
            );
        }
        for j in (-s.d + 1).max(1)..=beta as i64 {
            let w = s.minus_dr.w(j);
            out.force(
                format!("minus_dr.w{j}"),
                Assigned::Mod2(Mod2Class::zero(beta)),
                Some(Assigned::Mod2(w)),
            );
        }
    }
    if !s.w1_dr_zero {
        out.note("w1(D_R) ≠ 0: integer clauses skipped");
        return out;
    }
    let stored_deg = s.deg_r.clone().map(Assigned::Int);
    if s.d % 2 != 0 {
        out.force(
            "deg_r".into(),
            Assigned::Int(UpToSignClass::zero(beta)),
            stored_deg,
        );
        return out;
    }
    if bpm > 0 {
        match (&s.sw_int, &s.deg_r) {
            (Some(z), _) => {
                let twice = z.scale(&BigInt::from(2));
                out.force("deg_r".into(), Assigned::Int(twice), stored_deg);
            }
            (None, Some(dg)) => match halve(dg) {
                Some(h) => out.force("sw_int".into(), Assigned::Int(h), None),
                None => out.violate("deg_r", format!("deg_r = {dg} is not divisible by 2")),
            },
            (None, None) => out.note("sw_int and deg_r unknown"),
        }
        for ch in chambers_of(m, s) {
            match (&s.sw_int, s.sw_mod2.get(&ch)) {
                (Some(z), _) => {
                    out.force(
                        sw_key(ch, 0),
                        Assigned::Mod2(z.reduce_mod2()),
                        stored_sw(s, ch, 0, beta),
                    );
                }
                (None, Some(t)) => {
                    out.force(
                        "sw_int mod 2".into(),
                        Assigned::Mod2(table_get(t, 0, beta)),
                        None,
                    );
                }
                (None, None) => {}
            }
        }
    } else {
        let w = s.minus_dr.w(-s.d);
        let stored = s.deg_r.as_ref().map(|c| Assigned::Mod2(c.reduce_mod2()));
        out.force("deg_r mod 2".into(), Assigned::Mod2(w.clone()), stored);
        if beta == 0 && w.is_one() {
            out.note("deg_r is odd, hence nonzero");
        }
    }
    out
}

// Localization.

/// Ordinary invariant mod 2 from the Real one, for `b₁ = 0`:
/// `binom(2·b₊^σ, b₊ − 1) · SW_R`.
pub fn localize_b1zero(b_plus_total: u32, b_plus_inv: u32, sw_r: bool) -> bool {
    if b_plus_total == 0 {
        return false;
    }
    sw_r && binom_mod2_or_zero(2 * b_plus_inv as i64, b_plus_total as i64 - 1)
}

/// Largest `b₁` accepted by [`localize_general`] (2^7 unknowns).
pub const LOCALIZE_MAX_B1: u32 = 7;

/// Outcome of the general localization rule together with the Laurent classes
/// it was read off from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Localization {
    pub outcome: RuleOutcome,
    /// `u^{2m−Δ}·binom(m−d, δ−m)·(ι_ε)_*(1)` for each Real structure ε.
    pub evidence: BTreeMap<String, LaurentClass>,
    /// The full expression, when every input is known.
    pub total: Option<LaurentClass>,
    /// The `u⁰` coefficient when it is fully determined.
    pub ordinary: Option<Mod2Class>,
}

/// Name of the Real structure `ε` (bit `i` is `εᵢ₊₁`), e.g. `s0`, `s1`, `s01`.
pub fn structure_name(eps: u64, b1: u32) -> String {
    let bits: String = (0..b1)
        .map(|i| if eps >> i & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("SW_R[s{bits}]")
}

/// `(ι_ε)_*(1) = ∏ᵢ (vᵢ + εᵢ u)`.
pub fn fixed_point_pushforward(eps: u64, b1: u32) -> Result<LaurentClass> {
    let mut acc = LaurentClass::u_power(b1, 0);
    for i in 1..=b1 {
        let mut factor = LaurentClass::term(0, Mod2Class::generator(b1, i)?);
        if eps >> (i - 1) & 1 == 1 {
            factor = factor.add(&LaurentClass::u_power(b1, 1))?;
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy)]
struct Row {
    bits: u128,
    rhs: bool,
}

/// Row-reduces in place; returns `false` on an inconsistent row `0 = 1`.
fn rref(rows: &mut Vec<Row>) -> bool {
    let mut done: Vec<Row> = Vec::new();
    for mut r in rows.drain(..) {
        for p in &done {
            if r.bits & (p.bits & p.bits.wrapping_neg()) != 0 {
                r.bits ^= p.bits;
                r.rhs ^= p.rhs;
            }
        }
        if r.bits == 0 {
            if r.rhs {
                return false;
            }
            continue;
        }
        let pivot = r.bits & r.bits.wrapping_neg();
        for p in done.iter_mut() {
            if p.bits & pivot != 0 {
                p.bits ^= r.bits;
                p.rhs ^= r.rhs;
            }
        }
        done.push(r);
    }
    *rows = done;
    true
}

fn reduce_row(mut r: Row, basis: &[Row]) -> Row {
    for p in basis {
        if r.bits & (p.bits & p.bits.wrapping_neg()) != 0 {
            r.bits ^= p.bits;
            r.rhs ^= p.rhs;
        }
    }
    r
}

/// Applies the localization theorem at index `mm`. `per_structure` maps each
/// Real structure `ε ∈ {0,1}^{b₁}` to its known value; missing entries are
/// treated as Z₂ unknowns.
pub fn localize_general(
    m: &RealFourManifold,
    s: &RealSpinC,
    per_structure: &BTreeMap<u64, bool>,
    mm: i64,
) -> Result<Localization> {
    if m.b1_minus != 0 {
        return Err(EngineError::Localization(format!(
            "b1_minus = {} (must be 0)",
            m.b1_minus
        )));
    }
    if m.b_plus_minus == 0 {
        return Err(EngineError::Localization(
            "b_plus_minus = 0 (must be positive)".into(),
        ));
    }
    if m.b1_total > LOCALIZE_MAX_B1 {
        return Err(EngineError::Localization(format!(
            "b1_total = {} exceeds {LOCALIZE_MAX_B1}",
            m.b1_total
        )));
    }
    if mm < 0 {
        return Err(EngineError::Localization(format!(
            "index m = {mm} is negative"
        )));
    }
    let b1 = m.b1_total;
    let n = 1u64 << b1;
    if let Some(bad) = per_structure.keys().find(|e| **e >= n) {
        return Err(EngineError::Localization(format!(
            "structure index {bad} out of range for b1 = {b1}"
        )));
    }
    let big_delta = 2 * s.d - m.b_plus_total as i64 + b1 as i64 - 1;
    let delta = s.d - m.b_plus_minus as i64;
    let coeff = binom_mod2_or_zero(mm - s.d, delta - mm);
    let mut out = RuleOutcome::new("localize_general");

    let unknowns: Vec<u64> = (0..n).filter(|e| !per_structure.contains_key(e)).collect();
    let bit_of = |e: u64| unknowns.iter().position(|u| *u == e).map(|i| 1u128 << i);

    let mut evidence = BTreeMap::new();
    let mut known = LaurentClass::zero(b1);
    // (u-exponent, monomial) → row over the unknowns
    let mut cells: BTreeMap<(i64, Monomial), Row> = BTreeMap::new();
    for e in 0..n {
        let l = if coeff {
            LaurentClass::u_power(b1, 2 * mm - big_delta).mul(&fixed_point_pushforward(e, b1)?)?
        } else {
            LaurentClass::zero(b1)
        };
        for (k, c) in l.terms() {
            for mono in c.monomials() {
                let cell = cells.entry((k, mono)).or_insert(Row {
                    bits: 0,
                    rhs: false,
                });
                match (bit_of(e), per_structure.get(&e)) {
                    (Some(b), _) => cell.bits ^= b,
                    (None, Some(true)) => cell.rhs ^= true,
                    _ => {}
                }
            }
        }
        if per_structure.get(&e) == Some(&true) {
            known = known.add(&l)?;
        }
        evidence.insert(structure_name(e, b1), l);
    }

    let mut rows: Vec<Row> = cells
        .iter()
        .filter(|((k, _), _)| *k < 0)
        .map(|(_, r)| *r)
        .collect();
    // Σ unknowns + const = 0  ⇔  Σ unknowns = const
    let consistent = rref(&mut rows);
    if !consistent {
        out.violate(
            "negative powers of u",
            "the known values leave a nonzero negative power of u",
        );
    }
    let name = |i: u32| structure_name(unknowns[i as usize], b1);
    let names_of =
        |bits: u128| -> Vec<String> { (0..128).filter(|i| bits >> i & 1 == 1).map(name).collect() };
    if consistent {
        for r in &rows {
            if r.bits.count_ones() == 1 {
                let key = name(r.bits.trailing_zeros());
                out.force(key, Assigned::Bool(r.rhs), None);
            } else {
                out.relations.push(Relation::new(names_of(r.bits), r.rhs));
            }
        }
    }

    // u⁰ coefficient, expressed modulo the relations.
    let stored = s.ordinary_sw_mod2.as_ref().map(|t| table_get(t, mm, b1));
    let mut ordinary = Mod2Class::zero(b1);
    let mut determined = consistent;
    let mut zero_cells: Vec<(Monomial, Row)> = cells
        .iter()
        .filter(|((k, _), _)| *k == 0)
        .map(|((_, mono), r)| (*mono, reduce_row(*r, &rows)))
        .collect();
    if let Some(st) = &stored {
        for mono in st.monomials() {
            if !zero_cells.iter().any(|(x, _)| *x == mono) {
                zero_cells.push((
                    mono,
                    Row {
                        bits: 0,
                        rhs: false,
                    },
                ));
            }
        }
    }
    for (mono, r) in zero_cells {
        let symbol = format!("SW_{mm}<{mono}>");
        if r.bits == 0 {
            if r.rhs {
                ordinary = ordinary.add(&Mod2Class::monomial(b1, mono))?;
            }
        } else {
            determined = false;
            match &stored {
                Some(st) => {
                    let mut terms = names_of(r.bits);
                    terms.sort();
                    out.relations
                        .push(Relation::new(terms, r.rhs ^ st.contains(mono)));
                }
                None => {
                    let mut terms = vec![symbol];
                    terms.extend(names_of(r.bits));
                    out.relations.push(Relation::new(terms, r.rhs));
                }
            }
        }
    }
    if determined {
        let key = format!("ordinary_sw_mod2.{mm}");
        out.force(
            key,
            Assigned::Mod2(ordinary.clone()),
            stored.map(Assigned::Mod2),
        );
    }
    if !coeff {
        out.note(format!(
            "binom({}, {}) is even: the expression vanishes at m = {mm}",
            mm - s.d,
            delta - mm
        ));
    }
    Ok(Localization {
        outcome: out,
        evidence,
        total: unknowns.is_empty().then_some(known),
        ordinary: determined.then_some(ordinary),
    })
}

// Connected sums.

fn require_gluable(m: &RealFourManifold) -> Result<()> {
    if !m.has_nonisolated_fixed_point {
        return Err(EngineError::Gluing(format!(
            "{} has no non-isolated fixed point",
            m.name
        )));
    }
    if m.spinc.is_empty() {
        return Err(EngineError::Gluing(format!(
            "{} carries no Real spin^c structure",
            m.name
        )));
    }
    Ok(())
}

/// Degree, either stored or read off from `deg = 2·SW_Z` when that applies.
pub fn known_degree(m: &RealFourManifold, s: &RealSpinC) -> Option<UpToSignClass> {
    if let Some(d) = &s.deg_r {
        return Some(d.clone());
    }
    if m.b_plus_minus > 0 && s.d % 2 == 0 && s.w1_dr_zero {
        return s.sw_int.as_ref().map(|z| z.scale(&BigInt::from(2)));
    }
    None
}

/// Equivariant connected sum at fixed points, with invariants per the gluing
/// formulas. `chamber` is the chamber of `m1`; it also names the result's.
pub fn connected_sum(
    m1: &RealFourManifold,
    m2: &RealFourManifold,
    s1: &RealSpinC,
    s2: &RealSpinC,
    chamber: Chamber,
) -> Result<(RealFourManifold, RealSpinC)> {
    require_gluable(m1)?;
    require_gluable(m2)?;
    if !chamber.allowed_for(m1.b_plus_minus) {
        return Err(EngineError::Gluing(format!(
            "chamber {chamber} not valid for {} (b_plus_minus = {})",
            m1.name, m1.b_plus_minus
        )));
    }
    let (b1, b2) = (m1.b1_minus, m2.b1_minus);
    let beta = b1 + b2;
    let m = RealFourManifold {
        name: format!("{} # {}", m1.name, m2.name),
        b1_total: m1.b1_total + m2.b1_total,
        b_plus_total: m1.b_plus_total + m2.b_plus_total,
        signature: m1.signature + m2.signature,
        b1_minus: beta,
        b_plus_minus: m1.b_plus_minus + m2.b_plus_minus,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: m1.fixed_set_connected && m2.fixed_set_connected,
        fixed_torus_selfint_zero: (m1.fixed_torus_selfint_zero && !m1.fixed_set_connected)
            || (m2.fixed_torus_selfint_zero && !m2.fixed_set_connected),
        psc_invariant_metric: m1.psc_invariant_metric && m2.psc_invariant_metric,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![],
    };
    let minus_dr = s1.minus_dr.kunneth_sum(&s2.minus_dr)?;
    let w1_zero = s1.w1_dr_zero && s2.w1_dr_zero;
    let mut s = RealSpinC {
        name: format!("{}#{}", s1.name, s2.name),
        c_squared: s1.c_squared + s2.c_squared,
        d: s1.d + s2.d,
        is_spin: s1.is_spin && s2.is_spin,
        w1_dr_zero: minus_dr.w(1).is_zero(),
        minus_dr,
        sw_mod2: BTreeMap::new(),
        sw_int: None,
        deg_r: None,
        ordinary_sw_mod2: None,
        ordinary_sw_int: None,
    };
    let out_chamber = if m.b_plus_minus == 1 {
        chamber
    } else {
        Chamber::Unique
    };

    if m1.b_plus_minus > 0 {
        if m2.b_plus_minus > 0 {
            s.sw_mod2.insert(out_chamber, SwTable::new());
        } else if let Some(t1) = s1.sw_mod2.get(&chamber) {
            let mut t = SwTable::new();
            for (k1, c1) in t1 {
                for k in 0..=b2 as i64 {
                    let mm = *k1 as i64 + s2.d + k;
                    if mm < 0 {
                        continue;
                    }
                    let add = kunneth(c1, &s2.minus_dr.w(k))?;
                    let prev = table_get(&t, mm, beta);
                    t.insert(mm as u32, prev.add(&add)?);
                }
            }
            s.sw_mod2.insert(out_chamber, normalize_table(t));
        }
    }

    let even = s1.d % 2 == 0 && s2.d % 2 == 0;
    let odd = s1.d % 2 != 0 && s2.d % 2 != 0;
    if even && w1_zero {
        if let (Some(a), Some(b)) = (known_degree(m1, s1), known_degree(m2, s2)) {
            s.deg_r = Some(a.kunneth(&b)?);
        }
        if m1.b_plus_minus > 0 {
            if let (Some(z), Some(b)) = (&s1.sw_int, known_degree(m2, s2)) {
                s.sw_int = Some(z.kunneth(&b)?);
            }
        }
    } else if odd && w1_zero && m1.b_plus_minus > 0 {
        s.sw_int = Some(UpToSignClass::zero(beta));
    }
    derive_d(s.c_squared, m.signature)?;
    let mut m = m;
    m.spinc.push(s.clone());
    Ok((m, s))
}

// Fiber sums.

/// Fiber sum along invariant tori of square zero.
///
/// Betti bookkeeping assumes `b₁` is additive; with `χ` and `σ` additive
/// this gives `b₊ = b₊(X₁) + b₊(X₂) + 1`.
pub fn fiber_sum(
    m1: &RealFourManifold,
    m2: &RealFourManifold,
    s1: &RealSpinC,
    s2: &RealSpinC,
) -> Result<(RealFourManifold, RealSpinC)> {
    for (m, s) in [(m1, s1), (m2, s2)] {
        if m.b1_minus != 0 {
            return Err(EngineError::FiberSum(format!(
                "b1_minus({}) = {} must be 0",
                m.name, m.b1_minus
            )));
        }
        if !m.fixed_torus_selfint_zero {
            return Err(EngineError::FiberSum(format!(
                "{} has no fixed torus of square zero",
                m.name
            )));
        }
        if s.d % 2 != 0 {
            return Err(EngineError::FiberSum(format!(
                "d({}) = {} must be even",
                m.name, s.d
            )));
        }
    }
    let survivors = !m1.fixed_set_connected || !m2.fixed_set_connected;
    let mut m = RealFourManifold {
        name: format!("{} #f {}", m1.name, m2.name),
        b1_total: m1.b1_total + m2.b1_total,
        b_plus_total: m1.b_plus_total + m2.b_plus_total + 1,
        signature: m1.signature + m2.signature,
        b1_minus: 0,
        b_plus_minus: m1.b_plus_minus + m2.b_plus_minus,
        has_nonisolated_fixed_point: survivors,
        fixed_set_connected: false,
        fixed_torus_selfint_zero: (m1.fixed_torus_selfint_zero && !m1.fixed_set_connected)
            || (m2.fixed_torus_selfint_zero && !m2.fixed_set_connected),
        psc_invariant_metric: false,
        symplectic_antiinvariant: false,
        swap_factor: None,
        spinc: vec![],
    };
    let d = s1.d + s2.d;
    let mut s = RealSpinC {
        name: format!("{}#f{}", s1.name, s2.name),
        c_squared: s1.c_squared + s2.c_squared,
        d,
        is_spin: s1.is_spin && s2.is_spin,
        w1_dr_zero: true,
        minus_dr: VirtualBundle::trivial(0, -d),
        sw_mod2: BTreeMap::new(),
        sw_int: None,
        deg_r: None,
        ordinary_sw_mod2: None,
        ordinary_sw_int: None,
    };
    let (g1, g2) = (known_degree(m1, s1), known_degree(m2, s2));
    if let (Some(a), Some(b)) = (&g1, &g2) {
        s.deg_r = Some(a.cup(b)?);
    }
    if m1.b_plus_minus > 0 && m2.b_plus_minus > 0 {
        s.sw_int = match (&s1.sw_int, &s2.sw_int, &s.deg_r) {
            (Some(a), Some(b), _) => Some(a.cup(b)?.scale(&BigInt::from(2))),
            (_, _, Some(dg)) => halve(dg),
            _ => None,
        };
    }
    let delta = d - m.b_plus_minus as i64;
    if let (Some(z), 0) = (&s.sw_int, delta) {
        let t: SwTable = normalize_table([(0, z.reduce_mod2())].into_iter().collect());
        if m.b_plus_minus == 1 {
            s.sw_mod2.insert(Chamber::Positive, t.clone());
            s.sw_mod2.insert(Chamber::Negative, t);
        } else {
            s.sw_mod2.insert(Chamber::Unique, t);
        }
    }
    m.spinc.push(s.clone());
    Ok((m, s))
}

// Self-sums.

/// Ordinary Seiberg–Witten data of a closed 4-manifold `X`, input to [`self_sum`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdinaryData {
    pub name: String,
    pub b1: u32,
    pub b_plus: u32,
    pub signature: i64,
    pub d: i64,
    #[serde(default)]
    pub is_spin: bool,
    /// Ordinary `SW_m` classes over `b1` generators, per chamber; complete when present.
    #[serde(default)]
    pub sw: Option<BTreeMap<Chamber, SwTable>>,
    #[serde(default)]
    pub sw_int: Option<i64>,
    /// Total Stiefel–Whitney class of `−D`; needed only when `b1 > 0` and `b_plus > 0`.
    #[serde(default)]
    pub minus_d_total: Option<Mod2Class>,
}

/// `X # X` with the involution swapping the summands, Real structure `𝔰 # (−𝔰)`.
pub fn self_sum(x: &OrdinaryData) -> Result<(RealFourManifold, RealSpinC)> {
    let b1 = x.b1;
    let total = match &x.minus_d_total {
        Some(t) => t.clone(),
        None if b1 == 0 || x.b_plus == 0 => Mod2Class::one(b1),
        None => {
            return Err(EngineError::SelfSum(
                "minus_d_total is required when b1 > 0 and b_plus > 0".into(),
            ))
        }
    };
    if total.beta() != b1 {
        return Err(EngineError::SelfSum(format!(
            "minus_d_total has beta {} but b1 = {b1}",
            total.beta()
        )));
    }
    let d = 2 * x.d;
    let signature = 2 * x.signature;
    let minus_dr = VirtualBundle::new(-d, total)?;
    let mut s = RealSpinC {
        name: "s#-s".into(),
        c_squared: 8 * d + signature,
        d,
        is_spin: x.is_spin,
        w1_dr_zero: minus_dr.w(1).is_zero(),
        minus_dr,
        sw_mod2: BTreeMap::new(),
        sw_int: None,
        deg_r: None,
        ordinary_sw_mod2: None,
        ordinary_sw_int: None,
    };
    s.deg_r = Some(if x.b_plus == 0 && x.d == 0 {
        UpToSignClass::scalar(b1, 1)
    } else {
        UpToSignClass::zero(b1)
    });
    if x.b_plus > 0 {
        let tables: Option<BTreeMap<Chamber, SwTable>> = match (&x.sw, x.sw_int) {
            (Some(t), _) => Some(t.clone()),
            (None, Some(v)) if b1 == 0 => {
                let big_delta = 2 * x.d - x.b_plus as i64 - 1;
                let mut t = SwTable::new();
                if big_delta >= 0 && big_delta % 2 == 0 && v % 2 != 0 {
                    t.insert((big_delta / 2) as u32, Mod2Class::one(0));
                }
                Some([(Chamber::default_for(x.b_plus), t)].into_iter().collect())
            }
            _ => None,
        };
        if let Some(tables) = tables {
            for (ch, t) in tables {
                if !ch.allowed_for(x.b_plus) {
                    return Err(EngineError::SelfSum(format!(
                        "chamber {ch} not valid for b_plus = {}",
                        x.b_plus
                    )));
                }
                let mut out = SwTable::new();
                for (k, c) in t {
                    if c.beta() != b1 {
                        return Err(EngineError::SelfSum(format!(
                            "SW_{k} has beta {} but b1 = {b1}",
                            c.beta()
                        )));
                    }
                    out.insert(2 * k + 1, c);
                }
                s.sw_mod2.insert(ch, normalize_table(out));
            }
        }
        if s.w1_dr_zero {
            s.sw_int = Some(UpToSignClass::zero(b1));
        }
    }
    let m = RealFourManifold {
        name: format!("{} # {} (swap)", x.name, x.name),
        b1_total: 2 * b1,
        b_plus_total: 2 * x.b_plus,
        signature,
        b1_minus: b1,
        b_plus_minus: x.b_plus,
        has_nonisolated_fixed_point: true,
        fixed_set_connected: true,
        fixed_torus_selfint_zero: false,
        psc_invariant_metric: false,
        symplectic_antiinvariant: false,
        swap_factor: Some(x.name.clone()),
        spinc: vec![s.clone()],
    };
    Ok((m, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::total_from;
    use crate::model::{catalog, cp2bar, fixtures, k3, s4};

    fn one() -> Mod2Class {
        Mod2Class::one(0)
    }

    #[test]
    fn wall_cross_beta0() {
        for d in 1..=6 {
            let neg = SwTable::new();
            let pos = wall_cross(&neg, d, &VirtualBundle::trivial(0, -d)).unwrap();
            assert_eq!(
                pos,
                [((d - 1) as u32, one())].into_iter().collect::<SwTable>()
            );
        }
        let pos = wall_cross(&SwTable::new(), 0, &VirtualBundle::trivial(0, 0)).unwrap();
        assert!(pos.is_empty());
    }

    #[test]
    fn wall_cross_beta1() {
        let v = VirtualBundle::new(-2, total_from(1, &[&[1]]).unwrap()).unwrap();
        let pos = wall_cross(&SwTable::new(), 2, &v).unwrap();
        assert_eq!(pos.get(&2), Some(&Mod2Class::generator(1, 1).unwrap()));
        assert_eq!(pos.get(&1), Some(&Mod2Class::one(1)));
        let back = wall_cross(&pos, 2, &v).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn identities_on_fixtures() {
        let ok = fixtures::identity_d4();
        assert!(check_identities(&ok.spinc[0], 0, 4, 8).is_empty());
        let bad = fixtures::identity_d4_flipped();
        let v = check_identities(&bad.spinc[0], 0, 4, 8);
        assert!(v.iter().any(|v| v.locus == "unique m=1 j=1"), "{v:?}");
    }

    #[test]
    fn splitting_examples() {
        let a = Mod2Class::generator(1, 1).unwrap();
        let t: SwTable = [(0, Mod2Class::one(1)), (2, Mod2Class::one(1))]
            .into_iter()
            .collect();
        let t2 = change_splitting(&t, &a).unwrap();
        assert_eq!(t2.get(&0), t.get(&0));
        assert_eq!(t2.get(&1), Some(&a));
        assert_eq!(t2.get(&2), t.get(&2));
        assert_eq!(change_splitting(&t2, &a).unwrap(), t);
        assert_eq!(change_splitting(&t, &Mod2Class::zero(1)).unwrap(), t);
        assert!(change_splitting(&t, &Mod2Class::one(1)).is_err());
    }

    #[test]
    fn odd_splitting_normalizes_w1() {
        let mut s = RealSpinC::bare("x", 0, -24, 1, false).unwrap();
        s.minus_dr = VirtualBundle::new(-3, total_from(1, &[&[1]]).unwrap()).unwrap();
        s.w1_dr_zero = false;
        let n = normalize_odd_splitting(&s).unwrap().unwrap();
        assert!(n.w1_dr_zero);
    }

    #[test]
    fn spin_rule_examples() {
        let k = k3();
        let out = spin_rule(&k, &k.spinc[0]).unwrap();
        assert!(out.is_clean());
        assert_eq!(
            out.assignments.get("sw_mod2.unique.0"),
            Some(&Assigned::Mod2(one()))
        );

        let mut m = fixtures::synthetic("b3", 2, 3, 3);
        m.signature = -16;
        m.spinc[0].is_spin = true;
        let out = spin_rule(&m, &m.spinc[0]).unwrap();
        assert_eq!(
            out.assignments.get("sw_mod2.unique.0"),
            Some(&Assigned::Mod2(Mod2Class::zero(0)))
        );

        assert!(spin_rule(&cp2bar(), &cp2bar().spinc[0]).is_err());
    }

    #[test]
    fn psc_rule_examples() {
        let s = s4();
        let out = psc_rule(&s, &s.spinc[0], None);
        assert!(out.is_clean());
        assert_eq!(
            out.assignments.get("deg_r"),
            Some(&Assigned::Int(UpToSignClass::scalar(0, 1)))
        );

        let mut m = fixtures::synthetic("p", 2, 2, 3);
        m.psc_invariant_metric = true;
        let out = psc_rule(&m, &m.spinc[0], None);
        assert!(out.is_clean());
        assert_eq!(
            out.assignments.get("sw_mod2.unique.0"),
            Some(&Assigned::Mod2(Mod2Class::zero(0)))
        );

        let mut w = fixtures::wall(2, true);
        w.psc_invariant_metric = true;
        let out = psc_rule(&w, &w.spinc[0], Some(Chamber::Negative));
        assert_eq!(out.violations.len(), 1);
        let out = psc_rule(&w, &w.spinc[0], Some(Chamber::Positive));
        assert!(out.is_clean());
    }

    #[test]
    fn degree_relation_examples() {
        let k = k3();
        let out = degree_relations(&k, &k.spinc[0]);
        assert!(out.is_clean(), "{out:?}");
        assert_eq!(
            out.assignments.get("deg_r"),
            Some(&Assigned::Int(UpToSignClass::scalar(0, 2)))
        );

        let odd = fixtures::synthetic("odd", 3, 2, 3);
        let out = degree_relations(&odd, &odd.spinc[0]);
        assert_eq!(
            out.assignments.get("deg_r"),
            Some(&Assigned::Int(UpToSignClass::zero(0)))
        );

        let c = cp2bar();
        let out = degree_relations(&c, &c.spinc[0]);
        assert!(out.is_clean());
        assert_eq!(
            out.assignments.get("deg_r mod 2"),
            Some(&Assigned::Mod2(one()))
        );

        let mut bad = cp2bar();
        bad.spinc[0].deg_r = Some(UpToSignClass::scalar(0, 2));
        assert!(!degree_relations(&bad, &bad.spinc[0]).is_clean());
    }

    #[test]
    fn localize_b1zero_examples() {
        assert!(localize_b1zero(3, 1, true));
        assert!(!localize_b1zero(7, 3, false));
        assert!(!localize_b1zero(7, 4, true));
        assert!(localize_b1zero(7, 3, true));
        assert!(!localize_b1zero(3, 1, false));
    }

    fn b1_one(delta_cap: i64) -> RealFourManifold {
        // b1 = 1, δ = 0, Δ = 2d − b₊: pick b₊ so that Δ = delta_cap.
        let d = 4;
        let b_plus = (2 * d - delta_cap) as u32;
        let mut m = fixtures::synthetic("b1", d, d as u32, b_plus);
        m.b1_total = 1;
        m.spinc[0].sw_mod2.clear();
        m
    }

    #[test]
    fn localization_b1_one() {
        let unknown = BTreeMap::new();
        let m = b1_one(0);
        let l = localize_general(&m, &m.spinc[0], &unknown, 0).unwrap();
        assert!(l.outcome.is_clean());
        let r = &l.outcome.relations;
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].terms, ["SW_0<v1>", "SW_R[s0]", "SW_R[s1]"]);

        let m = b1_one(1);
        let l = localize_general(&m, &m.spinc[0], &unknown, 0).unwrap();
        let texts: Vec<&str> = l
            .outcome
            .relations
            .iter()
            .map(|r| r.text.as_str())
            .collect();
        assert!(texts.contains(&"SW_R[s0] + SW_R[s1] = 0"), "{texts:?}");
        assert!(
            texts.contains(&"SW_0<1> + SW_R[s0] = 0") || texts.contains(&"SW_0<1> + SW_R[s1] = 0"),
            "{texts:?}"
        );

        for cap in 2..=4 {
            let m = b1_one(cap);
            let l = localize_general(&m, &m.spinc[0], &unknown, 0).unwrap();
            assert_eq!(
                l.outcome.assignments.get("SW_R[s0]"),
                Some(&Assigned::Bool(false))
            );
            assert_eq!(
                l.outcome.assignments.get("SW_R[s1]"),
                Some(&Assigned::Bool(false))
            );
            assert!(l.outcome.relations.is_empty());
        }
    }

    #[test]
    fn localization_known_inputs() {
        let m = b1_one(1);
        let known: BTreeMap<u64, bool> = [(0, true), (1, false)].into_iter().collect();
        let l = localize_general(&m, &m.spinc[0], &known, 0).unwrap();
        assert!(!l.outcome.is_clean());
        let known: BTreeMap<u64, bool> = [(0, true), (1, true)].into_iter().collect();
        let l = localize_general(&m, &m.spinc[0], &known, 0).unwrap();
        assert!(l.outcome.is_clean());
        assert_eq!(l.ordinary, Some(Mod2Class::one(1)));
    }

    #[test]
    fn localization_matches_b1zero_on_k3() {
        let k = k3();
        let known: BTreeMap<u64, bool> = [(0, true)].into_iter().collect();
        let l = localize_general(&k, &k.spinc[0], &known, 0).unwrap();
        assert!(l.outcome.is_clean(), "{:?}", l.outcome);
        assert_eq!(l.ordinary, Some(one()));
        assert!(localize_b1zero(3, 1, true));
    }

    #[test]
    fn connected_sums() {
        let k = k3();
        let (m, s) = connected_sum(&k, &k, &k.spinc[0], &k.spinc[0], Chamber::Unique).unwrap();
        assert_eq!(s.sw_int, Some(UpToSignClass::scalar(0, 2)));
        assert_eq!(s.sw_mod2.get(&Chamber::Unique), Some(&SwTable::new()));
        assert_eq!(s.d, 4);
        assert_eq!(m.b_plus_minus, 4);
        let c = cp2bar();
        let (_, s) = connected_sum(&k, &c, &k.spinc[0], &c.spinc[0], Chamber::Unique).unwrap();
        assert_eq!(s.deg_r, Some(UpToSignClass::scalar(0, 2)));
        assert_eq!(s.sw_int, Some(UpToSignClass::scalar(0, 1)));
        assert_eq!(
            s.sw_mod2.get(&Chamber::Unique).and_then(|t| t.get(&0)),
            Some(&one())
        );
        let mut bare = s4();
        bare.has_nonisolated_fixed_point = false;
        assert!(connected_sum(&k, &bare, &k.spinc[0], &bare.spinc[0], Chamber::Unique).is_err());
        assert!(connected_sum(&k, &c, &k.spinc[0], &c.spinc[0], Chamber::Positive).is_err());
    }

    #[test]
    fn fiber_sums() {
        let k = k3();
        let (e4, s) = fiber_sum(&k, &k, &k.spinc[0], &k.spinc[0]).unwrap();
        assert_eq!(s.sw_int, Some(UpToSignClass::scalar(0, 2)));
        assert_eq!(
            (e4.signature, s.d, e4.b_plus_total, e4.b_plus_inv()),
            (-32, 4, 7, 3)
        );
        let (_, s6) = fiber_sum(&k, &e4, &k.spinc[0], &s).unwrap();
        assert_eq!(s6.sw_int, Some(UpToSignClass::scalar(0, 4)));
        let odd = fixtures::synthetic("odd", 3, 2, 3);
        let mut odd = odd;
        odd.fixed_torus_selfint_zero = true;
        assert!(matches!(
            fiber_sum(&odd, &k, &odd.spinc[0], &k.spinc[0]),
            Err(EngineError::FiberSum(_))
        ));
    }

    fn ordinary(b_plus: u32, d: i64, sw0: bool) -> OrdinaryData {
        let sw = if b_plus > 0 {
            let t: SwTable = if sw0 {
                [(0, one())].into_iter().collect()
            } else {
                SwTable::new()
            };
            Some([(Chamber::default_for(b_plus), t)].into_iter().collect())
        } else {
            None
        };
        OrdinaryData {
            name: "X".into(),
            b1: 0,
            b_plus,
            signature: -(8 * d),
            d,
            is_spin: false,
            sw,
            sw_int: None,
            minus_d_total: None,
        }
    }

    #[test]
    fn self_sums() {
        let (_, s) = self_sum(&ordinary(0, 0, false)).unwrap();
        assert_eq!(s.deg_r, Some(UpToSignClass::scalar(0, 1)));
        let (m, s) = self_sum(&ordinary(3, 2, true)).unwrap();
        assert_eq!(s.deg_r, Some(UpToSignClass::zero(0)));
        let t = &s.sw_mod2[&Chamber::Unique];
        assert_eq!(t.get(&1), Some(&one()));
        assert!(t.get(&0).is_none() && t.get(&2).is_none());
        assert!(
            crate::model::validate(&m).is_empty(),
            "{:?}",
            crate::model::validate(&m)
        );
    }

    #[test]
    fn catalog_passes_rules() {
        for m in catalog() {
            for s in &m.spinc {
                assert!(
                    check_identities(s, m.b1_minus, 4, 8).is_empty(),
                    "{}",
                    m.name
                );
                assert!(degree_relations(&m, s).is_clean(), "{}", m.name);
                if s.is_spin {
                    assert!(spin_rule(&m, s).unwrap().is_clean(), "{}", m.name);
                }
                assert!(psc_rule(&m, s, None).is_clean(), "{}", m.name);
            }
        }
    }
}
