//! Exterior algebras `Λ(v₁…v_β)` over Z₂ and Z, the cohomology rings of a
//! β-torus, plus a Laurent extension in one extra degree-one variable `u`.
//!
//! Monomials are subsets of `{1..β}` stored as bitmasks (bit `i-1` is `vᵢ`).
//! Integer monomials are always written with generators in increasing order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported generator count.
pub const MAX_BETA: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("dimension mismatch: beta {left} vs beta {right}")]
    BetaMismatch { left: u32, right: u32 },
    #[error("beta {0} exceeds the supported maximum of {MAX_BETA}")]
    BetaTooLarge(u32),
    #[error("generator v{gen} is outside 1..={beta}")]
    GeneratorOutOfRange { gen: u32, beta: u32 },
    #[error("generators {0:?} are not strictly increasing")]
    NotIncreasing(Vec<u32>),
    #[error("monomial {0} listed twice")]
    DuplicateMonomial(String),
    #[error("zero coefficient stored for monomial {0}")]
    ZeroCoefficient(String),
    #[error("expected a homogeneous degree-1 class, got {0}")]
    NotDegreeOne(String),
}

fn check_beta(beta: u32) -> Result<(), RingError> {
    if beta > MAX_BETA {
        Err(RingError::BetaTooLarge(beta))
    } else {
        Ok(())
    }
}

fn same_beta(a: u32, b: u32) -> Result<u32, RingError> {
    if a == b {
        Ok(a)
    } else {
        Err(RingError::BetaMismatch { left: a, right: b })
    }
}

/// A product of distinct generators. Ordered lexicographically by the
/// increasing generator list, so `1 < v1 < v1v2 < v2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Generator `vᵢ` (1-based).
    pub fn generator(i: u32) -> Self {
        Monomial(1u64 << (i - 1))
    }

    /// Builds a monomial from a strictly increasing list of 1-based generators.
    pub fn from_gens(gens: &[u32], beta: u32) -> Result<Self, RingError> {
        let mut bits = 0u64;
        let mut prev = 0u32;
        for &g in gens {
            if g == 0 || g > beta {
                return Err(RingError::GeneratorOutOfRange { gen: g, beta });
            }
            if g <= prev {
                return Err(RingError::NotIncreasing(gens.to_vec()));
            }
            prev = g;
            bits |= 1u64 << (g - 1);
        }
        Ok(Monomial(bits))
    }

    pub fn gens(self) -> Vec<u32> {
        (0..64)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// All generators `v₁…v_β`.
    pub fn top(beta: u32) -> Self {
        if beta == 64 {
            Monomial(u64::MAX)
        } else {
            Monomial((1u64 << beta) - 1)
        }
    }

    fn shifted(self, by: u32) -> Self {
        if self.0 == 0 {
            self
        } else {
            Monomial(self.0 << by)
        }
    }

    /// Sign of `self ⌣ other` relative to the increasing-order monomial, or
    /// `None` when they share a generator.
    fn koszul(self, other: Monomial) -> Option<bool> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if b >= 63 { 0 } else { self.0 >> (b + 1) };
            swaps += above.count_ones();
        }
        Some(swaps % 2 == 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let t = (self.0 ^ other.0).trailing_zeros();
        let self_owns = self.0 >> t & 1 == 1;
        let rest = if self_owns { other.0 } else { self.0 };
        let rest_continues = t < 63 && rest >> (t + 1) != 0;
        // The owner of bit t is smaller exactly when the other list continues
        // past t; otherwise the other list is a proper prefix.
        match (self_owns, rest_continues) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for g in self.gens() {
            write!(f, "v{g}")?;
        }
        Ok(())
    }
}

/// Element of `H*(T^β; Z₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Mod2Repr", into = "Mod2Repr")]
pub struct Mod2Class {
    beta: u32,
    monomials: BTreeSet<Monomial>,
}

impl Mod2Class {
    pub fn zero(beta: u32) -> Self {
        Mod2Class {
            beta,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(beta: u32) -> Self {
        Self::monomial(beta, Monomial::ONE)
    }

    /// `1` or `0` as a degree-0 class.
    pub fn scalar(beta: u32, bit: bool) -> Self {
        if bit {
            Self::one(beta)
        } else {
            Self::zero(beta)
        }
    }

    pub fn monomial(beta: u32, m: Monomial) -> Self {
        Mod2Class {
            beta,
            monomials: BTreeSet::from([m]),
        }
    }

    pub fn generator(beta: u32, i: u32) -> Result<Self, RingError> {
        Ok(Self::monomial(beta, Monomial::from_gens(&[i], beta)?))
    }

    /// Sum of monomials; repeated entries cancel in pairs.
    pub fn from_monomials(
        beta: u32,
        ms: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, RingError> {
        check_beta(beta)?;
        let top = Monomial::top(beta).0;
        let mut out = Self::zero(beta);
        for m in ms {
            if m.0 & !top != 0 {
                let gen = 64 - m.0.leading_zeros();
                return Err(RingError::GeneratorOutOfRange { gen, beta });
            }
            out.toggle(m);
        }
        Ok(out)
    }

    /// Parses monomials given as generator lists, e.g. `[[], [1, 2]]` is `1 + v1v2`.
    pub fn from_gen_lists(beta: u32, lists: &[&[u32]]) -> Result<Self, RingError> {
        let ms = lists
            .iter()
            .map(|g| Monomial::from_gens(g, beta))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_monomials(beta, ms)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.monomials.iter().copied()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.monomials.contains(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.contains(Monomial::ONE)
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .copied()
            .collect();
        Ok(Mod2Class {
            beta: self.beta,
            monomials,
        })
    }

    pub fn cup(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let mut out = Self::zero(self.beta);
        for a in &self.monomials {
            for b in &other.monomials {
                if a.0 & b.0 == 0 {
                    out.toggle(Monomial(a.0 | b.0));
                }
            }
        }
        Ok(out)
    }

    /// `self` scaled by a Z₂ scalar.
    pub fn times(&self, bit: bool) -> Self {
        if bit {
            self.clone()
        } else {
            Self::zero(self.beta)
        }
    }

    pub fn degree_part(&self, k: i64) -> Self {
        let monomials = self
            .monomials
            .iter()
            .filter(|m| m.degree() as i64 == k)
            .copied()
            .collect();
        Mod2Class {
            beta: self.beta,
            monomials,
        }
    }

    /// True when every monomial has degree `k` (the zero class qualifies).
    pub fn is_homogeneous_of(&self, k: i64) -> bool {
        self.monomials.iter().all(|m| m.degree() as i64 == k)
    }

    /// Common degree of all monomials; `None` for zero or mixed classes.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.monomials.iter().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn constant_term(&self) -> bool {
        self.contains(Monomial::ONE)
    }

    /// Pairing with the fundamental class: the coefficient of `v₁…v_β`.
    pub fn pushforward_top(&self) -> bool {
        self.contains(Monomial::top(self.beta))
    }

    /// Same class viewed over a larger generator set, generators shifted up by `offset`.
    pub fn embed(&self, beta: u32, offset: u32) -> Result<Self, RingError> {
        if self.beta + offset > beta {
            return Err(RingError::BetaMismatch {
                left: self.beta + offset,
                right: beta,
            });
        }
        Self::from_monomials(beta, self.monomials.iter().map(|m| m.shifted(offset)))
    }
}

/// External product: `b`'s generators are relabelled to `β₁+1..β₁+β₂`.
pub fn kunneth(a: &Mod2Class, b: &Mod2Class) -> Result<Mod2Class, RingError> {
    let beta = a.beta + b.beta;
    check_beta(beta)?;
    a.embed(beta, 0)?.cup(&b.embed(beta, a.beta)?)
}

pub fn cup(a: &Mod2Class, b: &Mod2Class) -> Result<Mod2Class, RingError> {
    a.cup(b)
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `H*(T^β; Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntRepr", into = "IntRepr")]
pub struct IntClass {
    beta: u32,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl IntClass {
    pub fn zero(beta: u32) -> Self {
        IntClass {
            beta,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(beta: u32, c: impl Into<BigInt>) -> Self {
        Self::term(beta, Monomial::ONE, c)
    }

    pub fn term(beta: u32, m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(beta);
        out.add_term(m, c.into());
        out
    }

    pub fn from_terms(
        beta: u32,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self, RingError> {
        check_beta(beta)?;
        let top = Monomial::top(beta).0;
        let mut out = Self::zero(beta);
        for (m, c) in terms {
            if m.0 & !top != 0 {
                let gen = 64 - m.0.leading_zeros();
                return Err(RingError::GeneratorOutOfRange { gen, beta });
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let entry = self.coeffs.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, -c)).collect();
        IntClass {
            beta: self.beta,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.beta);
        for (m, c) in &self.coeffs {
            out.add_term(*m, c * k);
        }
        out
    }

    /// Signed exterior product.
    pub fn cup(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let mut out = Self::zero(self.beta);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some(negative) = a.koszul(*b) {
                    let c = ca * cb;
                    out.add_term(Monomial(a.0 | b.0), if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn is_homogeneous_of(&self, k: i64) -> bool {
        self.coeffs.keys().all(|m| m.degree() as i64 == k)
    }

    pub fn pushforward_top(&self) -> BigInt {
        self.coeff(Monomial::top(self.beta))
    }

    pub fn embed(&self, beta: u32, offset: u32) -> Result<Self, RingError> {
        if self.beta + offset > beta {
            return Err(RingError::BetaMismatch {
                left: self.beta + offset,
                right: beta,
            });
        }
        Self::from_terms(
            beta,
            self.coeffs
                .iter()
                .map(|(m, c)| (m.shifted(offset), c.clone())),
        )
    }
}

pub fn int_cup(a: &IntClass, b: &IntClass) -> Result<IntClass, RingError> {
    a.cup(b)
}

/// External product over Z. No sign arises since every generator of `b` is
/// placed after every generator of `a`.
pub fn kunneth_int(a: &IntClass, b: &IntClass) -> Result<IntClass, RingError> {
    let beta = a.beta + b.beta;
    check_beta(beta)?;
    a.embed(beta, 0)?.cup(&b.embed(beta, a.beta)?)
}

/// Keeps the monomials with odd coefficient.
pub fn reduce_mod2(a: &IntClass) -> Mod2Class {
    let monomials = a
        .coeffs
        .iter()
        .filter(|(_, c)| c.is_odd())
        .map(|(m, _)| *m)
        .collect();
    Mod2Class {
        beta: a.beta,
        monomials,
    }
}

trait Odd {
    fn is_odd(&self) -> bool;
}

impl Odd for BigInt {
    fn is_odd(&self) -> bool {
        (self % 2u32) != BigInt::zero()
    }
}

impl fmt::Display for IntClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}{m}")?,
            }
        }
        Ok(())
    }
}

/// Integer class modulo an overall sign, stored by its canonical
/// representative: the lexicographically first monomial has positive coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntRepr", into = "IntRepr")]
pub struct UpToSignClass {
    rep: IntClass,
}

impl UpToSignClass {
    pub fn new(c: IntClass) -> Self {
        let flip = c.coeffs.values().next().is_some_and(|c| c.is_negative());
        UpToSignClass {
            rep: if flip { c.neg() } else { c },
        }
    }

    pub fn scalar(beta: u32, c: impl Into<BigInt>) -> Self {
        Self::new(IntClass::scalar(beta, c))
    }

    pub fn zero(beta: u32) -> Self {
        Self::new(IntClass::zero(beta))
    }

    pub fn rep(&self) -> &IntClass {
        &self.rep
    }

    pub fn beta(&self) -> u32 {
        self.rep.beta
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Absolute value of the degree-0 coefficient, when the class is a pure scalar.
    pub fn as_scalar(&self) -> Option<BigInt> {
        match self.rep.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => self.rep.coeffs.get(&Monomial::ONE).map(|c| c.abs()),
            _ => None,
        }
    }

    pub fn cup(&self, other: &Self) -> Result<Self, RingError> {
        Ok(Self::new(self.rep.cup(&other.rep)?))
    }

    pub fn kunneth(&self, other: &Self) -> Result<Self, RingError> {
        Ok(Self::new(kunneth_int(&self.rep, &other.rep)?))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.rep.scale(k))
    }

    pub fn reduce_mod2(&self) -> Mod2Class {
        reduce_mod2(&self.rep)
    }

    pub fn is_homogeneous_of(&self, k: i64) -> bool {
        self.rep.is_homogeneous_of(k)
    }
}

impl From<IntClass> for UpToSignClass {
    fn from(c: IntClass) -> Self {
        Self::new(c)
    }
}

impl fmt::Display for UpToSignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±({})", self.rep)
    }
}

/// Element of `H*(T^β; Z₂)[u, u⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LaurentRepr", into = "LaurentRepr")]
pub struct LaurentClass {
    beta: u32,
    terms: BTreeMap<i64, Mod2Class>,
}

impl LaurentClass {
    pub fn zero(beta: u32) -> Self {
        LaurentClass {
            beta,
            terms: BTreeMap::new(),
        }
    }

    /// `u^k · c`.
    pub fn term(k: i64, c: Mod2Class) -> Self {
        let beta = c.beta;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentClass { beta, terms }
    }

    pub fn u_power(beta: u32, k: i64) -> Self {
        Self::term(k, Mod2Class::one(beta))
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Mod2Class)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_at(*k, c)?;
        }
        Ok(out)
    }

    fn add_at(&mut self, k: i64, c: &Mod2Class) -> Result<(), RingError> {
        let sum = match self.terms.get(&k) {
            Some(prev) => prev.add(c)?,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        same_beta(self.beta, other.beta)?;
        let mut out = Self::zero(self.beta);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_at(i + j, &a.cup(b)?)?;
            }
        }
        Ok(out)
    }

    /// The `u^k` coefficient, zero when absent.
    pub fn coeff(&self, k: i64) -> Mod2Class {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Mod2Class::zero(self.beta))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }
}

pub fn laurent_mul(a: &LaurentClass, b: &LaurentClass) -> Result<LaurentClass, RingError> {
    a.mul(b)
}

pub fn laurent_coeff(a: &LaurentClass, k: i64) -> Mod2Class {
    a.coeff(k)
}

impl fmt::Display for LaurentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("u^{k}·({c})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// JSON representations.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Mod2Repr {
    beta: u32,
    terms: Vec<Mod2Term>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Mod2Term {
    gens: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntRepr {
    beta: u32,
    terms: Vec<IntTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntTerm {
    gens: Vec<u32>,
    coef: Coef,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaurentRepr {
    beta: u32,
    terms: Vec<LaurentTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaurentTerm {
    u: i64,
    gens: Vec<u32>,
}

/// Integer coefficient: a JSON number when it fits in i64, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Coef {
    fn from(c: &BigInt) -> Self {
        match i64::try_from(c) {
            Ok(v) => Coef::Small(v),
            Err(_) => Coef::Big(c.to_string()),
        }
    }
}

impl TryFrom<Coef> for BigInt {
    type Error = String;
    fn try_from(c: Coef) -> Result<Self, String> {
        match c {
            Coef::Small(v) => Ok(BigInt::from(v)),
            Coef::Big(s) => s
                .parse()
                .map_err(|_| format!("invalid integer coefficient {s:?}")),
        }
    }
}

fn parse_monomials(
    beta: u32,
    lists: impl IntoIterator<Item = Vec<u32>>,
) -> Result<Vec<Monomial>, RingError> {
    check_beta(beta)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for gens in lists {
        let m = Monomial::from_gens(&gens, beta)?;
        if !seen.insert(m) {
            return Err(RingError::DuplicateMonomial(m.to_string()));
        }
        out.push(m);
    }
    Ok(out)
}

impl TryFrom<Mod2Repr> for Mod2Class {
    type Error = RingError;
    fn try_from(r: Mod2Repr) -> Result<Self, RingError> {
        let ms = parse_monomials(r.beta, r.terms.into_iter().map(|t| t.gens))?;
        Mod2Class::from_monomials(r.beta, ms)
    }
}

impl From<Mod2Class> for Mod2Repr {
    fn from(c: Mod2Class) -> Self {
        let terms = c
            .monomials
            .iter()
            .map(|m| Mod2Term { gens: m.gens() })
            .collect();
        Mod2Repr {
            beta: c.beta,
            terms,
        }
    }
}

impl TryFrom<IntRepr> for IntClass {
    type Error = String;
    fn try_from(r: IntRepr) -> Result<Self, String> {
        let (gens, coefs): (Vec<_>, Vec<_>) = r.terms.into_iter().map(|t| (t.gens, t.coef)).unzip();
        let ms = parse_monomials(r.beta, gens).map_err(|e| e.to_string())?;
        let mut terms = Vec::new();
        for (m, c) in ms.into_iter().zip(coefs) {
            let c = BigInt::try_from(c)?;
            if c.is_zero() {
                return Err(RingError::ZeroCoefficient(m.to_string()).to_string());
            }
            terms.push((m, c));
        }
        IntClass::from_terms(r.beta, terms).map_err(|e| e.to_string())
    }
}

impl From<IntClass> for IntRepr {
    fn from(c: IntClass) -> Self {
        let terms = c
            .coeffs
            .iter()
            .map(|(m, v)| IntTerm {
                gens: m.gens(),
                coef: v.into(),
            })
            .collect();
        IntRepr {
            beta: c.beta,
            terms,
        }
    }
}

impl TryFrom<IntRepr> for UpToSignClass {
    type Error = String;
    fn try_from(r: IntRepr) -> Result<Self, String> {
        Ok(UpToSignClass::new(IntClass::try_from(r)?))
    }
}

impl From<UpToSignClass> for IntRepr {
    fn from(c: UpToSignClass) -> Self {
        c.rep.into()
    }
}

impl TryFrom<LaurentRepr> for LaurentClass {
    type Error = RingError;
    fn try_from(r: LaurentRepr) -> Result<Self, RingError> {
        check_beta(r.beta)?;
        let mut seen = BTreeSet::new();
        let mut out = LaurentClass::zero(r.beta);
        for t in r.terms {
            let m = Monomial::from_gens(&t.gens, r.beta)?;
            if !seen.insert((t.u, m)) {
                return Err(RingError::DuplicateMonomial(format!("u^{}·{m}", t.u)));
            }
            out.add_at(t.u, &Mod2Class::monomial(r.beta, m))?;
        }
        Ok(out)
    }
}

impl From<LaurentClass> for LaurentRepr {
    fn from(c: LaurentClass) -> Self {
        let mut terms = Vec::new();
        for (k, cls) in &c.terms {
            for m in cls.monomials() {
                terms.push(LaurentTerm {
                    u: *k,
                    gens: m.gens(),
                });
            }
        }
        LaurentRepr {
            beta: c.beta,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(beta: u32, lists: &[&[u32]]) -> Mod2Class {
        Mod2Class::from_gen_lists(beta, lists).unwrap()
    }

    fn int(beta: u32, terms: &[(&[u32], i64)]) -> IntClass {
        IntClass::from_terms(
            beta,
            terms
                .iter()
                .map(|(g, c)| (Monomial::from_gens(g, beta).unwrap(), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn lex_order_of_monomials() {
        let mut ms: Vec<Monomial> = [vec![2], vec![1, 2], vec![], vec![1], vec![1, 3], vec![3]]
            .iter()
            .map(|g| Monomial::from_gens(g, 3).unwrap())
            .collect();
        ms.sort();
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "v1", "v1v2", "v1v3", "v2", "v3"]);
    }

    #[test]
    fn mod2_cup_examples() {
        let v1 = Mod2Class::generator(2, 1).unwrap();
        let v2 = Mod2Class::generator(2, 2).unwrap();
        assert_eq!(v1.cup(&v2).unwrap(), m2(2, &[&[1, 2]]));
        assert!(v1.cup(&v1).unwrap().is_zero());
        let x = m2(2, &[&[], &[1]]);
        assert!(x.cup(&x).unwrap().is_one());
        assert!(matches!(
            v1.cup(&Mod2Class::one(3)),
            Err(RingError::BetaMismatch { .. })
        ));
    }

    #[test]
    fn int_cup_examples() {
        let v1 = int(3, &[(&[1], 1)]);
        let v2 = int(3, &[(&[2], 1)]);
        assert_eq!(v1.cup(&v2).unwrap(), int(3, &[(&[1, 2], 1)]));
        assert_eq!(v2.cup(&v1).unwrap(), int(3, &[(&[1, 2], -1)]));
        let a = int(3, &[(&[1], 3)]);
        let b = int(3, &[(&[2, 3], 2)]);
        assert_eq!(a.cup(&b).unwrap(), int(3, &[(&[1, 2, 3], 6)]));
        // v2v3 ⌣ v1 = v1v2v3 (two transpositions)
        assert_eq!(b.cup(&a).unwrap(), int(3, &[(&[1, 2, 3], 6)]));
        // v3 ⌣ v1v2 = v1v2v3, v2 ⌣ v1v3 = -v1v2v3
        assert_eq!(
            int(3, &[(&[3], 1)]).cup(&int(3, &[(&[1, 2], 1)])).unwrap(),
            int(3, &[(&[1, 2, 3], 1)])
        );
        assert_eq!(
            int(3, &[(&[2], 1)]).cup(&int(3, &[(&[1, 3], 1)])).unwrap(),
            int(3, &[(&[1, 2, 3], -1)])
        );
    }

    #[test]
    fn pushforward_examples() {
        assert!(m2(2, &[&[1, 2]]).pushforward_top());
        assert!(!m2(2, &[&[1]]).pushforward_top());
        assert!(Mod2Class::one(0).pushforward_top());
        assert_eq!(int(2, &[(&[1, 2], -4)]).pushforward_top(), BigInt::from(-4));
    }

    #[test]
    fn kunneth_examples() {
        let v = m2(1, &[&[1]]);
        assert_eq!(kunneth(&v, &v).unwrap(), m2(2, &[&[1, 2]]));
        let c = m2(3, &[&[1, 3], &[2]]);
        assert_eq!(kunneth(&Mod2Class::one(0), &c).unwrap(), c);
        let a = m2(1, &[&[], &[1]]);
        assert_eq!(kunneth(&a, &v).unwrap(), m2(2, &[&[2], &[1, 2]]));
    }

    #[test]
    fn laurent_examples() {
        let v1 = m2(1, &[&[1]]);
        let a = LaurentClass::term(-1, v1.clone());
        let b = LaurentClass::u_power(1, 1);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(0), v1);
        let s = LaurentClass::u_power(1, 1)
            .add(&LaurentClass::term(0, v1.clone()))
            .unwrap();
        assert_eq!(s.mul(&s).unwrap(), LaurentClass::u_power(1, 2));
        assert!(s.coeff(-3).is_zero());
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_mod2(&int(1, &[(&[1], 2)])).is_zero());
        assert_eq!(
            reduce_mod2(&int(2, &[(&[1], 3), (&[2], 4)])),
            m2(2, &[&[1]])
        );
        assert!(reduce_mod2(&IntClass::zero(0)).is_zero());
    }

    #[test]
    fn up_to_sign_canonical() {
        let c = int(2, &[(&[1], -2), (&[2], 5)]);
        let a = UpToSignClass::new(c.clone());
        let b = UpToSignClass::new(c.neg());
        assert_eq!(a, b);
        assert_eq!(
            a.rep().coeff(Monomial::from_gens(&[1], 2).unwrap()),
            BigInt::from(2)
        );
        assert_eq!(
            UpToSignClass::scalar(0, -3).as_scalar(),
            Some(BigInt::from(3))
        );
        assert!(UpToSignClass::zero(0).is_zero());
    }

    #[test]
    fn json_forms() {
        let c = m2(3, &[&[1, 3], &[]]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"beta":3,"terms":[{"gens":[]},{"gens":[1,3]}]}"#);
        assert_eq!(serde_json::from_str::<Mod2Class>(&s).unwrap(), c);

        let i = int(3, &[(&[1, 3], 2)]);
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"beta":3,"terms":[{"gens":[1,3],"coef":2}]}"#);
        assert_eq!(serde_json::from_str::<IntClass>(&s).unwrap(), i);

        let big = IntClass::scalar(0, BigInt::from(3).pow(60));
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains('"'));
        assert_eq!(serde_json::from_str::<IntClass>(&s).unwrap(), big);

        let l = LaurentClass::term(-1, m2(1, &[&[1]]))
            .add(&LaurentClass::u_power(1, 0))
            .unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(
            s,
            r#"{"beta":1,"terms":[{"u":-1,"gens":[1]},{"u":0,"gens":[]}]}"#
        );
        assert_eq!(serde_json::from_str::<LaurentClass>(&s).unwrap(), l);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(serde_json::from_str::<Mod2Class>(r#"{"beta":2,"terms":[{"gens":[3]}]}"#).is_err());
        assert!(
            serde_json::from_str::<Mod2Class>(r#"{"beta":2,"terms":[{"gens":[2,1]}]}"#).is_err()
        );
        assert!(serde_json::from_str::<Mod2Class>(
            r#"{"beta":2,"terms":[{"gens":[1]},{"gens":[1]}]}"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<Mod2Class>(r#"{"beta":2,"terms":[{"gens":[1],"coef":1}]}"#)
                .is_err()
        );
        assert!(
            serde_json::from_str::<IntClass>(r#"{"beta":1,"terms":[{"gens":[1],"coef":0}]}"#)
                .is_err()
        );
    }
}
