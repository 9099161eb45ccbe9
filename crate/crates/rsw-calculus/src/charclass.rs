//! Stiefel–Whitney classes of virtual bundles over a torus, and binomial
//! coefficients with arbitrary integer upper index.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Mod2Class, Monomial, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharClassError {
    #[error("binomial lower index {0} is negative")]
    NegativeLowerIndex(i64),
    #[error("total class {0} does not have constant term 1")]
    NonUnitTotal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `a(a-1)…(a-b+1)/b!` for any integer `a`.
pub fn binom_int(a: i64, b: i64) -> Result<BigInt, CharClassError> {
    if b < 0 {
        return Err(CharClassError::NegativeLowerIndex(b));
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= BigInt::from(a) - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Parity of `binom_int(a, b)`. Lucas for `a ≥ 0`; negative `a` goes through
/// `binom(a, b) = (-1)^b binom(b - a - 1, b)`.
pub fn binom_mod2(a: i64, b: i64) -> Result<bool, CharClassError> {
    if b < 0 {
        return Err(CharClassError::NegativeLowerIndex(b));
    }
    let top = if a >= 0 {
        a as i128
    } else {
        b as i128 - a as i128 - 1
    };
    let b = b as i128;
    Ok(b & !top == 0)
}

/// Parity variant that treats a negative lower index as zero, matching the
/// usual convention inside summation formulas.
pub fn binom_mod2_or_zero(a: i64, b: i64) -> bool {
    b >= 0 && binom_mod2(a, b).unwrap_or(false)
}

/// Formal difference of real bundles: rank plus total Stiefel–Whitney class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "VbRepr")]
pub struct VirtualBundle {
    rank: i64,
    total: Mod2Class,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VbRepr {
    rank: i64,
    total: Mod2Class,
}

impl TryFrom<VbRepr> for VirtualBundle {
    type Error = CharClassError;
    fn try_from(r: VbRepr) -> Result<Self, CharClassError> {
        VirtualBundle::new(r.rank, r.total)
    }
}

impl VirtualBundle {
    pub fn new(rank: i64, total: Mod2Class) -> Result<Self, CharClassError> {
        if !total.constant_term() {
            return Err(CharClassError::NonUnitTotal(total.to_string()));
        }
        Ok(VirtualBundle { rank, total })
    }

    pub fn trivial(beta: u32, rank: i64) -> Self {
        VirtualBundle {
            rank,
            total: Mod2Class::one(beta),
        }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total(&self) -> &Mod2Class {
        &self.total
    }

    pub fn beta(&self) -> u32 {
        self.total.beta()
    }

    /// `w_k`; zero outside `0..=β`.
    pub fn w(&self, k: i64) -> Mod2Class {
        self.total.degree_part(k)
    }

    pub fn invert(&self) -> Self {
        // 1 + x with x nilpotent: the inverse is 1 + x + x² + … (signs vanish mod 2).
        let beta = self.beta();
        let x = self.total.add(&Mod2Class::one(beta)).expect("same beta");
        let mut inv = Mod2Class::one(beta);
        let mut power = Mod2Class::one(beta);
        for _ in 0..=beta {
            power = power.cup(&x).expect("same beta");
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power).expect("same beta");
        }
        VirtualBundle {
            rank: -self.rank,
            total: inv,
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, CharClassError> {
        Ok(VirtualBundle {
            rank: self.rank + other.rank,
            total: self.total.cup(&other.total)?,
        })
    }

    /// External sum over the product torus.
    pub fn kunneth_sum(&self, other: &Self) -> Result<Self, CharClassError> {
        let total = crate::ring::kunneth(&self.total, &other.total)?;
        Ok(VirtualBundle {
            rank: self.rank + other.rank,
            total,
        })
    }

    /// Twist by a line bundle with `w₁ = λ`. Since `λ² = 0`,
    /// `w_k(L⊗V) = w_k(V) + (rank − k + 1)·λ·w_{k−1}(V)`.
    pub fn tensor_by_line(&self, lambda: &Mod2Class) -> Result<Self, CharClassError> {
        if lambda.beta() != self.beta() {
            return Err(RingError::BetaMismatch {
                left: self.beta(),
                right: lambda.beta(),
            }
            .into());
        }
        if !lambda.is_homogeneous_of(1) {
            return Err(RingError::NotDegreeOne(lambda.to_string()).into());
        }
        let mut total = self.total.clone();
        for k in 1..=self.beta() as i64 + 1 {
            if (self.rank - k + 1).rem_euclid(2) == 1 {
                total = total.add(&lambda.cup(&self.w(k - 1))?)?;
            }
        }
        Ok(VirtualBundle {
            rank: self.rank,
            total,
        })
    }

    /// True when every positive-degree class vanishes.
    pub fn is_stably_trivial(&self) -> bool {
        self.total.is_one()
    }

    pub fn embed(&self, beta: u32, offset: u32) -> Result<Self, CharClassError> {
        Ok(VirtualBundle {
            rank: self.rank,
            total: self.total.embed(beta, offset)?,
        })
    }
}

pub fn vb_invert(v: &VirtualBundle) -> VirtualBundle {
    v.invert()
}

pub fn vb_sum(a: &VirtualBundle, b: &VirtualBundle) -> Result<VirtualBundle, CharClassError> {
    a.sum(b)
}

pub fn vb_w(v: &VirtualBundle, k: i64) -> Mod2Class {
    v.w(k)
}

pub fn tensor_by_line(
    v: &VirtualBundle,
    lambda: &Mod2Class,
) -> Result<VirtualBundle, CharClassError> {
    v.tensor_by_line(lambda)
}

/// Builds a total class `1 + …` from generator lists of the positive-degree monomials.
pub fn total_from(beta: u32, positive: &[&[u32]]) -> Result<Mod2Class, CharClassError> {
    let mut ms = vec![Monomial::ONE];
    for g in positive {
        ms.push(Monomial::from_gens(g, beta)?);
    }
    Ok(Mod2Class::from_monomials(beta, ms)?)
}

/// Exact `binom_int` reduced mod 2, used as an oracle in tests.
pub fn parity(n: &BigInt) -> bool {
    n.bit(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_int(4, 2).unwrap(), bi(6));
        assert_eq!(binom_int(-5, 0).unwrap(), bi(1));
        assert_eq!(binom_int(-1, 3).unwrap(), bi(-1));
        assert_eq!(binom_int(3, 5).unwrap(), bi(0));
        assert_eq!(binom_int(-2, 1).unwrap(), bi(-2));
        assert!(binom_int(3, -1).is_err());
        assert!(!binom_mod2(4, 2).unwrap());
        assert!(binom_mod2(3, 1).unwrap());
        for k in 0..=10 {
            assert!(binom_mod2(-1, k).unwrap());
        }
        assert!(!binom_mod2(2, 3).unwrap());
    }

    #[test]
    fn invert_examples() {
        let v = VirtualBundle::trivial(0, 3).invert();
        assert_eq!(v.rank(), -3);
        assert!(v.total().is_one());
        let t = total_from(1, &[&[1]]).unwrap();
        assert_eq!(
            VirtualBundle::new(1, t.clone()).unwrap().invert().total(),
            &t
        );
        let t = total_from(4, &[&[1, 2]]).unwrap();
        assert_eq!(
            VirtualBundle::new(2, t.clone()).unwrap().invert().total(),
            &t
        );
        // (1 + v1 + v2)^{-1} = 1 + v1 + v2 + (v1 + v2)^2 = 1 + v1 + v2 (cross terms cancel)
        let t = total_from(2, &[&[1], &[2]]).unwrap();
        let v = VirtualBundle::new(0, t).unwrap();
        assert!(v.sum(&v.invert()).unwrap().total().is_one());
    }

    #[test]
    fn sum_examples() {
        let a = VirtualBundle::new(1, total_from(2, &[&[1]]).unwrap()).unwrap();
        let b = VirtualBundle::new(1, total_from(2, &[&[2]]).unwrap()).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(s.total(), &total_from(2, &[&[1], &[2], &[1, 2]]).unwrap());
        assert_eq!(s.rank(), 2);
        let t = a.sum(&VirtualBundle::trivial(2, 5)).unwrap();
        assert_eq!((t.rank(), t.total()), (6, a.total()));
        let z = a.sum(&a.invert()).unwrap();
        assert_eq!(z.rank(), 0);
        assert!(z.total().is_one());
    }

    #[test]
    fn w_examples() {
        let v = VirtualBundle::new(0, total_from(2, &[&[1], &[1, 2]]).unwrap()).unwrap();
        assert!(v.w(0).is_one());
        assert!(v.w(-1).is_zero());
        assert_eq!(v.w(2), Mod2Class::from_gen_lists(2, &[&[1, 2]]).unwrap());
        assert!(v.w(3).is_zero());
    }

    #[test]
    fn tensor_examples() {
        let v1 = Mod2Class::generator(1, 1).unwrap();
        let v = VirtualBundle::trivial(1, 1);
        assert_eq!(v.tensor_by_line(&Mod2Class::zero(1)).unwrap(), v);
        // rank-one oracle: w1(L ⊗ L') = w1(L) + w1(L')
        assert_eq!(
            v.tensor_by_line(&v1).unwrap().total(),
            &total_from(1, &[&[1]]).unwrap()
        );
        let odd = VirtualBundle::new(-3, total_from(1, &[&[1]]).unwrap()).unwrap();
        assert!(odd.tensor_by_line(&v1).unwrap().w(1).is_zero());
        assert!(v.tensor_by_line(&Mod2Class::one(1)).is_err());
    }
}
