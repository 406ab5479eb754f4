use std::fmt;

use super::GroupElement;
use crate::cyclo::{prime_factors, CycloNum};
use crate::error::{Error, Result};
use crate::jet::{InfiniteOrder, Order};

/// The affine map w -> a w + b.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub a: CycloNum,
    pub b: CycloNum,
}

impl AffineMap {
    pub fn new(a: CycloNum, b: CycloNum) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::BadMultiplier);
        }
        a.checked_add(&b)?;
        Ok(AffineMap { a, b })
    }
}

impl GroupElement for AffineMap {
    fn compose(&self, other: &Self) -> Self {
        AffineMap {
            a: &self.a * &other.a,
            b: &(&self.a * &other.b) + &self.b,
        }
    }

    fn inverse(&self) -> Self {
        let ai = self.a.inv().expect("nonzero multiplier");
        AffineMap {
            b: -(&self.b * &ai),
            a: ai,
        }
    }

    fn identity_like(&self) -> Self {
        AffineMap {
            a: CycloNum::one(self.a.field()),
            b: CycloNum::zero(self.a.field()),
        }
    }

    fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.a.checked_add(&other.a).map(|_| ())
    }

    fn element_order(&self) -> Order {
        if self.a.is_one() {
            return if self.b.is_zero() {
                Order::Finite(1)
            } else {
                Order::Infinite(InfiniteOrder::NotDiagonalizable { power: 1 })
            };
        }
        // a != 1: conjugate to w -> a w
        match self.a.root_of_unity_order() {
            Some(l) => Order::Finite(l),
            None => Order::Infinite(InfiniteOrder::EigenvalueNotRootOfUnity {
                index: 0,
                value: self.a.clone(),
            }),
        }
    }

    fn conjugacy_invariant(&self) -> Vec<CycloNum> {
        vec![self.a.clone()]
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*w + ({})", self.a, self.b)
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Maps w -> eta w + beta_i sharing one multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    pub eta: CycloNum,
    pub betas: Vec<CycloNum>,
}

impl AffineFamily {
    pub fn maps(&self) -> Result<Vec<AffineMap>> {
        self.betas
            .iter()
            .map(|b| AffineMap::new(self.eta.clone(), b.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyLemmaBranch {
    /// l has at least two distinct prime divisors.
    TwoPrimes,
    /// l = q^m and all translations agree.
    PrimePowerEqual { prime: u64 },
    /// l = q^m and some translations differ.
    PrimePowerDistinct { prime: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyLemmaVerdict {
    pub pairwise_conjugate: bool,
    pub order: u64,
    pub branch: KeyLemmaBranch,
}

impl fmt::Display for KeyLemmaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.order;
        match self.branch {
            KeyLemmaBranch::TwoPrimes => write!(f, "conjugate: l = {l} has two distinct prime divisors"),
            KeyLemmaBranch::PrimePowerEqual { prime } => {
                write!(f, "conjugate: l = {l} is a power of {prime} and all translations are equal")
            }
            KeyLemmaBranch::PrimePowerDistinct { prime } => {
                write!(f, "not conjugate: l = {l} is a power of {prime} and the translations differ")
            }
        }
    }
}

/// Whether the maps w -> eta w + beta_i are pairwise conjugate in the group
/// they generate, with l the order of eta.
pub fn affine_keylemma_decide(family: &AffineFamily) -> Result<KeyLemmaVerdict> {
    let order = match family.eta.root_of_unity_order() {
        Some(l) if l > 1 => l,
        Some(_) => return Err(Error::Precondition("eta = 1; the lemma needs l > 1".into())),
        None => {
            return Err(Error::Precondition(format!(
                "eta = {} is not a root of unity",
                family.eta
            )))
        }
    };
    let primes = prime_factors(order);
    let branch = if primes.len() >= 2 {
        KeyLemmaBranch::TwoPrimes
    } else if family.betas.windows(2).all(|w| w[0] == w[1]) {
        KeyLemmaBranch::PrimePowerEqual { prime: primes[0] }
    } else {
        KeyLemmaBranch::PrimePowerDistinct { prime: primes[0] }
    };
    Ok(KeyLemmaVerdict {
        pairwise_conjugate: !matches!(branch, KeyLemmaBranch::PrimePowerDistinct { .. }),
        order,
        branch,
    })
}
