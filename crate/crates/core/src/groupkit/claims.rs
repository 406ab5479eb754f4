//! Per-monomial morphisms from the group to (C, +) and to affine maps,
//! evaluated on the generators at the lowest nonlinear degree.

use super::{affine_keylemma_decide, check_product_identity, AffineFamily, GroupPresentation, KeyLemmaVerdict};
use crate::cyclo::{prime_factors, CycloNum};
use crate::error::{Error, Result};
use crate::jet::{GermJet, Monomial};
use crate::resonance::{eigen_power, is_resonant};

/// λ^Q = λ_r: φ(f) = a_{r,Q}(f) / (linear coefficient of f at r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantClaim {
    pub coordinate: usize,
    pub monomial: Monomial,
    pub phi: Vec<CycloNum>,
    /// φ(f_a ∘ f_b) = φ(f_a) + φ(f_b) for every ordered pair of generators.
    pub additive: bool,
    pub sum: CycloNum,
    pub all_equal: bool,
    /// The product is Id and all φ agree, so (count) · φ = 0 and the shared
    /// coefficient vanishes.
    pub forced_zero: bool,
}

/// λ^Q != λ_r: the generators map to w -> η w + β_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonresonantClaim {
    pub coordinate: usize,
    pub monomial: Monomial,
    pub family: AffineFamily,
    pub eta_order: Option<u64>,
    /// p^(s_1 + ... + s_n) when every eigenvalue order is a power of one
    /// prime p.
    pub prime_power_bound: Option<u64>,
    pub order_differs: bool,
    pub keylemma: Option<KeyLemmaVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimEntry {
    Resonant(ResonantClaim),
    Nonresonant(NonresonantClaim),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub degree: u32,
    pub product_is_identity: bool,
    pub entries: Vec<ClaimEntry>,
}

fn linear_coeff(f: &GermJet, r: usize) -> CycloNum {
    f.coeff(r, &Monomial::unit(f.dim(), r))
}

fn phi(f: &GermJet, r: usize, q: &Monomial) -> CycloNum {
    f.coeff(r, q)
        .checked_div(&linear_coeff(f, r))
        .expect("diagonal linear part has nonzero entries")
}

/// p^(Σ s_j) if every order is a power of one prime p.
pub(crate) fn common_prime_power(orders: &[u64]) -> Option<(u64, u64)> {
    let mut prime = None;
    let mut total = 1u64;
    for &o in orders {
        if o == 1 {
            continue;
        }
        let ps = prime_factors(o);
        if ps.len() != 1 || prime.is_some_and(|p| p != ps[0]) {
            return None;
        }
        prime = Some(ps[0]);
        total = total.checked_mul(o)?;
    }
    Some((prime.unwrap_or(1), total))
}

pub fn claim_morphism_check(g: &GroupPresentation, k: u32) -> Result<ClaimReport> {
    let gens = g.generators();
    let first = &gens[0];
    let a = first.linear_part();
    if !a.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if gens.iter().any(|f| f.linear_part() != a) {
        return Err(Error::Precondition("generators have different linear parts".into()));
    }
    if k < 2 || k > first.order() {
        return Err(Error::Precondition(format!(
            "degree {k} outside 2..={}",
            first.order()
        )));
    }
    if gens
        .iter()
        .any(|f| f.lowest_nonlinear_degree().is_some_and(|d| d < k))
    {
        return Err(Error::Precondition(format!(
            "a generator has nonlinear terms below degree {k}"
        )));
    }
    let lambda = a.diagonal();
    let n = lambda.len();
    let (product_is_identity, _) = check_product_identity(g);
    let orders: Option<Vec<u64>> = lambda.iter().map(CycloNum::root_of_unity_order).collect();
    let bound = orders.as_deref().and_then(common_prime_power).map(|(_, t)| t);

    let mut entries = Vec::new();
    for r in 0..n {
        for q in Monomial::of_degree(n, k) {
            if is_resonant(&lambda, r, &q) {
                let phis: Vec<CycloNum> = gens.iter().map(|f| phi(f, r, &q)).collect();
                let additive = gens.iter().enumerate().all(|(i, f)| {
                    gens.iter().enumerate().all(|(j, h)| {
                        phi(&f.compose_unchecked(h), r, &q) == &phis[i] + &phis[j]
                    })
                });
                let sum = phis.iter().fold(CycloNum::zero(first.field()), |s, x| &s + x);
                let all_equal = phis.windows(2).all(|w| w[0] == w[1]);
                entries.push(ClaimEntry::Resonant(ResonantClaim {
                    coordinate: r,
                    monomial: q,
                    phi: phis,
                    additive,
                    sum,
                    all_equal,
                    forced_zero: product_is_identity && all_equal,
                }));
            } else {
                let lq = eigen_power(&lambda, &q);
                let family = AffineFamily {
                    eta: lambda[r].checked_div(&lq)?,
                    betas: gens
                        .iter()
                        .map(|f| f.coeff(r, &q).checked_div(&lq))
                        .collect::<Result<_>>()?,
                };
                let eta_order = family.eta.root_of_unity_order();
                entries.push(ClaimEntry::Nonresonant(NonresonantClaim {
                    coordinate: r,
                    monomial: q,
                    keylemma: affine_keylemma_decide(&family).ok(),
                    order_differs: bound.is_some() && eta_order != bound,
                    prime_power_bound: bound,
                    eta_order,
                    family,
                }));
            }
        }
    }
    Ok(ClaimReport {
        degree: k,
        product_is_identity,
        entries,
    })
}
