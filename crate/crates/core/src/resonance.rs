//! Multiplicative resonances and Poincaré–Dulac normalization of a single
//! jet with diagonal linear part.

use std::fmt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::jet::{GermJet, LinearPart, Monomial, Poly};

/// A resonance λ^Q = λ_s with |Q| >= 2. `coordinate` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResonanceRecord {
    pub coordinate: usize,
    pub order: Monomial,
}

impl fmt::Display for ResonanceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, Q={:?})", self.coordinate + 1, self.order.exponents())
    }
}

/// λ^Q for a multi-index Q.
pub fn eigen_power(eigenvalues: &[CycloNum], q: &Monomial) -> CycloNum {
    let field = eigenvalues[0].field();
    eigenvalues
        .iter()
        .zip(q.exponents())
        .filter(|(_, &e)| e > 0)
        .fold(CycloNum::one(field), |acc, (l, &e)| &acc * &l.pow(e as u64))
}

pub fn is_resonant(eigenvalues: &[CycloNum], coordinate: usize, q: &Monomial) -> bool {
    eigen_power(eigenvalues, q) == eigenvalues[coordinate]
}

fn check_eigenvalues(eigenvalues: &[CycloNum]) -> Result<()> {
    if eigenvalues.is_empty() {
        return Err(Error::Shape("no eigenvalues".into()));
    }
    match eigenvalues.iter().position(CycloNum::is_zero) {
        Some(i) => Err(Error::ZeroEigenvalue(i)),
        None => Ok(()),
    }
}

/// All resonances with 2 <= |Q| <= k, sorted by coordinate and then
/// graded-lex Q.
pub fn enumerate_resonances(eigenvalues: &[CycloNum], k: u32) -> Result<Vec<ResonanceRecord>> {
    check_eigenvalues(eigenvalues)?;
    let n = eigenvalues.len();
    let monomials = if k >= 2 {
        Monomial::in_degree_range(n, 2, k)
    } else {
        Vec::new()
    };
    let powers: Vec<CycloNum> = monomials.iter().map(|q| eigen_power(eigenvalues, q)).collect();
    let mut out = Vec::new();
    for (s, lambda) in eigenvalues.iter().enumerate() {
        for (q, p) in monomials.iter().zip(&powers) {
            if p == lambda {
                out.push(ResonanceRecord {
                    coordinate: s,
                    order: q.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Solves the homological equation for a homogeneous slice with diagonal
/// linear part: b_{s,Q} = a_{s,Q} / (λ^Q - λ_s). Conjugating the jet as
/// h^-1 ∘ f ∘ h with h = Id + P cancels those terms.
pub fn homological_solve(linear: &LinearPart, slice: &[Poly]) -> Result<Vec<Poly>> {
    if !linear.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let eigenvalues = linear.diagonal();
    check_eigenvalues(&eigenvalues)?;
    if slice.len() != eigenvalues.len() {
        return Err(Error::Shape(format!(
            "slice has {} coordinates, linear part is {}x{}",
            slice.len(),
            eigenvalues.len(),
            eigenvalues.len()
        )));
    }
    slice
        .iter()
        .enumerate()
        .map(|(s, poly)| {
            poly.iter()
                .map(|(q, a)| {
                    let d = &eigen_power(&eigenvalues, q) - &eigenvalues[s];
                    if d.is_zero() {
                        return Err(Error::ResonantKey {
                            coordinate: s + 1,
                            monomial: q.to_string(),
                        });
                    }
                    Ok((q.clone(), a.checked_div(&d)?))
                })
                .collect()
        })
        .collect()
}

/// A nonlinear coefficient (coordinate s, monomial Q, value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coordinate: usize,
    pub monomial: Monomial,
    pub coeff: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub normal_form: GermJet,
    /// χ with χ ∘ f ∘ χ^-1 = normal_form.
    pub conjugator: GermJet,
    /// Nonresonant coefficients as they stood just before their degree was
    /// eliminated.
    pub removed: Vec<Term>,
}

/// `Id + P` for a homogeneous polynomial map P.
pub(crate) fn identity_plus(f: &GermJet, p: &[Poly]) -> GermJet {
    GermJet::identity(f.field(), f.dim(), f.order()).add_polys(p)
}

/// Splits a slice into (resonant, nonresonant) parts.
pub(crate) fn split_slice(eigenvalues: &[CycloNum], slice: &[Poly]) -> (Vec<Poly>, Vec<Poly>) {
    let mut res = vec![Poly::new(); slice.len()];
    let mut non = vec![Poly::new(); slice.len()];
    for (s, poly) in slice.iter().enumerate() {
        for (q, c) in poly {
            let dst = if is_resonant(eigenvalues, s, q) {
                &mut res[s]
            } else {
                &mut non[s]
            };
            dst.insert(q.clone(), c.clone());
        }
    }
    (res, non)
}

/// Removes every nonresonant monomial up to the truncation order, one
/// degree at a time.
pub fn poincare_dulac_normalize(f: &GermJet) -> Result<NormalizationResult> {
    let linear = f.linear_part();
    if !linear.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let eigenvalues = linear.diagonal();
    let mut current = f.clone();
    let mut conjugator = GermJet::identity(f.field(), f.dim(), f.order());
    let mut removed = Vec::new();
    for k in 2..=f.order() {
        let (_, nonresonant) = split_slice(&eigenvalues, &current.slice(k));
        if nonresonant.iter().all(Poly::is_empty) {
            continue;
        }
        for (s, poly) in nonresonant.iter().enumerate() {
            removed.extend(poly.iter().map(|(q, c)| Term {
                coordinate: s,
                monomial: q.clone(),
                coeff: c.clone(),
            }));
        }
        let h = identity_plus(f, &homological_solve(&linear, &nonresonant)?);
        let hinv = h.invert();
        current = hinv.compose_unchecked(&current).compose_unchecked(&h);
        conjugator = hinv.compose_unchecked(&conjugator);
    }
    Ok(NormalizationResult {
        normal_form: current,
        conjugator,
        removed,
    })
}
