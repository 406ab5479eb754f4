//! Order-by-order linearization of a group whose generators share one
//! diagonal linear part with prime-power spectrum.

use std::fmt;

use super::claims::common_prime_power;
use super::{check_product_identity, GroupPresentation};
use crate::cyclo::CycloNum;
use crate::error::Result;
use crate::jet::{GermJet, LinearPart, Monomial, Poly};
use crate::resonance::{homological_solve, identity_plus, split_slice};
use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    GeneratorsDiffer,
    ResonantCoefficientNonzero,
    PreconditionViolated,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::GeneratorsDiffer => "generators-differ",
            FailureReason::ResonantCoefficientNonzero => "resonant-coefficient-nonzero",
            FailureReason::PreconditionViolated => "precondition-violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Offending {
    pub generator: usize,
    pub coordinate: usize,
    pub monomial: Monomial,
    pub coeff: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearizationOutcome {
    Success {
        /// χ with χ ∘ f ∘ χ^-1 linear for every generator f.
        conjugator: GermJet,
        diagonal_generator: LinearPart,
        group_order: u64,
    },
    Failure {
        degree: u32,
        reason: FailureReason,
        detail: String,
        /// Orders of the eigenvalues when they were computed (None = not a
        /// root of unity).
        eigenvalue_orders: Vec<Option<u64>>,
        offending: Vec<Offending>,
    },
}

impl LinearizationOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, LinearizationOutcome::Success { .. })
    }
}

impl fmt::Display for LinearizationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearizationOutcome::Success { group_order, .. } => {
                write!(f, "success: finite cyclic of order {group_order}")
            }
            LinearizationOutcome::Failure {
                degree,
                reason,
                detail,
                ..
            } => write!(f, "failure at degree {degree}: {} ({detail})", reason.as_str()),
        }
    }
}

fn precondition(detail: String, eigenvalue_orders: Vec<Option<u64>>) -> LinearizationOutcome {
    LinearizationOutcome::Failure {
        degree: 1,
        reason: FailureReason::PreconditionViolated,
        detail,
        eigenvalue_orders,
        offending: Vec::new(),
    }
}

fn render_orders(orders: &[Option<u64>]) -> String {
    orders
        .iter()
        .map(|o| o.map_or("infinite".to_string(), |m| m.to_string()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn offenders(slices: &[Vec<Poly>], keys: impl Fn(usize, &Monomial) -> bool) -> Vec<Offending> {
    let mut out = Vec::new();
    for (g, slice) in slices.iter().enumerate() {
        for (s, poly) in slice.iter().enumerate() {
            for (q, c) in poly {
                if keys(s, q) {
                    out.push(Offending {
                        generator: g,
                        coordinate: s,
                        monomial: q.clone(),
                        coeff: c.clone(),
                    });
                }
            }
        }
    }
    out
}

pub fn linearize_group(g: &GroupPresentation) -> Result<LinearizationOutcome> {
    let gens = g.generators();
    let a = gens[0].linear_part();
    if !check_product_identity(g).0 {
        return Ok(precondition(
            "the product of the generators is not the identity".into(),
            Vec::new(),
        ));
    }
    if let Some(i) = gens.iter().position(|f| f.linear_part() != a) {
        return Ok(precondition(
            format!("{} has a different linear part from {}", g.names()[i], g.names()[0]),
            Vec::new(),
        ));
    }
    if !a.is_diagonal() {
        return Ok(precondition("the common linear part is not diagonal".into(), Vec::new()));
    }
    let lambda = a.diagonal();
    let orders: Vec<Option<u64>> = lambda.iter().map(CycloNum::root_of_unity_order).collect();
    let finite: Option<Vec<u64>> = orders.iter().copied().collect();
    let Some(finite) = finite else {
        return Ok(precondition(
            format!("eigenvalue orders {}: not all roots of unity", render_orders(&orders)),
            orders,
        ));
    };
    if common_prime_power(&finite).is_none() {
        return Ok(precondition(
            format!(
                "eigenvalue orders {} are not powers of one common prime",
                render_orders(&orders)
            ),
            orders,
        ));
    }
    let group_order = finite.iter().fold(1u64, |acc, m| acc.lcm(m));

    let mut current: Vec<GermJet> = gens.to_vec();
    let mut conjugator = GermJet::identity(gens[0].field(), gens[0].dim(), gens[0].order());
    for k in 2..=gens[0].order() {
        let slices: Vec<Vec<Poly>> = current.iter().map(|f| f.slice(k)).collect();
        if slices.iter().any(|s| s != &slices[0]) {
            let offending = offenders(&slices, |s, q| {
                let c0 = slices[0][s].get(q);
                slices.iter().any(|other| other[s].get(q) != c0)
            });
            return Ok(LinearizationOutcome::Failure {
                degree: k,
                reason: FailureReason::GeneratorsDiffer,
                detail: format!("degree-{k} coefficients differ between generators"),
                eigenvalue_orders: orders,
                offending,
            });
        }
        let (resonant, nonresonant) = split_slice(&lambda, &slices[0]);
        if resonant.iter().any(|p| !p.is_empty()) {
            return Ok(LinearizationOutcome::Failure {
                degree: k,
                reason: FailureReason::ResonantCoefficientNonzero,
                detail: format!("nonzero resonant coefficient at degree {k}"),
                eigenvalue_orders: orders,
                offending: offenders(&[resonant], |_, _| true),
            });
        }
        if nonresonant.iter().all(Poly::is_empty) {
            continue;
        }
        let h = identity_plus(&conjugator, &homological_solve(&a, &nonresonant)?);
        let hinv = h.invert();
        let mut done: Vec<(GermJet, GermJet)> = Vec::new();
        for f in current.iter_mut() {
            let next = match done.iter().find(|(x, _)| x == f) {
                Some((_, y)) => y.clone(),
                None => {
                    let y = hinv.compose_unchecked(f).compose_unchecked(&h);
                    done.push((f.clone(), y.clone()));
                    y
                }
            };
            *f = next;
        }
        conjugator = hinv.compose_unchecked(&conjugator);
    }
    Ok(LinearizationOutcome::Success {
        conjugator,
        diagonal_generator: a,
        group_order,
    })
}
