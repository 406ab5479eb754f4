use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GermJet, LinearPart};
use crate::cyclo::{divisors, euler_phi, CycloNum, Rational};

/// Default cap on power iteration for linear orders.
pub const DEFAULT_ORDER_BOUND: u64 = 1024;

/// Why an element has infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteOrder {
    /// An eigenvalue (diagonal or triangular entry) is not a root of unity.
    EigenvalueNotRootOfUnity { index: usize, value: CycloNum },
    /// det is not a root of unity, so no power of the matrix is Id.
    DeterminantNotRootOfUnity { det: CycloNum },
    /// Rational 2x2 matrix with real distinct eigenvalues not both +-1.
    RealEigenvalues {
        trace: Rational,
        det: Rational,
        discriminant: Rational,
    },
    /// Rational 2x2 matrix with complex eigenvalues whose trace rules out a
    /// root of unity.
    ComplexEigenvaluesOffUnitCircle { trace: Rational, det: Rational },
    /// L^m is unipotent but not Id, with m the lcm of the eigenvalue orders.
    NotDiagonalizable { power: u64 },
    /// Power iteration exhausted every order a finite-order matrix of this
    /// size over this field can have.
    NoOrderBelowBound { bound: u64 },
    /// The m-th power of the germ is tangent to the identity but not equal to
    /// it; its lowest nonlinear slice grows linearly under iteration.
    TangentToIdentity { power: u64, degree: u32 },
}

impl fmt::Display for InfiniteOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteOrder::EigenvalueNotRootOfUnity { index, value } => {
                write!(f, "eigenvalue {} = {value} is not a root of unity", index + 1)
            }
            InfiniteOrder::DeterminantNotRootOfUnity { det } => {
                write!(f, "determinant {det} is not a root of unity")
            }
            InfiniteOrder::RealEigenvalues {
                trace,
                det,
                discriminant,
            } => write!(
                f,
                "real distinct eigenvalues not both +-1 (trace {trace}, det {det}, discriminant {discriminant})"
            ),
            InfiniteOrder::ComplexEigenvaluesOffUnitCircle { trace, det } => write!(
                f,
                "complex eigenvalues are not roots of unity (trace {trace}, det {det})"
            ),
            InfiniteOrder::NotDiagonalizable { power } => {
                write!(f, "L^{power} is unipotent and not the identity")
            }
            InfiniteOrder::NoOrderBelowBound { bound } => {
                write!(f, "no power up to {bound} is the identity, and no finite order can exceed it")
            }
            InfiniteOrder::TangentToIdentity { power, degree } => write!(
                f,
                "f^{power} is tangent to the identity with nonzero degree-{degree} slice"
            ),
        }
    }
}

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite(InfiniteOrder),
    Inconclusive { bound: u64 },
}

impl Order {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Order::Finite(m) => Some(*m),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Order::Infinite(_))
    }

    /// True when both orders are decided and differ, which rules out
    /// conjugacy.
    pub fn provably_differs(&self, other: &Order) -> bool {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a != b,
            (Order::Finite(_), Order::Infinite(_)) | (Order::Infinite(_), Order::Finite(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite(_) => f.write_str("infinite"),
            Order::Inconclusive { bound } => write!(f, "inconclusive (bound {bound})"),
        }
    }
}

/// Minimal d | m with `is_id(d)`, assuming `is_id(m)`.
fn minimal_divisor(m: u64, mut is_id: impl FnMut(u64) -> bool) -> u64 {
    divisors(m).into_iter().find(|&d| is_id(d)).unwrap_or(m)
}

/// Largest possible order of a finite-order n x n matrix over Q(zeta_N):
/// its eigenvalues are roots of unity of degree <= n phi(N) over Q, and the
/// order is the lcm of at most n of their orders.
fn max_finite_order(n: usize, conductor: u32) -> u64 {
    let cap = n as u64 * euler_phi(conductor as u64);
    // phi(m) >= sqrt(m / 2)
    let limit = 2 * cap * cap + 2;
    let mut candidates: Vec<u64> = (1..=limit).filter(|&m| euler_phi(m) <= cap).collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    candidates
        .iter()
        .take(n)
        .fold(1u64, |acc, &m| acc.saturating_mul(m))
}

fn rational_2x2_order(entries: &[Rational]) -> Order {
    let (a, b, c, d) = (&entries[0], &entries[1], &entries[2], &entries[3]);
    let trace = a + d;
    let det = a * d - b * c;
    let disc = &trace * &trace - Rational::from_integer(4.into()) * &det;
    let one = Rational::one();
    let scalar = b.is_zero() && c.is_zero() && a == d;
    if disc.is_positive() {
        if trace.is_zero() && det == -one {
            return Order::Finite(2);
        }
        return Order::Infinite(InfiniteOrder::RealEigenvalues {
            trace,
            det,
            discriminant: disc,
        });
    }
    if disc.is_zero() {
        let lambda = &trace / Rational::from_integer(2.into());
        if !scalar {
            return Order::Infinite(InfiniteOrder::NotDiagonalizable { power: 1 });
        }
        return if lambda == one {
            Order::Finite(1)
        } else if lambda == -one {
            Order::Finite(2)
        } else {
            Order::Infinite(InfiniteOrder::RealEigenvalues {
                trace,
                det,
                discriminant: disc,
            })
        };
    }
    // complex conjugate pair of modulus sqrt(det); a root of unity needs
    // det = 1 and trace 2 cos(2 pi k / m) rational, i.e. in {-1, 0, 1}
    if det == one && trace.is_integer() && trace.abs() <= one {
        let t = trace.to_integer();
        let m = if t == (-1).into() {
            3
        } else if t.is_zero() {
            4
        } else {
            6
        };
        return Order::Finite(m);
    }
    Order::Infinite(InfiniteOrder::ComplexEigenvaluesOffUnitCircle { trace, det })
}

/// Order of a matrix.
///
/// Exact for diagonal and triangular matrices, for rational 2x2 matrices,
/// and whenever the determinant is not a root of unity. Otherwise powers
/// are computed up to `bound`; if `bound` covers every order a finite-order
/// matrix of this size can have, exhausting it certifies infinite order.
pub fn linear_order(l: &LinearPart, bound: u64) -> Order {
    let n = l.dim();
    if l.is_diagonal() || l.is_lower_triangular() || l.is_upper_triangular() {
        let mut m = 1u64;
        for (index, value) in l.diagonal().into_iter().enumerate() {
            match value.root_of_unity_order() {
                Some(k) => m = m.lcm(&k),
                None => {
                    return Order::Infinite(InfiniteOrder::EigenvalueNotRootOfUnity { index, value })
                }
            }
        }
        if l.is_diagonal() {
            return Order::Finite(m);
        }
        if !l.pow(m).is_identity() {
            return Order::Infinite(InfiniteOrder::NotDiagonalizable { power: m });
        }
        return Order::Finite(minimal_divisor(m, |d| l.pow(d).is_identity()));
    }
    if n == 2 {
        if let Some(entries) = l.as_rational() {
            return rational_2x2_order(&entries);
        }
    }
    let det = l.det();
    if det.root_of_unity_order().is_none() {
        return Order::Infinite(InfiniteOrder::DeterminantNotRootOfUnity { det });
    }
    let ceiling = max_finite_order(n, l.field().conductor());
    let limit = bound.min(ceiling);
    let mut p = l.clone();
    for m in 1..=limit {
        if p.is_identity() {
            return Order::Finite(m);
        }
        p = p.mul(l);
    }
    if ceiling <= bound {
        Order::Infinite(InfiniteOrder::NoOrderBelowBound { bound: ceiling })
    } else {
        Order::Inconclusive { bound }
    }
}

/// Order of a germ jet in the K-jet group.
///
/// With m the order of the linear part, f^m is tangent to the identity. A
/// nontrivial tangent-to-identity jet has its lowest nonlinear slice scaled
/// by j under the j-th power, so it never returns to Id.
pub fn germ_order(f: &GermJet) -> Order {
    germ_order_with_bound(f, DEFAULT_ORDER_BOUND)
}

pub fn germ_order_with_bound(f: &GermJet, bound: u64) -> Order {
    let m0 = match linear_order(&f.linear_part(), bound) {
        Order::Finite(m) => m,
        other => return other,
    };
    let fm = f.pow(m0 as i64);
    if !fm.is_identity() {
        let degree = fm
            .lowest_nonlinear_degree()
            .expect("a linear jet with identity linear part is Id");
        return Order::Infinite(InfiniteOrder::TangentToIdentity { power: m0, degree });
    }
    Order::Finite(minimal_divisor(m0, |d| f.pow(d as i64).is_identity()))
}
