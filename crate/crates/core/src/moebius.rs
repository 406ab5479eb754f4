//! Projective automorphisms of P^1 over Q(zeta_N), their fixed points and
//! local germs, and the finite-cyclic verdict for a holonomy basic set.

use std::fmt;

use crate::cyclo::{euler_phi, parse_coeff, prime_factors, CycloField, CycloNum, Rational, SquareRoot};
use crate::error::{Error, Result};
use crate::groupkit::{
    check_basic_set, closure_enumerate, linearize_group, BasicSetVerdict, GroupElement,
    LinearizationOutcome, Presentation,
};
use crate::jet::{GermJet, InfiniteOrder, Monomial, Order, DEFAULT_ORDER_BOUND};

/// z -> (a z + b) / (c z + d), scaled so the first nonzero of (a, b, c, d)
/// is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusMap {
    m: [CycloNum; 4],
}

impl MoebiusMap {
    pub fn new(a: CycloNum, b: CycloNum, c: CycloNum, d: CycloNum) -> Result<Self> {
        for x in [&b, &c, &d] {
            a.checked_add(x)?;
        }
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(Self::canonical([a, b, c, d]))
    }

    pub fn from_strs(field: &CycloField, rows: [[&str; 2]; 2]) -> Result<Self> {
        let p = |s: &str| parse_coeff(field, s);
        Self::new(p(rows[0][0])?, p(rows[0][1])?, p(rows[1][0])?, p(rows[1][1])?)
    }

    fn canonical(m: [CycloNum; 4]) -> Self {
        let lead = m.iter().find(|x| !x.is_zero()).expect("nonzero matrix").clone();
        if lead.is_one() {
            return MoebiusMap { m };
        }
        let inv = lead.inv().expect("nonzero");
        MoebiusMap {
            m: m.map(|x| &x * &inv),
        }
    }

    pub fn identity(field: &CycloField) -> Self {
        let (o, z) = (CycloNum::one(field), CycloNum::zero(field));
        MoebiusMap {
            m: [o.clone(), z.clone(), z, o],
        }
    }

    /// z -> xi z.
    pub fn rotation(xi: &CycloNum) -> Result<Self> {
        let f = xi.field();
        Self::new(xi.clone(), CycloNum::zero(f), CycloNum::zero(f), CycloNum::one(f))
    }

    /// z -> 1 / z.
    pub fn inversion(field: &CycloField) -> Self {
        let (o, z) = (CycloNum::one(field), CycloNum::zero(field));
        MoebiusMap {
            m: [z.clone(), o.clone(), o, z],
        }
    }

    pub fn field(&self) -> &CycloField {
        self.m[0].field()
    }

    /// (a, b, c, d) in canonical scaling.
    pub fn entries(&self) -> &[CycloNum; 4] {
        &self.m
    }

    pub fn trace(&self) -> CycloNum {
        &self.m[0] + &self.m[3]
    }

    pub fn det(&self) -> CycloNum {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    fn is_scalar(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }

    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::canonical([
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
        ])
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [a, b, c, d] = &self.m;
        Self::canonical([d.clone(), -b, -c, a.clone()])
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        let [a, b, c, d] = &self.m;
        P1Point::new(a * &p.u + b * &p.v, c * &p.u + d * &p.v)
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl GroupElement for MoebiusMap {
    fn compose(&self, other: &Self) -> Self {
        MoebiusMap::compose(self, other)
    }

    fn inverse(&self) -> Self {
        MoebiusMap::inverse(self)
    }

    fn identity_like(&self) -> Self {
        MoebiusMap::identity(self.field())
    }

    fn is_identity(&self) -> bool {
        self.is_scalar()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.m[0].checked_add(&other.m[0]).map(|_| ())
    }

    fn element_order(&self) -> Order {
        moebius_order(self, DEFAULT_ORDER_BOUND)
    }

    /// tr^2 / det, invariant under scaling and conjugation.
    fn conjugacy_invariant(&self) -> Vec<CycloNum> {
        let t = self.trace();
        vec![(&t * &t).checked_div(&self.det()).expect("invertible")]
    }
}

/// A point [u : v] of P^1, scaled to [z : 1] or [1 : 0].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    u: CycloNum,
    v: CycloNum,
}

impl P1Point {
    pub fn new(u: CycloNum, v: CycloNum) -> Self {
        if v.is_zero() {
            P1Point {
                u: CycloNum::one(u.field()),
                v,
            }
        } else {
            P1Point {
                u: u.checked_div(&v).expect("nonzero"),
                v: CycloNum::one(v.field()),
            }
        }
    }

    pub fn finite(z: CycloNum) -> Self {
        let one = CycloNum::one(z.field());
        P1Point { u: z, v: one }
    }

    pub fn infinity(field: &CycloField) -> Self {
        P1Point {
            u: CycloNum::one(field),
            v: CycloNum::zero(field),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    /// The affine coordinate, unless this is infinity.
    pub fn as_finite(&self) -> Option<&CycloNum> {
        (!self.is_infinity()).then_some(&self.u)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_finite() {
            Some(z) => write!(f, "{z}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn moebius_compose(m1: &MoebiusMap, m2: &MoebiusMap) -> Result<MoebiusMap> {
    m1.check_compatible(m2)?;
    Ok(m1.compose(m2))
}

/// Projective order: least k with m^k scalar.
///
/// With ρ the ratio of the eigenvalues, u = tr^2/det - 2 = ρ + 1/ρ lies in
/// the field and V_k = ρ^k + ρ^-k satisfies V_0 = 2, V_1 = u,
/// V_{k+1} = u V_k - V_{k-1}; m^k is scalar iff V_k = 2. A root of unity ρ
/// lies in an extension of degree <= 2 phi(N) over Q, which bounds the
/// orders to test.
pub fn moebius_order(m: &MoebiusMap, bound: u64) -> Order {
    if m.is_scalar() {
        return Order::Finite(1);
    }
    let t = m.trace();
    let det = m.det();
    let field = m.field();
    let disc = &t * &t - &det.scale(&Rational::from_integer(4.into()));
    if disc.is_zero() {
        // repeated eigenvalue, not scalar: parabolic
        return Order::Infinite(InfiniteOrder::NotDiagonalizable { power: 1 });
    }
    if let SquareRoot::Root(r) = disc.sqrt() {
        let mu1 = &t + &r;
        let mu2 = &t - &r;
        let ratio = mu1.checked_div(&mu2).expect("det != 0, so both eigenvalues are nonzero");
        return match ratio.root_of_unity_order() {
            Some(k) => Order::Finite(k),
            None => Order::Infinite(InfiniteOrder::EigenvalueNotRootOfUnity {
                index: 0,
                value: ratio,
            }),
        };
    }
    let u = (&t * &t).checked_div(&det).expect("invertible") - CycloNum::from_integer(field, 2);
    let two = CycloNum::from_integer(field, 2);
    let cap = 2 * euler_phi(field.conductor() as u64);
    let limit = 2 * cap * cap + 2;
    let last = (1..=limit).filter(|&k| euler_phi(k) <= cap).max().unwrap_or(1);
    let (mut prev, mut cur) = (two.clone(), u.clone());
    for k in 1..=last.min(bound) {
        if cur == two && euler_phi(k) <= cap {
            return Order::Finite(k);
        }
        let next = &u * &cur - &prev;
        prev = cur;
        cur = next;
    }
    if last <= bound {
        Order::Infinite(InfiniteOrder::NoOrderBelowBound { bound: last })
    } else {
        Order::Inconclusive { bound }
    }
}

/// Fixed points in P^1 over the field, sorted canonically.
pub fn fixed_points(m: &MoebiusMap) -> Result<Vec<P1Point>> {
    if m.is_scalar() {
        return Err(Error::Precondition("the identity fixes every point".into()));
    }
    let [a, b, c, d] = m.entries();
    let field = m.field();
    let mut out = Vec::new();
    if c.is_zero() {
        out.push(P1Point::infinity(field));
        let s = d - a;
        if !s.is_zero() {
            out.push(P1Point::finite(b.checked_div(&s)?));
        }
    } else {
        // c z^2 + (d - a) z - b = 0
        let disc = &(&(d - a) * &(d - a)) + &(b * c).scale(&Rational::from_integer(4.into()));
        let r = match disc.sqrt() {
            SquareRoot::Root(r) => r,
            SquareRoot::NonSquare { .. } => {
                return Err(Error::ExtensionRequired {
                    conductor: field.conductor(),
                })
            }
            SquareRoot::Undecided => {
                return Err(Error::Precondition(format!(
                    "could not decide whether {disc} is a square"
                )))
            }
        };
        let two_c = c.scale(&Rational::from_integer(2.into()));
        let base = a - d;
        out.push(P1Point::finite((&base + &r).checked_div(&two_c)?));
        if !r.is_zero() {
            out.push(P1Point::finite((&base - &r).checked_div(&two_c)?));
        }
    }
    out.sort();
    Ok(out)
}

/// K-jet at 0 of m in the chart w = z - q, or w = 1/z when q = inf.
pub fn germ_at_fixed_point(m: &MoebiusMap, q: &P1Point, k: u32) -> Result<GermJet> {
    if &m.apply(q) != q {
        return Err(Error::NotFixed);
    }
    let field = m.field();
    let [a, b, c, d] = m.entries();
    // w -> mu w / (1 - rho w) = mu Σ rho^j w^(j+1)
    let (mu, rho) = match q.as_finite() {
        Some(q) => {
            let d0 = c * q + d.clone();
            ((a - &(q * c)).checked_div(&d0)?, (-c).checked_div(&d0)?)
        }
        None => (d.checked_div(a)?, (-b).checked_div(a)?),
    };
    let mut terms = Vec::new();
    let mut coeff = mu;
    for j in 1..=k {
        terms.push((coeff.clone(), Monomial::new(vec![j])));
        coeff = &coeff * &rho;
    }
    GermJet::new(field, 1, k, vec![terms])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HolonomyModel {
    /// Conjugate to z -> ξ z; z^k is invariant.
    Rotation,
    /// Conjugate to z -> 1/z.
    Inversion,
    Other,
}

impl HolonomyModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            HolonomyModel::Rotation => "rotation",
            HolonomyModel::Inversion => "inversion",
            HolonomyModel::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HolonomyVerdict {
    pub finite_cyclic: bool,
    pub order: Option<u64>,
    pub model: HolonomyModel,
    pub first_integral_exponent: Option<u64>,
    pub basic_set: Option<BasicSetVerdict>,
    pub fixed_point: Option<P1Point>,
    /// Why an element has infinite order, when that settled the verdict.
    pub infinite: Option<(usize, InfiniteOrder)>,
    pub linearization: Option<LinearizationOutcome>,
    /// Size of the Möbius group by closure, when it closed within the cap.
    pub closure_order: Option<usize>,
    /// The closure count and the germ route disagree.
    pub routes_disagree: bool,
    pub detail: String,
}

impl HolonomyVerdict {
    fn other(detail: String) -> Self {
        HolonomyVerdict {
            finite_cyclic: false,
            order: None,
            model: HolonomyModel::Other,
            first_integral_exponent: None,
            basic_set: None,
            fixed_point: None,
            infinite: None,
            linearization: None,
            closure_order: None,
            routes_disagree: false,
            detail,
        }
    }
}

pub struct HolonomyOptions {
    pub word_bound: usize,
    pub truncation: u32,
    pub closure_cap: usize,
    pub parallel: bool,
}

impl Default for HolonomyOptions {
    fn default() -> Self {
        HolonomyOptions {
            word_bound: crate::groupkit::DEFAULT_WORD_BOUND,
            truncation: 4,
            closure_cap: crate::groupkit::DEFAULT_CLOSURE_CAP,
            parallel: false,
        }
    }
}

/// Finite-cyclic check for a holonomy basic set of `expected_count` = p^s
/// generators.
pub fn holonomy_check(
    p: &Presentation<MoebiusMap>,
    expected_count: u64,
    opts: &HolonomyOptions,
) -> Result<HolonomyVerdict> {
    if prime_factors(expected_count).len() != 1 {
        return Err(Error::Precondition(format!(
            "expected count {expected_count} is not a prime power"
        )));
    }
    if p.len() as u64 != expected_count {
        return Err(Error::Precondition(format!(
            "{} generators given, {expected_count} expected",
            p.len()
        )));
    }
    let gens = p.generators();
    for (i, g) in gens.iter().enumerate() {
        if let Order::Infinite(cert) = g.element_order() {
            let mut v = HolonomyVerdict::other(format!("{} has infinite order: {cert}", p.names()[i]));
            v.infinite = Some((i, cert));
            return Ok(v);
        }
    }

    let report = check_basic_set(p, opts.word_bound, opts.parallel);
    let closure_order = closure_enumerate(p, opts.closure_cap, opts.parallel).order();

    let moving: Vec<&MoebiusMap> = gens.iter().filter(|g| !g.is_scalar()).collect();
    let fixed = match moving.first() {
        None => vec![P1Point::finite(CycloNum::zero(p.generators()[0].field()))],
        Some(g) => fixed_points(g)?
            .into_iter()
            .filter(|q| moving.iter().all(|h| &h.apply(q) == q))
            .collect(),
    };
    let mut v = HolonomyVerdict::other(String::new());
    v.basic_set = Some(report.verdict);
    v.closure_order = closure_order;
    let Some(q) = fixed.first().cloned() else {
        v.detail = "no common fixed point over the field".into();
        return Ok(v);
    };
    v.fixed_point = Some(q.clone());

    let germs = gens
        .iter()
        .map(|g| germ_at_fixed_point(g, &q, opts.truncation))
        .collect::<Result<Vec<_>>>()?;
    let local = Presentation::new(p.names().to_vec(), germs)?;
    let outcome = linearize_group(&local)?;
    v.linearization = Some(outcome.clone());
    let LinearizationOutcome::Success { group_order, .. } = outcome else {
        v.detail = "the germs at the fixed point do not linearize".into();
        return Ok(v);
    };
    v.routes_disagree = closure_order != Some(group_order as usize);
    if report.verdict != BasicSetVerdict::IrreducibleVerified {
        v.detail = format!("basic set not verified: {}", report.verdict.as_str());
        return Ok(v);
    }
    let mut distinct = gens.to_vec();
    distinct.sort();
    distinct.dedup();
    let inversion_like = distinct.len() == 1
        && group_order == 2
        && fixed.len() == 2
        && !fixed.iter().any(P1Point::is_infinity)
        && !fixed.iter().any(|x| x.as_finite().is_some_and(CycloNum::is_zero));
    v.finite_cyclic = true;
    v.order = Some(group_order);
    if inversion_like {
        v.model = HolonomyModel::Inversion;
        v.detail = "single involution with two fixed points".into();
    } else {
        v.model = HolonomyModel::Rotation;
        v.first_integral_exponent = Some(group_order);
        v.detail = format!("germs at {q} linearize to a rotation of order {group_order}");
    }
    Ok(v)
}
