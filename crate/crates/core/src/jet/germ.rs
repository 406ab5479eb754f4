use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{LinearPart, Monomial};
use crate::cyclo::{parse_coeff, CycloField, CycloNum};
use crate::error::{Error, Result};

/// A sparse polynomial in n variables; no zero coefficients are stored.
pub type Poly = BTreeMap<Monomial, CycloNum>;

/// The K-jet of a biholomorphic germ of (C^n, 0): one polynomial per
/// coordinate, all monomials of degree 1..=K, invertible linear part.
///
/// Values are immutable; every operation returns a new jet truncated at the
/// same order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GermJet {
    field: CycloField,
    dim: usize,
    order: u32,
    coords: Vec<Poly>,
}

fn add_term(poly: &mut Poly, m: Monomial, c: CycloNum) {
    if c.is_zero() {
        return;
    }
    match poly.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn mul_truncated(a: &Poly, b: &Poly, order: u32) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        let da = ma.degree();
        for (mb, cb) in b {
            // keys are graded, so later terms of b only get larger
            if da + mb.degree() > order {
                break;
            }
            add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

impl GermJet {
    /// Builds a jet from per-coordinate `(coefficient, monomial)` lists.
    /// Repeated monomials are summed; zero results are dropped.
    pub fn new(
        field: &CycloField,
        dim: usize,
        order: u32,
        coords: Vec<Vec<(CycloNum, Monomial)>>,
    ) -> Result<Self> {
        if dim == 0 || order == 0 {
            return Err(Error::Shape("dimension and truncation must be positive".into()));
        }
        if coords.len() != dim {
            return Err(Error::Shape(format!(
                "expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let mut polys = Vec::with_capacity(dim);
        for terms in coords {
            let mut p = Poly::new();
            for (c, m) in terms {
                if m.dim() != dim {
                    return Err(Error::Shape(format!(
                        "monomial {m:?} has {} exponents, expected {dim}",
                        m.dim()
                    )));
                }
                let d = m.degree();
                if d == 0 || d > order {
                    return Err(Error::Shape(format!(
                        "monomial {m:?} has degree {d}, allowed range is 1..={order}"
                    )));
                }
                if c.field() != field {
                    return Err(Error::ConductorMismatch {
                        left: field.conductor(),
                        right: c.field().conductor(),
                    });
                }
                add_term(&mut p, m, c);
            }
            polys.push(p);
        }
        let jet = GermJet {
            field: field.clone(),
            dim,
            order,
            coords: polys,
        };
        if jet.linear_part().det().is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(jet)
    }

    /// Like [`GermJet::new`] with coefficients in the textual grammar.
    pub fn from_strs(
        field: &CycloField,
        dim: usize,
        order: u32,
        coords: &[&[(&str, &[u32])]],
    ) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(c, m)| Ok((parse_coeff(field, c)?, Monomial::new(m.to_vec()))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, dim, order, coords)
    }

    pub(crate) fn from_polys(field: &CycloField, dim: usize, order: u32, coords: Vec<Poly>) -> Self {
        GermJet {
            field: field.clone(),
            dim,
            order,
            coords,
        }
    }

    pub fn identity(field: &CycloField, dim: usize, order: u32) -> Self {
        Self::from_linear(&LinearPart::identity(field, dim), order)
    }

    /// The linear map z -> L z as a jet of the given order.
    pub fn from_linear(linear: &LinearPart, order: u32) -> Self {
        let n = linear.dim();
        let coords = (0..n)
            .map(|s| {
                (0..n)
                    .filter(|&i| !linear.get(s, i).is_zero())
                    .map(|i| (Monomial::unit(n, i), linear.get(s, i).clone()))
                    .collect()
            })
            .collect();
        GermJet::from_polys(linear.field(), n, order, coords)
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation order K.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn coeff(&self, coordinate: usize, m: &Monomial) -> CycloNum {
        self.coords[coordinate]
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(&self.field))
    }

    pub fn linear_part(&self) -> LinearPart {
        let n = self.dim;
        let rows = (0..n)
            .map(|s| (0..n).map(|i| self.coeff(s, &Monomial::unit(n, i))).collect())
            .collect();
        LinearPart::from_rows(&self.field, rows).expect("square by construction")
    }

    /// Homogeneous slice of degree `d`, one polynomial per coordinate.
    pub fn slice(&self, d: u32) -> Vec<Poly> {
        self.coords
            .iter()
            .map(|p| {
                p.iter()
                    .filter(|(m, _)| m.degree() == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().enumerate().all(|(s, p)| {
            p.len() == 1
                && p.iter()
                    .next()
                    .is_some_and(|(m, c)| m.as_unit() == Some(s) && c.is_one())
        })
    }

    pub fn is_linear(&self) -> bool {
        self.coords.iter().flatten().all(|(m, _)| m.degree() == 1)
    }

    /// Lowest degree >= 2 with a nonzero coefficient.
    pub fn lowest_nonlinear_degree(&self) -> Option<u32> {
        self.coords
            .iter()
            .flatten()
            .map(|(m, _)| m.degree())
            .filter(|&d| d >= 2)
            .min()
    }

    /// Drops every term of degree above `order` and relabels the jet.
    /// Raising the order keeps the polynomial as is.
    pub fn with_order(&self, order: u32) -> GermJet {
        let coords = self
            .coords
            .iter()
            .map(|p| {
                p.iter()
                    .filter(|(m, _)| m.degree() <= order)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect()
            })
            .collect();
        GermJet::from_polys(&self.field, self.dim, order, coords)
    }

    pub(crate) fn check_compatible(&self, other: &GermJet) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch {
                left: self.field.conductor(),
                right: other.field.conductor(),
            });
        }
        if self.dim != other.dim || self.order != other.order {
            return Err(Error::Shape(format!(
                "jets of shape (n={}, K={}) and (n={}, K={})",
                self.dim, self.order, other.dim, other.order
            )));
        }
        Ok(())
    }

    /// K-jet of `self ∘ other`.
    pub fn compose(&self, other: &GermJet) -> Result<GermJet> {
        self.check_compatible(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, g: &GermJet) -> GermJet {
        let n = self.dim;
        let k = self.order;
        let mut powers: HashMap<Monomial, Poly> = HashMap::new();
        let mut out = Vec::with_capacity(n);
        for p in &self.coords {
            let mut acc = Poly::new();
            for (m, c) in p {
                let gm = monomial_power(g, m, k, &mut powers);
                for (mm, cc) in gm {
                    add_term(&mut acc, mm.clone(), c * cc);
                }
            }
            out.push(acc);
        }
        GermJet::from_polys(&self.field, n, k, out)
    }

    /// Inverse in the jet group, solved degree by degree: start from the
    /// inverse linear part, then remove the degree-d residue of `f ∘ g`.
    pub fn invert(&self) -> GermJet {
        let n = self.dim;
        let linv = self
            .linear_part()
            .inverse()
            .expect("linear part is invertible");
        let mut g = GermJet::from_linear(&linv, self.order);
        for d in 2..=self.order {
            let r = self.compose_unchecked(&g);
            let residue = r.slice(d);
            if residue.iter().all(Poly::is_empty) {
                continue;
            }
            // g <- g - L^-1 R_d
            let mut coords = g.coords.clone();
            for (s, coord) in coords.iter_mut().enumerate() {
                for (i, slice) in residue.iter().enumerate() {
                    let a = linv.get(s, i);
                    if a.is_zero() {
                        continue;
                    }
                    for (m, c) in slice {
                        add_term(coord, m.clone(), -(a * c));
                    }
                }
            }
            g = GermJet::from_polys(&self.field, n, self.order, coords);
        }
        g
    }

    /// `h ∘ f ∘ h^-1`.
    pub fn conjugate(h: &GermJet, f: &GermJet) -> Result<GermJet> {
        h.check_compatible(f)?;
        Ok(h.compose_unchecked(f).compose_unchecked(&h.invert()))
    }

    /// m-fold composition; negative m uses the inverse.
    pub fn pow(&self, m: i64) -> GermJet {
        let mut base = if m < 0 { self.invert() } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = GermJet::identity(&self.field, self.dim, self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose_unchecked(&base);
            }
        }
        acc
    }

    /// Adds a polynomial map (given per coordinate) to this jet.
    pub(crate) fn add_polys(&self, extra: &[Poly]) -> GermJet {
        let mut coords = self.coords.clone();
        for (dst, src) in coords.iter_mut().zip(extra) {
            for (m, c) in src {
                add_term(dst, m.clone(), c.clone());
            }
        }
        GermJet::from_polys(&self.field, self.dim, self.order, coords)
    }
}

/// g^Q, memoized per call through `cache`.
fn monomial_power<'a>(
    g: &GermJet,
    m: &Monomial,
    order: u32,
    cache: &'a mut HashMap<Monomial, Poly>,
) -> &'a Poly {
    if !cache.contains_key(m) {
        let value = if let Some(i) = m.as_unit() {
            g.coords[i].clone()
        } else {
            let i = m
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("nonconstant monomial");
            let mut rest = m.exponents().to_vec();
            rest[i] -= 1;
            let rest = Monomial::new(rest);
            let lower = monomial_power(g, &rest, order, cache).clone();
            mul_truncated(&lower, &g.coords[i], order)
        };
        cache.insert(m.clone(), value);
    }
    &cache[m]
}

/// Deterministic order used for canonical listings.
impl Ord for GermJet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.conductor(), self.dim, self.order)
            .cmp(&(other.field.conductor(), other.dim, other.order))
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for GermJet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GermJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (s, p) in self.coords.iter().enumerate() {
            if s > 0 {
                f.write_str(", ")?;
            }
            if p.is_empty() {
                f.write_str("0")?;
            }
            for (i, (m, c)) in p.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                if c.is_one() {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "({c})*{m}")?;
                }
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GermJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [K={}, {:?}]", self.order, self.field)
    }
}
