use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{prime_factors, CycloField};
use super::Rational;
use crate::error::{Error, Result};

/// An exact element of Q(zeta_N).
///
/// Stored as integer numerators over one positive common denominator, in
/// the power basis 1, zeta, ..., zeta^(phi(N)-1). The representation is
/// canonical: `gcd(numerators, denominator) = 1`, zero is `0/1`. Equality
/// of values is equality of representations.
#[derive(Clone)]
pub struct CycloNum {
    field: CycloField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(field: CycloField, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloNum { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(field: &CycloField) -> Self {
        CycloNum {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &CycloField) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &CycloField, value: i64) -> Self {
        Self::from_rational(field, &Rational::from_integer(value.into()))
    }

    pub fn from_rational(field: &CycloField, value: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = value.numer().clone();
        Self::from_parts(field.clone(), num, value.denom().clone())
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(field: &CycloField, k: i64) -> Self {
        CycloNum {
            field: field.clone(),
            num: field.power_of_zeta(k).to_vec(),
            den: BigInt::one(),
        }
    }

    /// The distinguished primitive root zeta_N = exp(2 pi i / N).
    pub fn zeta(field: &CycloField) -> Self {
        Self::zeta_pow(field, 1)
    }

    /// Builds an element from power-basis coefficients of any length
    /// (reduced modulo Phi_N).
    pub fn from_coeffs(field: &CycloField, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let num = if num.len() <= field.degree() {
            let mut n = num;
            n.resize(field.degree(), BigInt::zero());
            n
        } else {
            field.reduce(num)
        };
        Self::from_parts(field.clone(), num, den)
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    /// Canonical coefficients in the power basis, length phi(N).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational number if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch {
                left: self.field.conductor(),
                right: other.field.conductor(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Self::from_parts(self.field.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (a, Phi_N) over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, &r.recip()));
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a: Vec<Rational> = self.coeffs();
        let (g, s) = ext_gcd_cofactor(&modulus, &a);
        // g is a nonzero constant since Phi_N is irreducible
        debug_assert_eq!(poly_degree(&g), Some(0));
        let c = g[0].recip();
        let s: Vec<Rational> = s.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(&self.field, &s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least m >= 1 with a^m = 1, or `None` when `a` is not a root of unity.
    ///
    /// The roots of unity in Q(zeta_N) are exactly the lcm(2, N)-th roots, so
    /// a single exponentiation decides membership and the order is then the
    /// minimal divisor.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.conductor() as u64;
        let full = n.lcm(&2);
        if !self.pow(full).is_one() {
            return None;
        }
        let mut m = full;
        for p in prime_factors(full) {
            while m.is_multiple_of(p) && self.pow(m / p).is_one() {
                m /= p;
            }
        }
        Some(m)
    }

    /// Image in Q(zeta_M) under zeta_N -> zeta_M^(M/N).
    pub fn embed_to_conductor(&self, target: u32) -> Result<Self> {
        let n = self.field.conductor();
        if target == 0 || !target.is_multiple_of(n) {
            return Err(Error::Embedding { from: n, to: target });
        }
        let field = CycloField::new(target)?;
        if target == n {
            return Ok(self.clone());
        }
        let step = (target / n) as i64;
        let mut num = vec![BigInt::zero(); field.degree()];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, z) in num.iter_mut().zip(field.power_of_zeta(i as i64 * step)) {
                if !z.is_zero() {
                    *acc += c * z;
                }
            }
        }
        Ok(Self::from_parts(field, num, self.den.clone()))
    }

    /// Exact complex conjugate (zeta -> zeta^-1).
    pub fn conj(&self) -> Self {
        let field = &self.field;
        let mut num = vec![BigInt::zero(); field.degree()];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, z) in num.iter_mut().zip(field.power_of_zeta(-(i as i64))) {
                if !z.is_zero() {
                    *acc += c * z;
                }
            }
        }
        Self::from_parts(field.clone(), num, self.den.clone())
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("nonzero divisor");
    let mut rem = a.to_vec();
    let Some(da) = poly_degree(a) else {
        return (vec![], vec![]);
    };
    if da < db {
        return (vec![], poly_trim(rem));
    }
    let lead = b[db].recip();
    let mut quot = vec![Rational::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = &rem[i + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(q.len() + b.len());
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    poly_trim(out)
}

/// Returns (g, s) with s * a = g (mod m), g = gcd(m, a).
fn ext_gcd_cofactor(m: &[Rational], a: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(m.to_vec());
    let mut r1 = poly_trim(a.to_vec());
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while poly_degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r1, s1)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// An arbitrary but deterministic total order, used only for canonical
/// output ordering.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor()
            .cmp(&other.field.conductor())
            .then_with(|| {
                // compare as rationals coefficient by coefficient
                for (a, b) in self.num.iter().zip(&other.num) {
                    let c = (a * &other.den).cmp(&(b * &self.den));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator impls assume a shared field and panic otherwise; use the
// `checked_*` methods at API boundaries.

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }

        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }

        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::grammar::format_coeff(self))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

impl From<&CycloNum> for Vec<BigRational> {
    fn from(x: &CycloNum) -> Self {
        x.coeffs()
    }
}
