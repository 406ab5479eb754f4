use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The cyclotomic field Q(zeta_N), described by its conductor and the
/// N-th cyclotomic polynomial.
///
/// Descriptors are interned per conductor, so cloning is a reference-count
/// bump and equality is a pointer comparison in the common case.
#[derive(Clone)]
pub struct CycloField(Arc<FieldData>);

pub(crate) struct FieldData {
    conductor: u32,
    /// Coefficients of Phi_N, lowest degree first; monic.
    modulus: Vec<BigInt>,
    /// `powers[k]` is zeta^k reduced mod Phi_N, for 0 <= k < N.
    powers: Vec<Vec<BigInt>>,
}

fn cache() -> &'static Mutex<HashMap<u32, CycloField>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, CycloField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// Returns the field Q(zeta_N). `N = 1` (and `N = 2`) give Q itself.
    pub fn new(conductor: u32) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor);
        }
        if let Some(f) = cache().lock().unwrap().get(&conductor) {
            return Ok(f.clone());
        }
        let modulus = cyclotomic_polynomial(conductor);
        let powers = power_table(conductor, &modulus);
        let field = CycloField(Arc::new(FieldData {
            conductor,
            modulus,
            powers,
        }));
        let mut guard = cache().lock().unwrap();
        Ok(guard.entry(conductor).or_insert(field).clone())
    }

    /// The rationals, as Q(zeta_1).
    pub fn rationals() -> Self {
        Self::new(1).expect("conductor 1 is valid")
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// phi(N), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    /// Phi_N, lowest-degree coefficient first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    /// zeta^k in the canonical basis, for any integer k.
    pub(crate) fn power_of_zeta(&self, k: i64) -> &[BigInt] {
        let n = self.0.conductor as i64;
        &self.0.powers[k.rem_euclid(n) as usize]
    }

    /// Reduces a polynomial in zeta (lowest degree first, any length) to
    /// its canonical remainder of length `degree()`.
    pub(crate) fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        let m = &self.0.modulus;
        if poly.len() > d {
            for i in (d..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[i]);
                for j in 0..d {
                    if !m[j].is_zero() {
                        poly[i - d + j] -= &c * &m[j];
                    }
                }
            }
            poly.truncate(d);
        }
        poly.resize(d, BigInt::zero());
        poly
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }
}

impl Eq for CycloField {}

impl Hash for CycloField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.conductor.hash(state);
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.conductor)
    }
}

impl fmt::Display for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Phi_N by exact division of x^N - 1 by Phi_d for every proper divisor d.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n as u64) {
        if d == n as u64 {
            continue;
        }
        let phi_d = CycloField::new(d as u32).expect("positive divisor");
        num = exact_div_monic(&num, phi_d.modulus());
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dn {
            rem[i + j] -= &c * &den[j];
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division not exact");
    quot
}

fn power_table(n: u32, modulus: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = modulus.len() - 1;
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); d];
    cur[0] = BigInt::one();
    for _ in 0..n {
        out.push(cur.clone());
        // multiply by zeta: shift up, fold the top coefficient through Phi_N
        let top = cur[d - 1].clone();
        for i in (1..d).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for j in 0..d {
                cur[j] -= &top * &modulus[j];
            }
        }
    }
    out
}
