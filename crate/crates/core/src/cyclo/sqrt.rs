//! Square roots in Q(zeta_N).
//!
//! A square root of `d` times its denominator squared is an algebraic
//! integer of Z[zeta_N], whose power-basis coordinates are integers. Those
//! are located numerically from the complex embeddings and then confirmed
//! by exact squaring. Non-squares are certified exactly by exhibiting a
//! prime p = 1 (mod N) and a root r of Phi_N mod p at which d is a
//! quadratic non-residue.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{CycloNum, Rational};

/// Outcome of a square-root query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareRoot {
    /// `root * root == value`.
    Root(CycloNum),
    /// The value is not a square; the residue check failed modulo `prime`
    /// at zeta -> `root_mod_p`.
    NonSquare { prime: u64, root_mod_p: u64 },
    /// Neither a root nor a certificate was found within the search limits.
    Undecided,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn mod_of(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Roots of Phi_N modulo p, for p = 1 mod N: the elements of exact
/// multiplicative order N.
fn primitive_roots_mod(n: u64, p: u64) -> Vec<u64> {
    let factors = super::field::prime_factors(n);
    let mut g = None;
    for a in 2..p {
        let c = pow_mod(a, (p - 1) / n, p);
        if factors.iter().all(|&q| pow_mod(c, n / q, p) != 1) || n == 1 {
            g = Some(c);
            break;
        }
    }
    let Some(g) = g else { return vec![1] };
    (1..=n)
        .filter(|k| n.gcd(k) == 1)
        .map(|k| pow_mod(g, k, p))
        .collect()
}

fn eval_mod(x: &CycloNum, r: u64, p: u64) -> Option<u64> {
    let den = mod_of(x.denominator(), p);
    if den == 0 {
        return None;
    }
    let mut acc = 0u128;
    let mut rp = 1u128;
    for c in x.numerators() {
        acc = (acc + mod_of(c, p) as u128 * rp) % p as u128;
        rp = rp * r as u128 % p as u128;
    }
    let inv = pow_mod(den, p - 2, p) as u128;
    Some((acc * inv % p as u128) as u64)
}

fn non_residue_certificate(x: &CycloNum, max_primes: usize) -> Option<(u64, u64)> {
    let n = x.field().conductor() as u64;
    let step = n.max(1);
    let mut p = step + 1;
    let mut tried = 0;
    while tried < max_primes {
        if p > 2 && is_prime(p) {
            tried += 1;
            for r in primitive_roots_mod(n, p) {
                if let Some(v) = eval_mod(x, r, p) {
                    if v != 0 && pow_mod(v, (p - 1) / 2, p) == p - 1 {
                        return Some((p, r));
                    }
                }
            }
        }
        p += step;
    }
    None
}

fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                if factor.norm() == 0.0 {
                    continue;
                }
                let pivot_row = a[col].clone();
                for (x, p) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= p * factor;
                }
                let t = b[col] * factor;
                b[row] -= t;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn numeric_root(x: &CycloNum) -> Option<CycloNum> {
    let field = x.field();
    let n = field.conductor() as u64;
    let d = field.degree();
    // integral target: den^2 * x, whose root lies in Z[zeta]
    let den = x.denominator().clone();
    let target: Vec<BigInt> = x.numerators().iter().map(|c| c * &den).collect();
    let exps: Vec<u64> = (1..=n.max(1)).filter(|k| n.gcd(k) == 1).collect();
    let exps: Vec<u64> = if n <= 2 { vec![1] } else { exps };
    // values of the target at each embedding
    let embed = |k: u64| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
    let values: Vec<Complex64> = exps
        .iter()
        .map(|&k| {
            let z = embed(k);
            target
                .iter()
                .enumerate()
                .map(|(i, c)| z.powu(i as u32) * c.to_f64().unwrap_or(f64::NAN))
                .sum()
        })
        .collect();
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return None;
    }
    let roots: Vec<Complex64> = values.iter().map(|v| v.sqrt()).collect();
    let matrix: Vec<Vec<Complex64>> = exps
        .iter()
        .map(|&k| (0..d).map(|i| embed(k).powu(i as u32)).collect())
        .collect();
    // embeddings come in conjugate pairs (k, N - k); choosing the sign on
    // one member fixes the other
    let half: Vec<usize> = (0..exps.len())
        .filter(|&i| 2 * exps[i] <= n.max(2))
        .collect();
    let partner = |i: usize| {
        let conj = (n.max(1) - exps[i] % n.max(1)) % n.max(1);
        exps.iter().position(|&e| e % n.max(1) == conj).unwrap_or(i)
    };
    if half.len() > 20 {
        return None;
    }
    // the global sign is irrelevant, so the first sign stays fixed
    for mask in 0u64..(1u64 << half.len().saturating_sub(1)) {
        let mut rhs = roots.clone();
        for (bit, &i) in half.iter().enumerate() {
            let flip = bit > 0 && (mask >> (bit - 1)) & 1 == 1;
            rhs[i] = if flip { -roots[i] } else { roots[i] };
            let j = partner(i);
            if j != i {
                rhs[j] = rhs[i].conj();
            }
        }
        let Some(coords) = solve_complex(matrix.clone(), rhs) else {
            continue;
        };
        let ints: Vec<Rational> = coords
            .iter()
            .map(|c| Rational::from_integer(BigInt::from(c.re.round() as i64)))
            .collect();
        let candidate = CycloNum::from_coeffs(field, &ints).scale(&Rational::new(BigInt::one(), den.clone()));
        if &(&candidate * &candidate) == x {
            return Some(candidate);
        }
    }
    None
}

impl CycloNum {
    /// Exact square root within the field, when one exists.
    pub fn sqrt(&self) -> SquareRoot {
        if self.is_zero() {
            return SquareRoot::Root(self.clone());
        }
        if let Some(r) = self.as_rational() {
            if !r.is_negative() {
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                if &n * &n == *r.numer() && &d * &d == *r.denom() {
                    return SquareRoot::Root(CycloNum::from_rational(self.field(), &Rational::new(n, d)));
                }
            }
        }
        if let Some(root) = numeric_root(self) {
            return SquareRoot::Root(root);
        }
        match non_residue_certificate(self, 64) {
            Some((prime, root_mod_p)) => SquareRoot::NonSquare { prime, root_mod_p },
            None => SquareRoot::Undecided,
        }
    }
}
