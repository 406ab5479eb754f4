//! Numeric evaluation of field elements at zeta = exp(2 pi i / N).
//! Diagnostics only; nothing in the library decides anything from these.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycloNum, Rational};

/// A rational approximation of a complex value with a stated number of
/// correct decimal digits.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: Rational,
    pub im: Rational,
    pub digits: u32,
}

impl ComplexApprox {
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl std::fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let re = decimal(&self.re, self.digits);
        let im = decimal(&self.im.abs(), self.digits);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{im}i")
    }
}

fn decimal(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let s = format!("{:0>width$}", s, width = d + 1);
    let (int, frac) = s.split_at(s.len() - d);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if d > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

fn fixed_mul(a: &BigInt, b: &BigInt, scale: &BigInt) -> BigInt {
    a * b / scale
}

fn atan_recip(x: u64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

fn pi_fixed(scale: &BigInt) -> BigInt {
    atan_recip(5, scale) * 16 - atan_recip(239, scale) * 4
}

fn cos_sin_fixed(theta: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let x2 = fixed_mul(theta, theta, scale);
    let mut cos = scale.clone();
    let mut sin = theta.clone();
    let mut ct = scale.clone();
    let mut st = theta.clone();
    let mut k = 1u64;
    loop {
        ct = -fixed_mul(&ct, &x2, scale) / BigInt::from((2 * k - 1) * (2 * k));
        st = -fixed_mul(&st, &x2, scale) / BigInt::from((2 * k) * (2 * k + 1));
        if ct.is_zero() && st.is_zero() {
            break;
        }
        cos += &ct;
        sin += &st;
        k += 1;
    }
    (cos, sin)
}

impl CycloNum {
    /// Evaluates the element at exp(2 pi i / N) with at least `digits`
    /// correct decimal digits.
    pub fn to_complex_approx(&self, digits: u32) -> ComplexApprox {
        let n = self.field().conductor() as u64;
        let den = self.denominator();
        let magnitude: BigInt = self
            .numerators()
            .iter()
            .map(|c| c.abs())
            .fold(BigInt::one(), |a, b| a + b)
            / den
            + 1;
        let guard = magnitude.to_string().len() as u32 + 12;
        let precision = digits + guard;
        let scale = BigInt::from(10).pow(precision);
        let two_pi = pi_fixed(&scale) * 2;
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (i, c) in self.numerators().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // reduce i/N to (-1/2, 1/2] of a turn so Taylor terms stay small
            let mut k = i as i64 % n as i64;
            if 2 * k > n as i64 {
                k -= n as i64;
            }
            let theta = &two_pi * BigInt::from(k) / BigInt::from(n);
            let (cos, sin) = cos_sin_fixed(&theta, &scale);
            re += c * cos;
            im += c * sin;
        }
        let denom = den * &scale;
        ComplexApprox {
            re: Rational::new(re, denom.clone()),
            im: Rational::new(im, denom),
            digits,
        }
    }
}
