//! Textual coefficient syntax.
//!
//! ```text
//! coeff    := ["+"|"-"] term (("+"|"-") term)*
//! term     := rational ("*" "z" ("^" nat)?)? | "z" ("^" nat)?
//! rational := int ("/" nat)?
//! ```
//!
//! `z` is the distinguished root zeta_N of the ambient field. Whitespace
//! between tokens is ignored. Output uses the same grammar with powers in
//! descending order, e.g. `3/2*z^2 - 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CycloField, CycloNum, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let e = self.nat()?;
        i64::try_from(e).map_err(|_| Error::Parse {
                position: at,
                message: "exponent too large".into(),
            })
    }

    fn term(&mut self, field: &CycloField) -> Result<CycloNum> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(CycloNum::zeta_pow(field, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                let d = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                let r = Rational::new(n, d);
                if self.eat(b'*') {
                    if !self.eat(b'z') {
                        return self.err("expected `z` after `*`");
                    }
                    let e = self.exponent()?;
                    Ok(CycloNum::zeta_pow(field, e).scale(&r))
                } else {
                    Ok(CycloNum::from_rational(field, &r))
                }
            }
            Some(_) => self.err("expected a number or `z`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a coefficient string in the field.
pub fn parse_coeff(field: &CycloField, text: &str) -> Result<CycloNum> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let mut acc = CycloNum::zero(field);
    loop {
        let t = cur.term(field)?;
        acc = if negative { &acc - &t } else { &acc + &t };
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) => return cur.err("expected `+`, `-` or end of input"),
        }
    }
    Ok(acc)
}

fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering; `parse_coeff(format_coeff(x)) == x`.
pub fn format_coeff(x: &CycloNum) -> String {
    let mut out = String::new();
    for (power, c) in x.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let zpart = match power {
            0 => None,
            1 => Some("z".to_string()),
            p => Some(format!("z^{p}")),
        };
        match zpart {
            None => out.push_str(&format_rational(&mag)),
            Some(z) if mag.is_one() => out.push_str(&z),
            Some(z) => {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&z);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32) -> CycloField {
        CycloField::new(n).unwrap()
    }

    #[test]
    fn parses_examples() {
        let q3 = f(3);
        assert_eq!(parse_coeff(&q3, "-1").unwrap(), CycloNum::from_integer(&q3, -1));
        let x = parse_coeff(&q3, "3/2*z^2 - 1").unwrap();
        // z^2 = -z - 1 in Q(zeta_3)
        assert_eq!(format_coeff(&x), "-3/2*z - 5/2");
        let q12 = f(12);
        assert_eq!(parse_coeff(&q12, "z^4").unwrap(), CycloNum::zeta_pow(&q12, 4));
        assert_eq!(parse_coeff(&q12, "-z").unwrap(), -CycloNum::zeta(&q12));
        assert_eq!(parse_coeff(&q12, " 0 ").unwrap(), CycloNum::zero(&q12));
    }

    #[test]
    fn formats_canonically() {
        let q12 = f(12);
        let x = parse_coeff(&q12, "3/2*z^2 - 1").unwrap();
        assert_eq!(format_coeff(&x), "3/2*z^2 - 1");
        assert_eq!(format_coeff(&CycloNum::zeta(&q12)), "z");
        assert_eq!(format_coeff(&CycloNum::zero(&q12)), "0");
        assert_eq!(format_coeff(&-CycloNum::zeta_pow(&q12, 3)), "-z^3");
    }

    #[test]
    fn reports_positions() {
        let q = f(3);
        match parse_coeff(&q, "1 + * z") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_coeff(&q, "1/0").is_err());
        assert!(parse_coeff(&q, "").is_err());
        assert!(parse_coeff(&q, "2 z").is_err());
        assert!(parse_coeff(&q, "2*y").is_err());
    }
}
