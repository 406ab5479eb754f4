use std::cmp::Ordering;
use std::fmt;

/// Exponent vector (q_1, ..., q_n) of a monomial z^Q.
///
/// Ordered graded-lexicographically: lower total degree first, then larger
/// exponents on earlier variables first, so `z1` precedes `z2` and `z1^2`
/// precedes `z1 z2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The coordinate monomial z_i in n variables.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree |Q|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Index of the variable if this is a coordinate monomial.
    pub fn as_unit(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.0.iter().position(|&e| e == 1)
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in n variables of total degree exactly `d`, in
    /// graded-lex order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                rec(n, d - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All monomials with `lo <= |Q| <= hi`, in graded-lex order.
    pub fn in_degree_range(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
        (lo..=hi).flat_map(|d| Self::of_degree(n, d)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
