use std::fmt;

use crate::cyclo::{CycloField, CycloNum, Rational};
use crate::error::{Error, Result};

/// An n x n matrix over Q(zeta_N), row-major. Used for linear parts
/// Df(0); `(L z)_s = sum_i L[s][i] z_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearPart {
    field: CycloField,
    n: usize,
    entries: Vec<CycloNum>,
}

impl LinearPart {
    pub fn from_rows(field: &CycloField, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("linear part must be a nonempty square matrix".into()));
        }
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::Shape("matrix entry outside the field".into()));
        }
        Ok(LinearPart {
            field: field.clone(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(field: &CycloField, n: usize) -> Self {
        Self::diagonal_from(field, &vec![CycloNum::one(field); n])
    }

    pub fn diagonal_from(field: &CycloField, diag: &[CycloNum]) -> Self {
        let n = diag.len();
        let mut entries = vec![CycloNum::zero(field); n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = d.clone();
        }
        LinearPart {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &CycloNum {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<CycloNum>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &LinearPart) -> LinearPart {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycloNum::zero(&self.field);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        LinearPart {
            field: self.field.clone(),
            n,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> LinearPart {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<CycloNum> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> CycloNum {
        self.diagonal()
            .iter()
            .fold(CycloNum::zero(&self.field), |acc, x| &acc + x)
    }

    /// Entries as rationals, if all are rational.
    pub fn as_rational(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(CycloNum::as_rational).collect()
    }

    /// Gaussian elimination with exact pivoting; returns (det, inverse).
    fn eliminate(&self) -> (CycloNum, Option<LinearPart>) {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(&self.field, n).rows();
        let mut det = CycloNum::one(&self.field);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return (CycloNum::zero(&self.field), None);
            };
            if piv != col {
                a.swap(piv, col);
                inv.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det = &det * &p;
            let pinv = p.inv().expect("nonzero pivot");
            for k in 0..n {
                a[col][k] = &a[col][k] * &pinv;
                inv[col][k] = &inv[col][k] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for k in 0..n {
                    let t = &factor * &a[col][k];
                    a[r][k] = &a[r][k] - &t;
                    let t = &factor * &inv[col][k];
                    inv[r][k] = &inv[r][k] - &t;
                }
            }
        }
        let inv = LinearPart {
            field: self.field.clone(),
            n,
            entries: inv.into_iter().flatten().collect(),
        };
        (det, Some(inv))
    }

    pub fn det(&self) -> CycloNum {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Result<LinearPart> {
        self.eliminate().1.ok_or(Error::SingularLinearPart)
    }

    /// Coefficients c_0..c_n of det(x I - L), lowest first, by the
    /// Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Vec<CycloNum> {
        let n = self.n;
        let f = &self.field;
        let mut coeffs = vec![CycloNum::zero(f); n + 1];
        coeffs[n] = CycloNum::one(f);
        let mut m = Self::identity(f, n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = am.trace().scale(&Rational::new((-1).into(), (k as i64).into()));
            coeffs[n - k] = c.clone();
            // M_{k+1} = A M_k + c I
            let mut next = am;
            for i in 0..n {
                next.entries[i * n + i] = &next.entries[i * n + i] + &c;
            }
            m = next;
        }
        coeffs
    }
}

impl fmt::Display for LinearPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for LinearPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
