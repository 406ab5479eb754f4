//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use germ_forge::cyclo::{CycloField, CycloNum, Rational};
use germ_forge::jet::{GermJet, LinearPart, Monomial};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(n: u32) -> CycloField {
    CycloField::new(n).unwrap()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(rng.gen_range(-3i64..=3).into(), den.into())
}

/// Sparse element with small rational power-basis coefficients.
pub fn random_num(f: &CycloField, rng: &mut ChaCha8Rng) -> CycloNum {
    let coeffs: Vec<Rational> = (0..f.degree())
        .map(|_| {
            if rng.gen_bool(0.5) {
                small_rational(rng)
            } else {
                Rational::from_integer(0.into())
            }
        })
        .collect();
    CycloNum::from_coeffs(f, &coeffs)
}

pub fn random_nonzero(f: &CycloField, rng: &mut ChaCha8Rng) -> CycloNum {
    loop {
        let x = random_num(f, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_invertible(f: &CycloField, n: usize, rng: &mut ChaCha8Rng) -> LinearPart {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_num(f, rng)).collect())
            .collect();
        let l = LinearPart::from_rows(f, rows).unwrap();
        if !l.det().is_zero() {
            return l;
        }
    }
}

/// Random terms in degrees `lo..=hi`, each monomial kept with probability
/// `density`.
pub fn random_terms(
    f: &CycloField,
    n: usize,
    lo: u32,
    hi: u32,
    density: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<(CycloNum, Monomial)>> {
    let monos = if lo <= hi { Monomial::in_degree_range(n, lo, hi) } else { Vec::new() };
    let mut out = vec![Vec::new(); n];
    for row in &mut out {
        for m in &monos {
            if rng.gen_bool(density) {
                row.push((random_nonzero(f, rng), m.clone()));
            }
        }
    }
    out
}

pub fn jet_with_linear(l: &LinearPart, k: u32, density: f64, rng: &mut ChaCha8Rng) -> GermJet {
    let f = l.field();
    let n = l.dim();
    let mut terms = random_terms(f, n, 2, k, density, rng);
    for (s, row) in l.rows().iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            terms[s].push((c.clone(), Monomial::unit(n, i)));
        }
    }
    GermJet::new(f, n, k, terms).unwrap()
}

pub fn random_jet(f: &CycloField, n: usize, k: u32, rng: &mut ChaCha8Rng) -> GermJet {
    let l = random_invertible(f, n, rng);
    jet_with_linear(&l, k, 0.4, rng)
}

/// Id + terms of degree >= `from`.
pub fn random_tangent(f: &CycloField, n: usize, k: u32, from: u32, rng: &mut ChaCha8Rng) -> GermJet {
    let mut terms = random_terms(f, n, from, k, 0.4, rng);
    for (s, row) in terms.iter_mut().enumerate() {
        row.push((CycloNum::one(f), Monomial::unit(n, s)));
    }
    GermJet::new(f, n, k, terms).unwrap()
}

// A small dense polynomial kit, written independently of the jet module,
// for formula-level oracles.

pub type P = BTreeMap<Vec<u32>, CycloNum>;

pub fn p_add(a: &P, b: &P) -> P {
    let mut out = a.clone();
    for (m, c) in b {
        let s = match out.get(m) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            out.remove(m);
        } else {
            out.insert(m.clone(), s);
        }
    }
    out
}

pub fn p_mul(a: &P, b: &P, max_degree: u32) -> P {
    let mut out = P::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if m.iter().sum::<u32>() <= max_degree {
                out = p_add(&out, &P::from([(m, ca * cb)]));
            }
        }
    }
    out
}

pub fn p_scale(a: &P, c: &CycloNum) -> P {
    a.iter()
        .map(|(m, x)| (m.clone(), x * c))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// p(q_1, ..., q_n), truncated at `max_degree`.
pub fn p_subst(p: &P, images: &[P], max_degree: u32) -> P {
    let n = images.len();
    let mut out = P::new();
    for (m, c) in p {
        let mut term = P::from([(vec![0; n], c.clone())]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                term = p_mul(&term, &images[i], max_degree);
            }
        }
        out = p_add(&out, &term);
    }
    out
}

pub fn p_derivative(p: &P, i: usize) -> P {
    p.iter()
        .filter(|(m, _)| m[i] > 0)
        .map(|(m, c)| {
            let mut d = m.clone();
            d[i] -= 1;
            (d, c.scale(&Rational::from_integer(m[i].into())))
        })
        .collect()
}

/// Homogeneous part of degree `d` of coordinate `s`, as a dense-kit
/// polynomial.
pub fn part(f: &GermJet, s: usize, d: u32) -> P {
    f.coords()[s]
        .iter()
        .filter(|(m, _)| m.degree() == d)
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

pub fn linear_images(l: &LinearPart) -> Vec<P> {
    let n = l.dim();
    (0..n)
        .map(|s| {
            (0..n)
                .filter(|&i| !l.get(s, i).is_zero())
                .map(|i| {
                    let mut m = vec![0; n];
                    m[i] = 1;
                    (m, l.get(s, i).clone())
                })
                .collect()
        })
        .collect()
}

/// Degree-2 and degree-3 slices of f ∘ g by the chain rule:
///   (f∘g)_2 = A g_2 + f_2(Bz)
///   (f∘g)_3 = A g_3 + f_3(Bz) + Σ_i ∂_i f_2(Bz) (g_2)_i
/// with A, B the linear parts of f and g.
pub fn chain_rule_slices(f: &GermJet, g: &GermJet) -> (Vec<P>, Vec<P>) {
    let n = f.dim();
    let a = f.linear_part();
    let bz = linear_images(&g.linear_part());
    let g2: Vec<P> = (0..n).map(|s| part(g, s, 2)).collect();
    let g3: Vec<P> = (0..n).map(|s| part(g, s, 3)).collect();
    let mut d2 = Vec::new();
    let mut d3 = Vec::new();
    for s in 0..n {
        let mut two = p_subst(&part(f, s, 2), &bz, 3);
        let mut three = p_subst(&part(f, s, 3), &bz, 3);
        for i in 0..n {
            two = p_add(&two, &p_scale(&g2[i], a.get(s, i)));
            three = p_add(&three, &p_scale(&g3[i], a.get(s, i)));
            let df = p_subst(&p_derivative(&part(f, s, 2), i), &bz, 3);
            three = p_add(&three, &p_mul(&df, &g2[i], 3));
        }
        d2.push(two);
        d3.push(three);
    }
    (d2, d3)
}

pub fn slice_as_p(f: &GermJet, d: u32) -> Vec<P> {
    (0..f.dim()).map(|s| part(f, s, d)).collect()
}

/// Every (s, Q) with 2 <= |Q| <= k and λ^Q = λ_s, by direct nested
/// enumeration and repeated multiplication.
pub fn brute_resonances(eigs: &[CycloNum], k: u32) -> BTreeSet<(usize, Vec<u32>)> {
    let n = eigs.len();
    let f = eigs[0].field().clone();
    let mut out = BTreeSet::new();
    let mut q = vec![0u32; n];
    fn rec(
        i: usize,
        left: u32,
        q: &mut Vec<u32>,
        eigs: &[CycloNum],
        f: &CycloField,
        out: &mut BTreeSet<(usize, Vec<u32>)>,
    ) {
        if i == q.len() {
            let deg: u32 = q.iter().sum();
            if deg < 2 {
                return;
            }
            let mut v = CycloNum::one(f);
            for (j, &e) in q.iter().enumerate() {
                for _ in 0..e {
                    v = &v * &eigs[j];
                }
            }
            for (s, l) in eigs.iter().enumerate() {
                if &v == l {
                    out.insert((s, q.clone()));
                }
            }
            return;
        }
        for e in 0..=left {
            q[i] = e;
            rec(i + 1, left - e, q, eigs, f, out);
        }
        q[i] = 0;
    }
    rec(0, k, &mut q, eigs, &f, &mut out);
    out
}

/// A random eigenvalue: usually a root of unity of the field, sometimes a
/// non-root such as 2 or 1/3 + z.
pub fn random_eigenvalue(f: &CycloField, rng: &mut ChaCha8Rng) -> CycloNum {
    let n = f.conductor() as i64;
    let sign = if rng.gen_bool(0.3) { -1 } else { 1 };
    if rng.gen_bool(0.8) {
        CycloNum::zeta_pow(f, rng.gen_range(0..n.max(1))).scale(&Rational::from_integer(sign.into()))
    } else {
        random_nonzero(f, rng)
    }
}
