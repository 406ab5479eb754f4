mod common;

use common::*;
use germ_forge::cyclo::{CycloNum, Rational};
use germ_forge::jet::{germ_order, jet_compose, jet_conjugate, jet_invert, jet_pow, GermJet, Monomial, Order};
use germ_forge::Error;
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (u32, usize, u32, u64)> {
    (prop::sample::select(vec![1u32, 3, 4, 5]), 1usize..=2, 2u32..=4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative((n, dim, k, seed) in shape()) {
        let f = field(n);
        let mut r = rng(seed);
        let a = random_jet(&f, dim, k, &mut r);
        let b = random_jet(&f, dim, k, &mut r);
        let c = random_jet(&f, dim, k, &mut r);
        let left = jet_compose(&jet_compose(&a, &b).unwrap(), &c).unwrap();
        let right = jet_compose(&a, &jet_compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_on_both_sides((n, dim, k, seed) in shape()) {
        let f = field(n);
        let a = random_jet(&f, dim, k, &mut rng(seed));
        let inv = jet_invert(&a);
        prop_assert!(jet_compose(&a, &inv).unwrap().is_identity());
        prop_assert!(jet_compose(&inv, &a).unwrap().is_identity());
        prop_assert_eq!(jet_invert(&inv), a);
    }

    #[test]
    fn truncation_commutes_with_composition((n, dim, k, seed) in shape()) {
        let f = field(n);
        let mut r = rng(seed);
        let (a, b) = (random_jet(&f, dim, k, &mut r), random_jet(&f, dim, k, &mut r));
        let ab = jet_compose(&a, &b).unwrap();
        for j in 1..k {
            let low = jet_compose(&a.with_order(j), &b.with_order(j)).unwrap();
            prop_assert_eq!(ab.with_order(j), low);
        }
    }

    #[test]
    fn chain_rule_at_degrees_two_and_three((n, dim, _k, seed) in shape()) {
        let f = field(n);
        let mut r = rng(seed);
        let (a, b) = (random_jet(&f, dim, 3, &mut r), random_jet(&f, dim, 3, &mut r));
        let ab = jet_compose(&a, &b).unwrap();
        let (d2, d3) = chain_rule_slices(&a, &b);
        prop_assert_eq!(slice_as_p(&ab, 2), d2);
        prop_assert_eq!(slice_as_p(&ab, 3), d3);
        prop_assert_eq!(ab.linear_part(), a.linear_part().mul(&b.linear_part()));
    }

    #[test]
    fn tangent_to_identity_power_law((n, dim, k, seed) in shape(), m in -4i64..=6, from in 2u32..=3) {
        // f = Id + P_d + ...: the degree-d slice of f^m is m P_d
        let f = field(n);
        let from = from.min(k);
        let t = random_tangent(&f, dim, k, from, &mut rng(seed));
        let Some(d) = t.lowest_nonlinear_degree() else { return Ok(()) };
        let m_num = CycloNum::from_rational(&f, &Rational::from_integer(m.into()));
        let expected: Vec<P> = slice_as_p(&t, d).iter().map(|p| p_scale(p, &m_num)).collect();
        prop_assert_eq!(slice_as_p(&jet_pow(&t, m), d), expected);
        prop_assert!(matches!(germ_order(&t), Order::Infinite(_)));
    }

    #[test]
    fn pow_matches_repeated_composition((n, dim, k, seed) in shape(), m in 0i64..=5) {
        let f = field(n);
        let a = random_jet(&f, dim, k, &mut rng(seed));
        let mut acc = GermJet::identity(&f, dim, k);
        for _ in 0..m {
            acc = jet_compose(&acc, &a).unwrap();
        }
        prop_assert_eq!(jet_pow(&a, m), acc.clone());
        prop_assert_eq!(jet_pow(&a, -m), jet_invert(&acc));
    }

    #[test]
    fn conjugation_by_definition((n, dim, k, seed) in shape()) {
        let f = field(n);
        let mut r = rng(seed);
        let (h, a) = (random_jet(&f, dim, k, &mut r), random_jet(&f, dim, k, &mut r));
        let c = jet_conjugate(&h, &a).unwrap();
        let direct = jet_compose(&jet_compose(&h, &a).unwrap(), &jet_invert(&h)).unwrap();
        prop_assert_eq!(&c, &direct);
        prop_assert_eq!(c.linear_part().char_poly(), a.linear_part().char_poly());
    }
}

#[test]
fn composition_reads_as_substitution() {
    // f(g(z)) for f = z + z^2, g = 2z
    let q = field(1);
    let f = GermJet::from_strs(&q, 1, 3, &[&[("1", &[1]), ("1", &[2])]]).unwrap();
    let g = GermJet::from_strs(&q, 1, 3, &[&[("2", &[1])]]).unwrap();
    let fg = jet_compose(&f, &g).unwrap();
    assert_eq!(fg.coeff(0, &Monomial::new(vec![2])), CycloNum::from_integer(&q, 4));
}

#[test]
fn shape_and_field_errors() {
    let q = field(1);
    let f3 = field(3);
    let a = GermJet::identity(&q, 2, 3);
    assert!(matches!(jet_compose(&a, &GermJet::identity(&q, 2, 2)), Err(Error::Shape(_))));
    assert!(matches!(jet_compose(&a, &GermJet::identity(&q, 1, 3)), Err(Error::Shape(_))));
    assert!(matches!(
        jet_compose(&a, &GermJet::identity(&f3, 2, 3)),
        Err(Error::ConductorMismatch { .. })
    ));
    assert!(GermJet::from_strs(&q, 1, 2, &[&[("1", &[3])]]).is_err());
    assert!(GermJet::from_strs(&q, 1, 2, &[&[("1", &[2])]]).is_err(), "singular linear part");
}

#[test]
fn finite_orders_of_linear_jets() {
    let f4 = field(4);
    let a = GermJet::from_strs(&f4, 2, 3, &[&[("z", &[1, 0])], &[("-z", &[0, 1])]]).unwrap();
    assert_eq!(germ_order(&a), Order::Finite(4));
    let mut r = rng(7);
    let psi = random_tangent(&f4, 2, 3, 2, &mut r);
    assert_eq!(germ_order(&jet_conjugate(&psi, &a).unwrap()), Order::Finite(4));
}
