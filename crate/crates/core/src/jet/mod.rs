//! Truncated polynomial jets of self-maps of (C^n, 0) and the jet group
//! operations: composition, inversion, conjugation, powers and orders.

mod germ;
mod linear;
mod monomial;
mod order;

pub use germ::{GermJet, Poly};
pub use linear::LinearPart;
pub use monomial::Monomial;
pub use order::{germ_order, germ_order_with_bound, linear_order, InfiniteOrder, Order, DEFAULT_ORDER_BOUND};

/// `f ∘ g` truncated at the common order.
pub fn jet_compose(f: &GermJet, g: &GermJet) -> crate::Result<GermJet> {
    f.compose(g)
}

pub fn jet_invert(f: &GermJet) -> GermJet {
    f.invert()
}

/// `h ∘ f ∘ h^-1`.
pub fn jet_conjugate(h: &GermJet, f: &GermJet) -> crate::Result<GermJet> {
    GermJet::conjugate(h, f)
}

pub fn jet_pow(f: &GermJet, m: i64) -> GermJet {
    f.pow(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{parse_coeff, CycloField};

    fn q3() -> CycloField {
        CycloField::new(3).unwrap()
    }

    /// f1 = (-z1, z z2) and f5 = (-z1 + z2^2, z z2) over Q(zeta_3), K = 2.
    fn f1_f5() -> (GermJet, GermJet) {
        let f = q3();
        let f1 = GermJet::from_strs(&f, 2, 2, &[&[("-1", &[1, 0])], &[("z", &[0, 1])]]).unwrap();
        let f5 = GermJet::from_strs(
            &f,
            2,
            2,
            &[&[("-1", &[1, 0]), ("1", &[0, 2])], &[("z", &[0, 1])]],
        )
        .unwrap();
        (f1, f5)
    }

    // f(g(z)) = -g + g^2 leaves (-c - 2) z^3, so c = -2
    #[test]
    fn inverse_of_quadratic_map() {
        let q = CycloField::rationals();
        let f = GermJet::from_strs(&q, 1, 3, &[&[("-1", &[1]), ("1", &[2])]]).unwrap();
        let want =
            GermJet::from_strs(&q, 1, 3, &[&[("-1", &[1]), ("1", &[2]), ("-2", &[3])]]).unwrap();
        let g = f.invert();
        assert_eq!(g, want);
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn g1_word() {
        let (f1, f5) = f1_f5();
        let g1 = f1.pow(4).compose(&f5).unwrap().compose(&f1).unwrap();
        let want = GermJet::from_strs(
            &q3(),
            2,
            2,
            &[&[("1", &[1, 0]), ("z^2", &[0, 2])], &[("1", &[0, 1])]],
        )
        .unwrap();
        assert_eq!(g1, want);
        // f1 ∘ g1 = g1 ∘ f5
        assert_eq!(f1.compose(&g1).unwrap(), g1.compose(&f5).unwrap());
        assert_eq!(jet_conjugate(&g1, &f5).unwrap(), f1);
        for n in 1..6 {
            let want = GermJet::from_strs(
                &q3(),
                2,
                2,
                &[&[("1", &[1, 0]), (&format!("{n}*z^2"), &[0, 2])], &[("1", &[0, 1])]],
            )
            .unwrap();
            assert_eq!(g1.pow(n), want);
        }
        assert!(germ_order(&g1).is_infinite());
    }

    #[test]
    fn six_generators_compose_to_identity() {
        let (f1, f5) = f1_f5();
        let f6 = GermJet::from_strs(
            &q3(),
            2,
            2,
            &[&[("-1", &[1, 0]), ("z^2", &[0, 2])], &[("z", &[0, 1])]],
        )
        .unwrap();
        let gens = [&f1, &f1, &f1, &f1, &f5, &f6];
        let mut acc = GermJet::identity(&q3(), 2, 2);
        for g in gens {
            acc = acc.compose(g).unwrap();
        }
        assert!(acc.is_identity(), "{acc}");
    }

    #[test]
    fn pow_and_order_of_linear_maps() {
        let q4 = CycloField::new(4).unwrap();
        let a = GermJet::from_strs(&q4, 2, 3, &[&[("z", &[1, 0])], &[("-z", &[0, 1])]]).unwrap();
        assert!(a.pow(0).is_identity());
        assert!(a.pow(4).is_identity());
        let ainv = GermJet::from_strs(&q4, 2, 3, &[&[("-z", &[1, 0])], &[("z", &[0, 1])]]).unwrap();
        assert_eq!(a.invert(), ainv);
        assert_eq!(a.pow(-1), ainv);
        assert_eq!(germ_order(&a), Order::Finite(4));
        assert_eq!(germ_order(&GermJet::identity(&q4, 2, 3)), Order::Finite(1));
    }

    #[test]
    fn tangent_to_identity_is_infinite() {
        let q = CycloField::rationals();
        let f = GermJet::from_strs(&q, 1, 2, &[&[("1", &[1]), ("1", &[2])]]).unwrap();
        assert_eq!(
            germ_order(&f),
            Order::Infinite(InfiniteOrder::TangentToIdentity { power: 1, degree: 2 })
        );
        // an involution with nonlinear terms still has order 2
        let g = GermJet::from_strs(&q, 1, 3, &[&[("-1", &[1]), ("1", &[2])]]).unwrap();
        let inv = g.invert();
        let h = GermJet::conjugate(&g, &GermJet::from_strs(&q, 1, 3, &[&[("-1", &[1])]]).unwrap())
            .unwrap();
        assert_eq!(germ_order(&h), Order::Finite(2));
        assert!(germ_order(&inv).is_infinite());
    }

    #[test]
    fn shape_errors() {
        let q = CycloField::rationals();
        assert!(matches!(
            GermJet::from_strs(&q, 2, 2, &[&[("1", &[0, 3])], &[("1", &[0, 1])]]),
            Err(crate::Error::Shape(_))
        ));
        assert_eq!(
            GermJet::from_strs(&q, 1, 2, &[&[("1", &[2])]]).unwrap_err(),
            crate::Error::SingularLinearPart
        );
        let a = GermJet::identity(&q, 1, 2);
        let b = GermJet::identity(&q, 1, 3);
        assert!(a.compose(&b).is_err());
        let _ = parse_coeff(&q, "1").unwrap();
    }
}
