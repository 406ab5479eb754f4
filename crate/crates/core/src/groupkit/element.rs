use std::fmt;
use std::hash::Hash;

use crate::cyclo::CycloNum;
use crate::error::Result;
use crate::jet::{germ_order, GermJet, Order};

/// Operations the group algorithms need from an element type.
///
/// `compose(a, b)` is a ∘ b; a word `x1*x2*...*xk` evaluates to
/// x1 ∘ x2 ∘ ... ∘ xk.
pub trait GroupElement: Clone + Eq + Hash + Ord + Send + Sync + fmt::Display + fmt::Debug {
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// The identity of the group this element lives in.
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Errors when the two elements cannot be composed.
    fn check_compatible(&self, other: &Self) -> Result<()>;
    fn element_order(&self) -> Order;
    /// Values that agree on conjugate elements.
    fn conjugacy_invariant(&self) -> Vec<CycloNum>;

    fn conjugate_by(&self, w: &Self, w_inv: &Self) -> Self {
        w.compose(self).compose(w_inv)
    }
}

impl GroupElement for GermJet {
    fn compose(&self, other: &Self) -> Self {
        self.compose_unchecked(other)
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn identity_like(&self) -> Self {
        GermJet::identity(self.field(), self.dim(), self.order())
    }

    fn is_identity(&self) -> bool {
        GermJet::is_identity(self)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        GermJet::check_compatible(self, other)
    }

    fn element_order(&self) -> Order {
        germ_order(self)
    }

    fn conjugacy_invariant(&self) -> Vec<CycloNum> {
        self.linear_part().char_poly()
    }
}
