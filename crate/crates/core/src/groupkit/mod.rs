//! Group-level algorithms over generator lists: the product and conjugacy
//! conditions, closure and cyclicity, the per-monomial morphism checks, the
//! affine conjugacy criterion, and group linearization.

mod basic_set;
mod claims;
mod closure;
mod element;
mod keylemma;
mod linearize;
mod presentation;
mod search;
mod word;

pub use basic_set::{
    check_basic_set, check_product_identity, find_conjugacy_witness, verify_witness, BasicSetReport,
    BasicSetVerdict, NonConjugacy, PairStatus, WitnessSource, DEFAULT_WORD_BOUND,
};
pub use claims::{claim_morphism_check, ClaimEntry, ClaimReport, NonresonantClaim, ResonantClaim};
pub use closure::{closure_enumerate, is_cyclic, Closure, DEFAULT_CLOSURE_CAP};
pub use element::GroupElement;
pub use keylemma::{affine_keylemma_decide, AffineFamily, AffineMap, KeyLemmaBranch, KeyLemmaVerdict};
pub use linearize::{linearize_group, FailureReason, LinearizationOutcome, Offending};
pub use presentation::{GroupPresentation, Presentation};
pub use word::{Letter, Word};
