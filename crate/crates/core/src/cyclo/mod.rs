//! Exact arithmetic in Q and in cyclotomic fields Q(zeta_N).

mod approx;
mod field;
mod grammar;
mod number;
mod sqrt;

pub use approx::ComplexApprox;
pub use field::CycloField;
pub use grammar::{format_coeff, parse_coeff};
pub use number::CycloNum;
pub use sqrt::SquareRoot;

pub(crate) use field::{divisors, euler_phi, prime_factors};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
