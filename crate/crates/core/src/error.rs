use thiserror::Error;

/// Errors raised by the library. Limits reached during searches (bounded
/// witness search, closure caps, inconclusive orders) are ordinary values,
/// not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be positive")]
    InvalidConductor,

    #[error("conductor mismatch: Q(zeta_{left}) vs Q(zeta_{right}); embed first")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    Embedding { from: u32, to: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("linear part is singular")]
    SingularLinearPart,

    #[error("linear part is not diagonal")]
    NotDiagonal,

    #[error("zero eigenvalue at coordinate {0}")]
    ZeroEigenvalue(usize),

    #[error("monomial {monomial} is resonant at coordinate {coordinate}")]
    ResonantKey { coordinate: usize, monomial: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),

    #[error("unknown generator `{0}`")]
    UnknownName(String),

    #[error("multiplier is not a root of unity of order > 1")]
    BadMultiplier,

    #[error("point is not fixed by the map")]
    NotFixed,

    #[error("fixed points need a quadratic extension of Q(zeta_{conductor})")]
    ExtensionRequired { conductor: u32 },

    #[error("group is not closed under composition")]
    NotClosed,

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
