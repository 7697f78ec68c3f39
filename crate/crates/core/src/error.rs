use thiserror::Error;

/// Errors raised by lattice, form and group computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("columns do not span a full-rank lattice")]
    RankDeficient,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix shapes do not agree: {0}")]
    DimensionMismatch(String),
    #[error("entry does not lie in the order {0}")]
    OrderMismatch(String),
    #[error("form is degenerate")]
    Degenerate,
    #[error("invalid polarization: {0}")]
    InvalidPolarization(String),
    #[error("vector is not a member of the kernel group")]
    NotMember,
    #[error("sublattice is not stable under the complex structure")]
    NotStable,
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("automorphism order {0} is not one of 2, 3, 4, 6")]
    BadOrder(u32),
    #[error("generator is not invertible over the order")]
    NotInvertible,
    #[error("form is not invariant under the group")]
    NotInvariant,
    #[error("pairing is degenerate on the group")]
    DegeneratePairing,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("pulled-back form is not integral")]
    IntegralityFailure,
    #[error("verification failed at check `{0}`")]
    VerificationFailed(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
