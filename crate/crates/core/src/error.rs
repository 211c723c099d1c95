use alloc::string::String;

/// Everything that can go wrong in the algebra, calculus, functor and
/// proof-step layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("no substitution given for variable `{0}`")]
    MissingAssignment(String),
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A step or basis-size budget ran out; the answer is unknown, not no.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("direction subspace must name at least one variable")]
    EmptySubspace,
    #[error("direction has a nonzero component outside the subspace: {0}")]
    OutsideSubspace(String),
    #[error("additive level e = {0} requested in characteristic 0")]
    LevelInCharZero(u32),
    #[error("lowest nonzero t-power {0} is not a power of the characteristic exponent")]
    NotFrobeniusPower(u64),
    #[error("internal identity check failed: {0}")]
    IdentityCheck(String),

    #[error("quotient summand index {index} out of range ({count} summands)")]
    QuotientIndex { index: usize, count: usize },
    #[error("quotient ill-defined: deleted summand is not mapped into itself")]
    QuotientIllDefined,
    #[error("symmetric/alternating split of V⊗V needs characteristic ≠ 2")]
    CharacteristicTwo,
    #[error("invalid functor expression: {0}")]
    InvalidFunctor(String),

    #[error("polynomial does not depend on the designated summand coordinates")]
    IndependentOfSummand,
    #[error("derivative h vanishes modulo the projected ideal; choose another r0")]
    DerivativeVanishes,
    #[error("element is not affine-additive in the eliminated coordinates: {0}")]
    NotAffineAdditive(String),
    #[error("no unit minor found; elimination certificate not found")]
    CertificateNotFound,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
