use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// reported directly by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("operation requires a quadratic base, got degree {0}")]
    DegreeMismatch(usize),

    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("value lies outside the expansion interval")]
    OutOfDomain,

    #[error("no period found within {0} steps")]
    NoPeriodFound(usize),

    #[error("value is not representable: {0}")]
    NotRepresentable(String),

    #[error("digit string is not admissible")]
    NotAdmissible,

    #[error("letter {0} is not in the alphabet of the morphism")]
    UnknownLetter(u8),

    #[error("fixed point iteration is not prolongable: {0}")]
    NotProlongable(String),

    #[error("prefix budget too small: factor data for length {length} still changes between budgets")]
    BudgetTooSmall { length: usize },

    #[error("window needs at least {required} digits, {given} were allowed")]
    WindowTooWide { required: usize, given: usize },

    #[error("element is not an algebraic unit of Z[beta]")]
    NotAUnit,

    #[error("wrong base family: {0}")]
    WrongFamily(String),

    #[error("integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
