use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Each variant carries a stable name (see [`Error::name`]) that the command
/// line front end prints in its diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("value {value} is not integral at p = {p}")]
    NonIntegralAtP { p: u64, value: String },
    #[error("operands use different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(String),
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not reversible: {0}")]
    NotReversible(String),
    #[error("integration divides by {k}, which is not invertible mod {p}")]
    IntegrateInResidueRing { p: u64, k: u64 },
    #[error("scalar {0} is not representable in the coefficient ring")]
    ScalarNotRepresentable(String),
    #[error("index {index} exceeds truncation order {order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("bad genus parameters: {0}")]
    BadParams(String),
    #[error("no closed form for {0}")]
    UnsupportedClosedForm(String),
    #[error("operation not supported for genus {0}")]
    UnsupportedKind(String),
    #[error("y = {y} is congruent to -1 mod {p}")]
    DegenerateChiY { p: u64, y: String },
    #[error("division by zero")]
    ZeroDivision,
    #[error("weight {0} is zero mod p")]
    ZeroWeight(i64),
    #[error("residues are not distinct mod {0}")]
    DuplicateResidues(u64),
    #[error("dimension {n} exceeds the guard n <= p - 2 for p = {p}")]
    GuardViolation { n: usize, p: u64 },
    #[error("genus value does not live in the coefficient ring of the genus")]
    RingMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable diagnostic name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotOddPrime(_) => "NotOddPrime",
            Error::NonIntegralAtP { .. } => "NonIntegralAtP",
            Error::PrimeMismatch(..) => "PrimeMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonUnitConstantTerm(_) => "NonUnitConstantTerm",
            Error::NonzeroInnerConstant => "NonzeroInnerConstant",
            Error::NotReversible(_) => "NotReversible",
            Error::IntegrateInResidueRing { .. } => "IntegrateInResidueRing",
            Error::ScalarNotRepresentable(_) => "ScalarNotRepresentable",
            Error::IndexBeyondTruncation { .. } => "IndexBeyondTruncation",
            Error::BadParams(_) => "BadParams",
            Error::UnsupportedClosedForm(_) => "UnsupportedClosedForm",
            Error::UnsupportedKind(_) => "UnsupportedKind",
            Error::DegenerateChiY { .. } => "DegenerateChiY",
            Error::ZeroDivision => "ZeroDivision",
            Error::ZeroWeight(_) => "ZeroWeight",
            Error::DuplicateResidues(_) => "DuplicateResidues",
            Error::GuardViolation { .. } => "GuardViolation",
            Error::RingMismatch => "RingMismatch",
            Error::Precondition(_) => "Precondition",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
