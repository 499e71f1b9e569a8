use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input.
    Input,
    /// A claimed operation does not preserve the data set.
    Incarnation,
    /// A hypothesis of an operator construction failed.
    Hypothesis,
    /// An invariant the library guarantees did not hold.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("measurement name {0:?} used twice")]
    DuplicateName(String),
    #[error("unknown measurement {0:?}")]
    UnknownMeasurement(String),
    #[error("unknown operation {0:?}")]
    UnknownOperation(String),
    #[error("measurement {name:?} has {found} values, domain has {expected} points")]
    WrongLength { name: String, expected: usize, found: usize },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("empty data set (pass allow_empty to permit it)")]
    EmptyDataSet,
    #[error("point map is not total: {0:?} has no image")]
    PartialMap(String),
    #[error("value map has no entry for {0}")]
    ValueMapMiss(Rational),
    #[error("value map is not invertible")]
    NotInvertible,
    #[error("copair undefined: {0}")]
    CopairConflict(String),
    #[error("{op} is not an operation: {measurement} composed with it leaves the data set")]
    NotAnOperation { op: String, measurement: String },
    #[error("enumeration guard exceeded: {size} points, guard is {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("equivariance fails at ({measurement}, {op}): alpha(phi g) = {lhs} but alpha(phi) T(g) = {rhs}")]
    Equivariance { measurement: String, op: String, lhs: String, rhs: String },
    #[error("subset is not invariant: {op} sends {point} outside it")]
    NotInvariant { point: String, op: String },
    #[error("point map is not a bijection")]
    NotBijective,
    #[error("relation {left:?} ~ {right:?} between {omega} and {omega_prime} is not preserved")]
    RelationViolation { omega: String, omega_prime: String, left: Vec<String>, right: Vec<String> },
    #[error("coincidence {omega}.{g} = {omega_prime}.{h} is not preserved")]
    CoincidenceViolation { omega: String, g: String, omega_prime: String, h: String },
    #[error("{0:?} is not a basis of the source incarnation")]
    NotABasis(Vec<String>),
    #[error("incarnation kind: {0}")]
    KindMismatch(String),
    #[error("T is not a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: String, h: String },
    #[error("endpoint mismatch in composition")]
    EndpointMismatch,
    #[error("point map does not realize the function")]
    NotARealization,
    #[error("vertex map does not send simplex {0:?} to a simplex")]
    SimplicialMap(Vec<String>),
    #[error("complex built up to dimension {cap}, degree {degree} needs {needed}")]
    DimensionCap { cap: usize, degree: usize, needed: usize },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("scale parameter must be non-negative, got {0}")]
    NegativeScale(Rational),
    #[error("grothendieck graph: {0}")]
    Graph(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotAnOperation { .. } => ErrorClass::Incarnation,
            Error::Equivariance { .. }
            | Error::NotInvariant { .. }
            | Error::NotBijective
            | Error::NotInvertible
            | Error::RelationViolation { .. }
            | Error::CoincidenceViolation { .. }
            | Error::NotABasis(_)
            | Error::KindMismatch(_)
            | Error::NotHomomorphism { .. }
            | Error::EndpointMismatch
            | Error::NotARealization
            | Error::CopairConflict(_) => ErrorClass::Hypothesis,
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }
}
