use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two weight scalars over different bases were combined.
    BasisMismatch,
    /// Vector / matrix dimensions do not match.
    DimensionMismatch,
    /// Interval refinement hit its precision cap without separating two
    /// (apparently distinct) values.
    PrecisionExhausted,
    /// A basis declaration failed validation (non-square-free collision,
    /// duplicate unit, zero enclosure, ...).
    InvalidBasis(String),
    /// An exact result would leave the supported coefficient field
    /// (rationals or a single quadratic extension).
    FieldClosure,
    /// The truncation order cannot certify the requested minimum; retry at
    /// a higher order. Carries the order that failed.
    TruncationInsufficient { order: u32 },
    /// Zero input where a nonzero element is required.
    ZeroInput,
    /// Mixed coefficient domains or variable counts in series arithmetic.
    DomainMismatch,
    /// A substitution series has a nonzero constant term, or a linear part
    /// is singular where invertibility is required.
    SingularSystem,
    /// The quadratic part of a node equation does not split over the
    /// rationals into two distinct factors.
    NonSplitNode,
    /// Negative flag order or other evidence the input was not a regular
    /// section of the model.
    ModelConsistency(String),
    /// Weight entries must be strictly positive.
    NotPositive,
    /// Index out of range (e.g. `k > N_m` in a jumping table).
    OutOfRange,
    /// Weight ratio sits exactly on a chamber wall; perturb and retry.
    ChamberWall,
    /// Construction outside the declared scope of the crate.
    Unsupported(String),
    /// Empty input where at least one element is required.
    EmptyInput,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BasisMismatch => write!(f, "weight scalars use different bases"),
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::PrecisionExhausted => {
                write!(f, "enclosure refinement hit the precision cap")
            }
            Error::InvalidBasis(m) => write!(f, "invalid weight basis: {m}"),
            Error::FieldClosure => {
                write!(f, "result leaves the supported coefficient field")
            }
            Error::TruncationInsufficient { order } => {
                write!(f, "truncation order {order} cannot certify the minimum")
            }
            Error::ZeroInput => write!(f, "zero input"),
            Error::DomainMismatch => write!(f, "mixed series domains"),
            Error::SingularSystem => write!(f, "singular linear part"),
            Error::NonSplitNode => {
                write!(f, "quadratic part does not split over the rationals")
            }
            Error::ModelConsistency(m) => write!(f, "model consistency: {m}"),
            Error::NotPositive => write!(f, "weight entries must be positive"),
            Error::OutOfRange => write!(f, "index out of range"),
            Error::ChamberWall => write!(f, "weight ratio lies on a chamber wall"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::EmptyInput => write!(f, "empty input"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
