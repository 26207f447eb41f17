use alloc::string::String;
use core::fmt;

/// Failures reported by the geometric operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A disk coordinate at or beyond `1 - boundary_clamp` in modulus.
    OutsideDisk { modulus: f64 },
    /// A coordinate that is not a finite number.
    NonFinite,
    /// A tree address that violates its reduced-word invariants.
    InvalidAddress(String),
    /// Text that does not parse as a point, ideal point, word or scalar.
    Parse(String),
    /// A geodesic line was requested between an ideal point and itself.
    DegenerateLine,
    /// An operation that is only defined on one variant of a boundary point.
    WrongVariant { expected: &'static str },
    /// A boundary point outside Ω (singular, or regular over the diagonal).
    OutsideOmega,
    /// A sequence descriptor whose terms stay bounded.
    NotDivergent,
    /// Inputs that belong to different model spaces.
    ModelMismatch { expected: &'static str, found: &'static str },
    /// A parameter outside the domain of a segment, ray or line evaluator.
    ParameterOutOfRange,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutsideDisk { modulus } => {
                write!(f, "disk coordinate has modulus {modulus}, beyond the boundary clamp")
            }
            Error::NonFinite => f.write_str("coordinate is not finite"),
            Error::InvalidAddress(why) => write!(f, "invalid tree address: {why}"),
            Error::Parse(why) => write!(f, "parse error: {why}"),
            Error::DegenerateLine => f.write_str("geodesic line endpoints coincide"),
            Error::WrongVariant { expected } => write!(f, "expected a {expected} boundary point"),
            Error::OutsideOmega => f.write_str("boundary point is not in the ideal domain"),
            Error::NotDivergent => f.write_str("sequence descriptor is not divergent"),
            Error::ModelMismatch { expected, found } => {
                write!(f, "model mismatch: expected {expected}, found {found}")
            }
            Error::ParameterOutOfRange => f.write_str("parameter outside the evaluator's domain"),
        }
    }
}

impl core::error::Error for Error {}
