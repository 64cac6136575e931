//! Error type shared by all operations in this crate.

use std::fmt;

use crate::transform::TransformKind;

pub type Result<T> = std::result::Result<T, VanError>;

#[derive(Debug, Clone, PartialEq)]
pub enum VanError {
    /// Matrix size is not `2^t` with `t >= 1`.
    NonPowerOfTwo { n: usize },
    /// Circle radius below 1 (or not finite).
    RadiusOutOfRange { radius: f64 },
    /// Rotation angle is NaN or infinite.
    NonFiniteTheta,
    /// Explicit-matrix size exceeds the cap guarding dense allocations.
    SizeTooLarge { n: usize, cap: usize },
    /// Transform kind is incompatible with the spec's direction or radius.
    SpecMismatch {
        kind: TransformKind,
        reason: &'static str,
    },
    /// Input vector length differs from the spec's `N`.
    LengthMismatch { expected: usize, got: usize },
    /// `gamma_k` is undefined because `k·u >= 1`.
    DivergentGamma { k: u64 },
    /// The error-bound denominator `1 - t·ν` (or `1 - t·η`) is not positive.
    BoundDiverges,
    /// Roundoff model parameters fail their sanity checks.
    InvalidModel { reason: &'static str },
    /// Counterclockwise kinds use time advances and cannot be drawn as a
    /// realizable delay network.
    NotRealizable { kind: TransformKind },
    /// Graph export was asked to serialize a graph with no nodes.
    EmptyGraph,
    /// The measurement harness needs at least one trial.
    ZeroTrials,
    /// A frequency grid needs at least two points.
    InvalidGrid { points: usize },
}

impl fmt::Display for VanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanError::NonPowerOfTwo { n } => {
                write!(f, "matrix size {n} is not a power of two (need 2^t, t >= 1)")
            }
            VanError::RadiusOutOfRange { radius } => {
                write!(f, "circle radius {radius} is out of range (need a finite r >= 1)")
            }
            VanError::NonFiniteTheta => write!(f, "rotation angle must be finite"),
            VanError::SizeTooLarge { n, cap } => {
                write!(f, "explicit matrix of size {n} exceeds the cap {cap}")
            }
            VanError::SpecMismatch { kind, reason } => {
                write!(f, "spec incompatible with {kind}: {reason}")
            }
            VanError::LengthMismatch { expected, got } => {
                write!(f, "input length {got} does not match matrix size {expected}")
            }
            VanError::DivergentGamma { k } => {
                write!(f, "gamma_{k} diverges: k*u >= 1")
            }
            VanError::BoundDiverges => write!(f, "error bound diverges: t*nu >= 1"),
            VanError::InvalidModel { reason } => write!(f, "invalid roundoff model: {reason}"),
            VanError::NotRealizable { kind } => write!(
                f,
                "{kind} needs time advances; only clockwise kinds are realizable as delay networks"
            ),
            VanError::EmptyGraph => write!(f, "cannot export a graph with no nodes"),
            VanError::ZeroTrials => write!(f, "need at least one trial"),
            VanError::InvalidGrid { points } => {
                write!(f, "frequency grid needs at least two points, got {points}")
            }
        }
    }
}

impl std::error::Error for VanError {}
