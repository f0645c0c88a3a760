//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors raised by construction, evaluation and sampling operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero #{index} has modulus {modulus} but must lie strictly inside the unit disk")]
    ZeroOutsideDisk { index: usize, modulus: f64 },

    #[error("a canonical product needs at least one listed zero (degree 1 has no curves)")]
    DegreeTooLow,

    #[error("operation needs degree >= 2, got degree {degree}")]
    DegreeTooLowFor { degree: usize },

    #[error("lambda has modulus {modulus}, expected a unit-modulus value")]
    NonUnimodularLambda { modulus: f64 },

    #[error("evaluation point is within {distance:e} of a pole")]
    NearPole { distance: f64 },

    #[error("root finder stopped after {iterations} iterations, worst residual {worst_residual:e}")]
    RootsDidNotConverge { iterations: usize, worst_residual: f64 },

    #[error("computed preimage is off the unit circle by {deviation:e}; this is a solver bug")]
    PreimageOffCircle { deviation: f64 },

    #[error("preimage fails to map back to lambda (residual {residual:e}); this is a solver bug")]
    PreimageResidual { residual: f64 },

    #[error("preimages are only {distance:e} apart; expected distinct boundary roots")]
    PreimagesTooClose { distance: f64 },

    #[error("chord endpoints coincide")]
    CoincidentEndpoints,

    #[error("chord endpoint has modulus {modulus}, expected 1")]
    EndpointOffCircle { modulus: f64 },

    #[error("polynomial is not Hermitian-symmetric (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("imaginary residual {value:e} exceeds tolerance at term scale {scale:e}")]
    ImaginaryResidual { value: f64, scale: f64 },

    #[error("conic classification needs total degree exactly 2, got {degree}")]
    NotAConic { degree: u32 },

    #[error("divided-difference order must be at least 1")]
    ZeroDifferenceOrder,

    #[error("no transcribed closed form for degree {degree} (supported: 2..=5)")]
    UnsupportedClosedForm { degree: usize },

    #[error("branch tracking ambiguous at theta index {index}; the theta grid is too coarse")]
    AmbiguousTracking { index: usize },

    #[error("envelope consistency check failed at theta index {index} (residual {residual:e})")]
    EnvelopeInconsistency { index: usize, residual: f64 },

    #[error("residue pair sums to {modulus:e}; dividing point undefined")]
    DegenerateResiduePair { modulus: f64 },

    #[error("the polar of 0 is the line at infinity")]
    PolarOfOrigin,

    #[error("line passes through the origin; its dual point is at infinity")]
    DualPointAtInfinity,

    #[error("(u, v) = (0, 0) does not define an affine line")]
    NotALine,

    #[error("parameter {name} = {value} must lie in (0, 1)")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("no sign change on bracket [{lo}, {hi}]; cannot bisect")]
    NoBracket { lo: f64, hi: f64 },

    #[error("partial-fraction numerator vanishes identically")]
    VanishingNumerator,

    #[error("cannot parse complex number from {input:?}: {reason}")]
    ParseComplex { input: String, reason: &'static str },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
