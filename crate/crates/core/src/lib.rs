//! Curves attached to finite Blaschke products.
//!
//! A canonical Blaschke product `B` of degree `d` maps the unit circle onto
//! itself `d`-to-one. Two real algebraic curves ride on that structure:
//!
//! * the *interior curve*: the envelope of all chords joining pairs of
//!   preimages of a boundary value, as that value runs around the circle;
//! * the *exterior curve*: the trace of the intersection points of the
//!   circle tangents erected at the same preimages.
//!
//! This crate computes both — boundary preimage fans with residues and
//! angular derivatives ([`BlaschkeProduct::preimages`]), the general
//! defining polynomial of the exterior curve and its low-degree closed
//! forms ([`exterior`]), analytic envelope sampling ([`interior`]), the
//! pole–polar duality connecting the two curves ([`duality`]), two worked
//! degree-5 families with known factorizations ([`families`]), seeded
//! verification suites ([`verify`]) and SVG rendering ([`render`]).

pub mod blaschke;
pub mod complex_fmt;
pub mod duality;
pub mod error;
pub mod exterior;
pub mod families;
pub mod interior;
pub mod render;
pub mod roots;
pub mod samples;
pub mod sympoly;
pub mod verify;

pub use blaschke::{canonicalize, BlaschkeProduct, Canonicalized, PreimageFan};
pub use duality::{
    chord_to_proj_line, converse_check, dual_check, exterior_tangent_lines, line_to_dual_point,
    polar_to_pole, pole_to_polar, DualCheckReport, Pole, ProjLine, TangentLines,
};
pub use error::{Error, Result};
pub use exterior::{degeneracy_report, exterior_equation, exterior_equation_closed,
    exterior_samples, DegeneracyReport};
pub use families::{
    family_ab, family_ab_exterior_check, family_ab_interior_check, family_ab_params, family_c,
    family_c_checks, family_c_params, FamilyAbParams, FamilyCParams,
};
pub use interior::{
    chord, envelope_samples, inscribed_ellipse, marden_points, siebeck_foci, ChordLine,
    InscribedEllipse,
};
pub use samples::{CurveKind, CurveSamples, SampleEntry};
pub use sympoly::{conic_classify, divided_difference_coeffs, BivarPoly, ConicClass, RealPoly2};
pub use verify::{run_suite, Suite, SuiteReport};

/// Uniform grid of `n` angles `2*pi*k/n`, `k = 0..n`.
pub fn uniform_thetas(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect()
}
