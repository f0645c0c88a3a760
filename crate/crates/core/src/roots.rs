//! Aberth–Ehrlich simultaneous root finding.
//!
//! All degree-`n` roots are refined together, which avoids deflation error
//! and exploits good structural initial guesses (the boundary-preimage
//! polynomials have all roots on the unit circle).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max-correction convergence tolerance.
pub const CORRECTION_TOL: f64 = 1e-13;
/// Iteration cap.
pub const MAX_ITERATIONS: usize = 200;

/// Evaluate `p` and `p'` at `z` (coefficients in ascending powers).
fn horner2(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Scale of the terms of `p` at `z`; `|p(z)|` below a few ulps of this is
/// numerically zero.
fn term_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut rk = 1.0;
    for c in coeffs {
        scale += c.norm() * rk;
        rk *= r;
    }
    scale
}

/// Run Aberth–Ehrlich from the given initial guesses.
///
/// `coeffs` are ascending-power coefficients with a nonzero leading term;
/// `initial.len()` must equal the degree. Stops when every point either
/// moved less than `tol` or sits on a numerically-zero value of `p`.
pub fn aberth(
    coeffs: &[Complex64],
    initial: &[Complex64],
    tol: f64,
    max_iterations: usize,
) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    assert_eq!(initial.len(), degree, "one guess per root");
    assert!(coeffs[degree].norm() > 0.0, "leading coefficient must be nonzero");

    let mut z: Vec<Complex64> = initial.to_vec();
    for iteration in 0..max_iterations {
        // Nudge coincident points apart; the update below divides by their
        // differences.
        for i in 0..degree {
            for j in 0..i {
                if (z[i] - z[j]).norm() < 1e-14 {
                    z[i] += Complex64::new(1e-7, 2e-7) * (1.0 + i as f64);
                }
            }
        }

        let mut all_done = true;
        for i in 0..degree {
            let (p, dp) = horner2(coeffs, z[i]);
            if p.norm() <= 8.0 * f64::EPSILON * term_scale(coeffs, z[i]) {
                continue; // numerically a root already
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    repulsion += (z[i] - z[j]).inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let w = if denom.norm() > 1e-290 { newton / denom } else { newton };
            z[i] -= w;
            if w.norm() > tol {
                all_done = false;
            }
        }
        if all_done {
            return Ok(z);
        }
        let _ = iteration;
    }

    let worst = z
        .iter()
        .map(|&zi| horner2(coeffs, zi).0.norm())
        .fold(0.0, f64::max);
    Err(Error::RootsDidNotConverge {
        iterations: max_iterations,
        worst_residual: worst,
    })
}

/// Roots of a polynomial known to have all roots on the unit circle.
///
/// Initial guesses are `degree` equally spaced points on the unit circle,
/// rotated by `phase` plus a fixed offset so that symmetric inputs do not
/// start on a mirror axis of the root set.
pub fn roots_on_unit_circle(coeffs: &[Complex64], phase: f64) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    let offset = (phase + 2.4) / degree as f64;
    let initial: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(1.0, offset + 2.0 * std::f64::consts::PI * k as f64 / degree as f64))
        .collect();
    aberth(coeffs, &initial, CORRECTION_TOL, MAX_ITERATIONS)
}

/// Roots of a general polynomial; leading coefficients below
/// `1e-12 * max|c|` are trimmed first.
///
/// Returns an empty list for (numerically) constant polynomials with a
/// nonzero value, and an error when every coefficient is negligible.
pub fn roots_general(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::VanishingNumerator);
    }
    let mut trimmed: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = trimmed.last() {
        if last.norm() <= 1e-12 * max && trimmed.len() > 1 {
            trimmed.pop();
        } else {
            break;
        }
    }
    let degree = trimmed.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    // Cauchy-style bound keeps every root inside the initial circle.
    let lead = trimmed[degree].norm();
    let radius = 1.0 + trimmed.iter().map(|c| c.norm()).fold(0.0, f64::max) / lead;
    let initial: Vec<Complex64> = (0..degree)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.37 + 2.0 * std::f64::consts::PI * k as f64 / degree as f64,
            )
        })
        .collect();
    aberth(&trimmed, &initial, CORRECTION_TOL, MAX_ITERATIONS)
}
