//! Canonical Blaschke products and their boundary preimage fans.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots;

/// Residual bound `|B(z_j) - lambda|` enforced on every solved preimage.
pub const FAN_RESIDUAL_TOL: f64 = 1e-9;
/// Bound on `||z_j| - 1|` enforced on every solved preimage.
pub const FAN_CIRCLE_TOL: f64 = 1e-7;
/// Minimum pairwise distance between preimages of one fan.
pub const FAN_SEPARATION: f64 = 1e-7;

const POLE_TOL: f64 = 1e-12;

/// A canonical Blaschke product `B(z) = z * prod (z - a_k)/(1 - conj(a_k) z)`.
///
/// The zero at the origin is implicit; `zeros` holds the remaining `d - 1`
/// zeros, all strictly inside the unit disk. The elementary symmetric
/// polynomials `sigma_0..sigma_d` of the listed zeros are cached
/// (`sigma_0 = 1`, `sigma_d = 0` by convention). Immutable once built.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    sigma: Vec<Complex64>,
}

impl BlaschkeProduct {
    /// Build the canonical product with the given non-origin zeros.
    ///
    /// Rejects an empty list (a degree-1 product has no curves) and any
    /// zero on or outside the unit circle.
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::DegreeTooLow);
        }
        Self::from_zeros_unchecked(zeros)
    }

    /// Like [`BlaschkeProduct::new`] but allows the degree-1 identity
    /// product `B(z) = z`; only [`canonicalize`] produces that case.
    fn from_zeros_unchecked(zeros: Vec<Complex64>) -> Result<Self> {
        for (index, a) in zeros.iter().enumerate() {
            if a.norm() >= 1.0 {
                return Err(Error::ZeroOutsideDisk {
                    index,
                    modulus: a.norm(),
                });
            }
        }
        let sigma = elementary_symmetric(&zeros);
        Ok(Self { zeros, sigma })
    }

    /// Degree of the product as a rational map (`zeros.len() + 1`).
    pub fn degree(&self) -> usize {
        self.zeros.len() + 1
    }

    /// The non-origin zeros `a_1..a_{d-1}`.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Cached `sigma_0..sigma_d` with `sigma_0 = 1` and `sigma_d = 0`.
    pub fn sigma(&self) -> &[Complex64] {
        &self.sigma
    }

    fn check_not_near_pole(&self, z: Complex64) -> Result<()> {
        for a in &self.zeros {
            if a.norm() > 0.0 {
                let pole = a.conj().inv();
                let distance = (z - pole).norm();
                if distance < POLE_TOL {
                    return Err(Error::NearPole { distance });
                }
            }
        }
        Ok(())
    }

    /// Evaluate `B(z)`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.check_not_near_pole(z)?;
        let mut value = z;
        for a in &self.zeros {
            value *= (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z);
        }
        Ok(value)
    }

    /// Evaluate `B'(z)`.
    ///
    /// Uses the logarithmic derivative away from the zeros of `B` and a
    /// product-rule expansion near them (the logarithmic form is singular
    /// there).
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        self.check_not_near_pole(z)?;
        let near_zero =
            z.norm() < 1e-8 || self.zeros.iter().any(|a| (z - a).norm() < 1e-8);
        if near_zero {
            return Ok(self.derivative_product_rule(z));
        }
        let mut log_deriv = z.inv();
        for a in &self.zeros {
            log_deriv += (z - a).inv() + a.conj() / (Complex64::new(1.0, 0.0) - a.conj() * z);
        }
        Ok(self.evaluate(z)? * log_deriv)
    }

    fn factor_data(&self, z: Complex64) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
        let one = Complex64::new(1.0, 0.0);
        let mut f = vec![z];
        let mut f1 = vec![one];
        let mut f2 = vec![Complex64::new(0.0, 0.0)];
        for a in &self.zeros {
            let den = one - a.conj() * z;
            f.push((z - a) / den);
            let unit = one - a.conj() * a; // 1 - |a|^2
            f1.push(unit / (den * den));
            f2.push(2.0 * a.conj() * unit / (den * den * den));
        }
        (f, f1, f2)
    }

    fn derivative_product_rule(&self, z: Complex64) -> Complex64 {
        let (f, f1, _) = self.factor_data(z);
        let n = f.len();
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut term = f1[i];
            for (j, fj) in f.iter().enumerate() {
                if j != i {
                    term *= fj;
                }
            }
            total += term;
        }
        total
    }

    /// Evaluate `B''(z)` by the product rule (exact at zeros of `B`).
    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        self.check_not_near_pole(z)?;
        let (f, f1, f2) = self.factor_data(z);
        let n = f.len();
        let skip_product = |skip_a: usize, skip_b: usize| {
            let mut prod = Complex64::new(1.0, 0.0);
            for (j, fj) in f.iter().enumerate() {
                if j != skip_a && j != skip_b {
                    prod *= fj;
                }
            }
            prod
        };
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..n {
            total += f2[i] * skip_product(i, i);
        }
        for i in 0..n {
            for j in 0..i {
                total += 2.0 * f1[i] * f1[j] * skip_product(i, j);
            }
        }
        Ok(total)
    }

    /// Coefficients (ascending powers) of `P(z) - lambda * Q(z)`, the
    /// degree-`d` polynomial whose roots are the preimages of `lambda`.
    ///
    /// `B = P/Q` in expanded form: `P(z) = sum (-1)^k sigma_k z^(d-k)` and
    /// `Q(z) = sum (-1)^k conj(sigma_k) z^k`.
    pub fn boundary_polynomial(&self, lambda: Complex64) -> Vec<Complex64> {
        let d = self.degree();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        for k in 0..d {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[d - k] += sign * self.sigma[k];
            coeffs[k] -= lambda * sign * self.sigma[k].conj();
        }
        coeffs
    }

    /// Solve `B(z) = lambda` on the unit circle.
    ///
    /// Returns the `d` preimages sorted by principal argument in
    /// `[0, 2*pi)`, together with the partial-fraction residues
    /// `m_j = lambda / (z_j B'(z_j))` and the angular derivatives
    /// `dz_j/dtheta = i lambda / B'(z_j)`.
    pub fn preimages(&self, lambda: Complex64) -> Result<PreimageFan> {
        let modulus = lambda.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnimodularLambda { modulus });
        }
        let coeffs = self.boundary_polynomial(lambda);
        let mut points = roots::roots_on_unit_circle(&coeffs, lambda.arg())?;
        for z in &points {
            let deviation = (z.norm() - 1.0).abs();
            if deviation > FAN_CIRCLE_TOL {
                return Err(Error::PreimageOffCircle { deviation });
            }
        }
        points.sort_by(|a, b| {
            principal_arg(*a)
                .partial_cmp(&principal_arg(*b))
                .expect("finite arguments")
        });
        for i in 0..points.len() {
            for j in 0..i {
                let distance = (points[i] - points[j]).norm();
                if distance < FAN_SEPARATION {
                    return Err(Error::PreimagesTooClose { distance });
                }
            }
        }
        let mut residues = Vec::with_capacity(points.len());
        let mut angular = Vec::with_capacity(points.len());
        for &z in &points {
            let residual = (self.evaluate(z)? - lambda).norm();
            if residual > FAN_RESIDUAL_TOL {
                return Err(Error::PreimageResidual { residual });
            }
            let deriv = self.derivative(z)?;
            residues.push(lambda / (z * deriv));
            angular.push(Complex64::new(0.0, 1.0) * lambda / deriv);
        }
        Ok(PreimageFan {
            lambda,
            points,
            residues,
            angular_derivatives: angular,
        })
    }
}

/// One boundary value with its full preimage fan.
///
/// Produced by [`BlaschkeProduct::preimages`] with points sorted by
/// principal argument; [`track_fans`] reorders copies so indices follow
/// branches continuously across a theta grid.
#[derive(Debug, Clone)]
pub struct PreimageFan {
    /// The boundary value `lambda = e^(i theta)`.
    pub lambda: Complex64,
    /// The `d` unit-circle solutions of `B(z) = lambda`.
    pub points: Vec<Complex64>,
    /// Partial-fraction residues `m_j` of `(B(z)/z) / (B(z) - lambda)`.
    pub residues: Vec<Complex64>,
    /// `dz_j/dtheta = i lambda / B'(z_j)`.
    pub angular_derivatives: Vec<Complex64>,
}

impl PreimageFan {
    /// Sum of the residues (analytically 1 for every degree).
    pub fn residue_sum(&self) -> Complex64 {
        self.residues.iter().sum()
    }
}

/// Principal argument mapped to `[0, 2*pi)`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Elementary symmetric polynomials `e_0..e_n` of the given values, plus a
/// trailing exact zero (the `sigma_d = 0` convention).
fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 2];
    e[0] = Complex64::new(1.0, 0.0);
    for (count, a) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            let prev = e[k - 1];
            e[k] += a * prev;
        }
    }
    e
}

/// Result of normalizing a general Blaschke product to canonical form.
#[derive(Debug, Clone)]
pub struct Canonicalized {
    /// The canonical product `f2 . B . f1`.
    pub product: BlaschkeProduct,
    /// Multiplier of the pre-rotation `f1(z) = rotation * z`.
    pub rotation: Complex64,
    /// The point `w` moved to 0 by `f2(z) = (z - w)/(1 - conj(w) z)`.
    pub moebius_param: Complex64,
}

/// Normalize the general product `e^(i theta) prod (z - a_k)/(1 - conj(a_k) z)`
/// (all `d` zeros listed, no implicit origin zero) to a canonical one.
///
/// The pre-rotation is `f1(z) = e^(-i theta / d) z`; the post-composition
/// `f2` is the disk automorphism moving `w = (-1)^d a_1..a_d e^(i theta)`
/// to 0. The returned zeros are the rotated preimages of `w`, minus the
/// origin.
pub fn canonicalize(zeros: &[Complex64], theta: f64) -> Result<Canonicalized> {
    if zeros.is_empty() {
        return Err(Error::DegreeTooLow);
    }
    for (index, a) in zeros.iter().enumerate() {
        if a.norm() >= 1.0 {
            return Err(Error::ZeroOutsideDisk {
                index,
                modulus: a.norm(),
            });
        }
    }
    let d = zeros.len();
    let phase = Complex64::from_polar(1.0, theta);
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    let product_of_zeros: Complex64 = zeros.iter().product();
    let moebius_param = sign * product_of_zeros * phase;
    let rotation = Complex64::from_polar(1.0, -theta / d as f64);

    // Zeros of f2 . B . f1 are e^(i theta / d) * B^{-1}(w): roots of
    // e^(i theta) P(z) - w Q(z) with P = prod (z - a_k), Q = prod (1 - conj(a_k) z).
    let e = elementary_symmetric(zeros);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
    for k in 0..=d {
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[d - k] += phase * sign_k * e[k];
        coeffs[k] -= moebius_param * sign_k * e[k].conj();
    }
    let roots = roots::roots_general(&coeffs)?;
    if roots.len() != d {
        return Err(Error::Invalid(format!(
            "expected {d} preimages while canonicalizing, found {}",
            roots.len()
        )));
    }

    // Exactly one root is the origin (B(f1(0)) = w); drop the closest.
    let mut mapped: Vec<Complex64> = roots.iter().map(|r| r / rotation).collect();
    let origin = mapped
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).expect("finite"))
        .map(|(i, _)| i)
        .expect("nonempty root list");
    if mapped[origin].norm() > 1e-8 {
        return Err(Error::Invalid(format!(
            "no origin zero found while canonicalizing (closest modulus {:.3e})",
            mapped[origin].norm()
        )));
    }
    mapped.swap_remove(origin);
    let product = BlaschkeProduct::from_zeros_unchecked(mapped)?;
    Ok(Canonicalized {
        product,
        rotation,
        moebius_param,
    })
}

/// Evaluate the general (not necessarily canonical) product of Eq.-(1) form.
pub fn evaluate_general(zeros: &[Complex64], theta: f64, z: Complex64) -> Complex64 {
    let mut value = Complex64::from_polar(1.0, theta);
    for a in zeros {
        value *= (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z);
    }
    value
}

/// Disk automorphism `(z - w)/(1 - conj(w) z)`.
pub fn moebius(w: Complex64, z: Complex64) -> Complex64 {
    (z - w) / (Complex64::new(1.0, 0.0) - w.conj() * z)
}

/// Solve a fan per theta and keep branch indices continuous.
///
/// The first fan is argument-sorted; each later fan is permuted so entry
/// `b` is the point nearest the previous entry `b`. Two points claiming
/// the same predecessor signal a too-coarse grid.
pub fn track_fans(product: &BlaschkeProduct, thetas: &[f64]) -> Result<Vec<PreimageFan>> {
    let mut fans: Vec<PreimageFan> = Vec::with_capacity(thetas.len());
    for (index, &theta) in thetas.iter().enumerate() {
        let lambda = Complex64::from_polar(1.0, theta);
        let fan = product.preimages(lambda)?;
        if let Some(prev) = fans.last() {
            fans.push(align_to(prev, fan, index)?);
        } else {
            fans.push(fan);
        }
    }
    Ok(fans)
}

fn align_to(prev: &PreimageFan, fan: PreimageFan, index: usize) -> Result<PreimageFan> {
    let d = fan.points.len();
    let mut slot = vec![usize::MAX; d];
    for (i, &z) in fan.points.iter().enumerate() {
        let nearest = prev
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (z - a.1).norm().partial_cmp(&(z - b.1).norm()).expect("finite")
            })
            .map(|(b, _)| b)
            .expect("nonempty fan");
        if slot[nearest] != usize::MAX {
            return Err(Error::AmbiguousTracking { index });
        }
        slot[nearest] = i;
    }
    Ok(PreimageFan {
        lambda: fan.lambda,
        points: slot.iter().map(|&i| fan.points[i]).collect(),
        residues: slot.iter().map(|&i| fan.residues[i]).collect(),
        angular_derivatives: slot.iter().map(|&i| fan.angular_derivatives[i]).collect(),
    })
}

/// Branch permutation after a full loop `theta: 0 -> 2*pi` on an `n`-step
/// grid: entry `b` holds the index (in the starting fan) that branch `b`
/// lands on.
pub fn monodromy_permutation(product: &BlaschkeProduct, n: usize) -> Result<Vec<usize>> {
    let mut thetas = crate::uniform_thetas(n);
    thetas.push(2.0 * std::f64::consts::PI);
    let fans = track_fans(product, &thetas)?;
    let first = &fans[0];
    let last = fans.last().expect("nonempty grid");
    let mut perm = Vec::with_capacity(first.points.len());
    for &z in &last.points {
        let nearest = first
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| (z - a.1).norm().partial_cmp(&(z - b.1).norm()).expect("finite"))
            .map(|(i, _)| i)
            .expect("nonempty fan");
        perm.push(nearest);
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_disk_point(rng: &mut StdRng, max_radius: f64) -> Complex64 {
        let r = max_radius * rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU)
    }

    fn random_product(rng: &mut StdRng, degree: usize) -> BlaschkeProduct {
        let zeros = (0..degree - 1).map(|_| random_disk_point(rng, 0.9)).collect();
        BlaschkeProduct::new(zeros).unwrap()
    }

    #[test]
    fn rejects_degree_one_and_boundary_zeros() {
        assert!(matches!(
            BlaschkeProduct::new(vec![]),
            Err(Error::DegreeTooLow)
        ));
        let err = BlaschkeProduct::new(vec![c(0.0, 0.0), c(1.5, 0.0)]).unwrap_err();
        match err {
            Error::ZeroOutsideDisk { index, modulus } => {
                assert_eq!(index, 1);
                assert!((modulus - 1.5).abs() < 1e-15);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn cube_sigma_and_figure_zeros() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(b.degree(), 3);
        assert_eq!(b.sigma().len(), 4);
        assert_eq!(b.sigma()[0], c(1.0, 0.0));
        for k in 1..=3 {
            assert_eq!(b.sigma()[k], c(0.0, 0.0));
        }

        let fig = BlaschkeProduct::new(vec![c(0.4, 0.7), c(0.0, 0.9), c(0.6, 0.0), c(0.0, -0.9)])
            .unwrap();
        assert_eq!(fig.degree(), 5);
        // sigma recomputed by brute force matches the cache
        let zeros = fig.zeros();
        let mut sigma2 = c(0.0, 0.0);
        for i in 0..4 {
            for j in 0..i {
                sigma2 += zeros[i] * zeros[j];
            }
        }
        assert!((fig.sigma()[2] - sigma2).norm() < 1e-12 * sigma2.norm().max(1.0));
        assert_eq!(fig.sigma()[5], c(0.0, 0.0));
    }

    #[test]
    fn evaluate_matches_hand_values() {
        let cube = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((cube.evaluate(c(0.0, 1.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);

        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)]).unwrap();
        assert!((b.evaluate(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_modulus_is_one() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let b = random_product(&mut rng, 2 + rng.gen_range(0..5));
            for _ in 0..10 {
                let z = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
                let v = b.evaluate(z).unwrap();
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pole_proximity_reported() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)]).unwrap();
        assert!(matches!(
            b.evaluate(c(2.0, 0.0) + c(1e-13, 0.0)),
            Err(Error::NearPole { .. })
        ));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let b = random_product(&mut rng, 2 + rng.gen_range(0..4));
            let z = random_disk_point(&mut rng, 0.95);
            let h = 1e-6;
            let fd = (b.evaluate(z + c(h, 0.0)).unwrap() - b.evaluate(z - c(h, 0.0)).unwrap())
                / c(2.0 * h, 0.0);
            let exact = b.derivative(z).unwrap();
            assert!(
                (fd - exact).norm() <= 1e-5 * exact.norm().max(1.0),
                "fd {fd} vs exact {exact}"
            );
        }
    }

    #[test]
    fn derivative_at_zeros_uses_product_rule() {
        let cube = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((cube.derivative(c(1.0, 0.0)).unwrap() - c(3.0, 0.0)).norm() < 1e-14);
        let b = BlaschkeProduct::new(vec![c(0.3, 0.2)]).unwrap();
        // finite value at the zero itself
        let at_zero = b.derivative(c(0.3, 0.2)).unwrap();
        assert!(at_zero.norm() > 0.0 && at_zero.is_finite());
    }

    #[test]
    fn derivative_nonzero_on_circle() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let b = random_product(&mut rng, 2 + rng.gen_range(0..5));
            let z = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
            assert!(b.derivative(z).unwrap().norm() > 1e-6);
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let b = random_product(&mut rng, 2 + rng.gen_range(0..4));
            let z = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
            let h = 1e-5;
            let fd = (b.derivative(z + c(h, 0.0)).unwrap()
                - b.derivative(z - c(h, 0.0)).unwrap())
                / c(2.0 * h, 0.0);
            let exact = b.second_derivative(z).unwrap();
            assert!((fd - exact).norm() <= 1e-4 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn square_and_cube_preimages() {
        let square = BlaschkeProduct::new(vec![c(0.0, 0.0)]).unwrap();
        let fan = square.preimages(c(1.0, 0.0)).unwrap();
        assert!((fan.points[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((fan.points[1] - c(-1.0, 0.0)).norm() < 1e-12);

        let cube = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let fan = cube.preimages(c(1.0, 0.0)).unwrap();
        for (k, z) in fan.points.iter().enumerate() {
            let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            assert!((z - want).norm() < 1e-12);
        }
        for m in &fan.residues {
            assert!((m - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
        }
        assert!((fan.residue_sum() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn random_preimages_evaluate_back() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let b = random_product(&mut rng, 5);
            let lambda = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
            let fan = b.preimages(lambda).unwrap();
            assert_eq!(fan.points.len(), 5);
            for &z in &fan.points {
                assert!((b.evaluate(z).unwrap() - lambda).norm() < 1e-9);
            }
            // sorted by principal argument
            for w in fan.points.windows(2) {
                assert!(principal_arg(w[0]) < principal_arg(w[1]));
            }
        }
    }

    #[test]
    fn rejects_interior_lambda() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)]).unwrap();
        assert!(matches!(
            b.preimages(c(0.5, 0.0)),
            Err(Error::NonUnimodularLambda { .. })
        ));
    }

    #[test]
    fn residues_real_and_in_unit_interval_for_degree_3() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..10 {
            let b = random_product(&mut rng, 3);
            let lambda = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
            let fan = b.preimages(lambda).unwrap();
            assert!((fan.residue_sum() - c(1.0, 0.0)).norm() < 1e-10);
            for m in &fan.residues {
                assert!(m.im.abs() < 1e-10);
                assert!(m.re > 0.0 && m.re < 1.0);
            }
        }
    }

    #[test]
    fn angular_derivative_second_order() {
        let mut rng = StdRng::seed_from_u64(41);
        let b = random_product(&mut rng, 4);
        let theta0 = 0.8;
        let fan0 = b
            .preimages(Complex64::from_polar(1.0, theta0))
            .unwrap();
        let mut errs = Vec::new();
        let mut hs = Vec::new();
        let mut h = 1e-3;
        while h >= 1e-5 {
            let fan1 = align_to(
                &fan0,
                b.preimages(Complex64::from_polar(1.0, theta0 + h)).unwrap(),
                0,
            )
            .unwrap();
            let err = fan0
                .points
                .iter()
                .zip(&fan1.points)
                .zip(&fan0.angular_derivatives)
                .map(|((z0, z1), dz)| (z1 - z0 - h * dz).norm())
                .fold(0.0, f64::max);
            errs.push(err.ln());
            hs.push(h.ln());
            h /= 2.0;
        }
        // regression slope of log err vs log h
        let n = hs.len() as f64;
        let mx = hs.iter().sum::<f64>() / n;
        let my = errs.iter().sum::<f64>() / n;
        let slope: f64 = hs
            .iter()
            .zip(&errs)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / hs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        assert!(slope >= 1.9, "observed order {slope}");
    }

    #[test]
    fn canonicalize_identity_when_already_canonical() {
        let a = c(0.3, 0.1);
        let result = canonicalize(&[c(0.0, 0.0), a], 0.0).unwrap();
        assert_eq!(result.product.degree(), 2);
        assert!((result.moebius_param).norm() < 1e-15);
        assert!((result.rotation - c(1.0, 0.0)).norm() < 1e-15);
        assert!((result.product.zeros()[0] - a).norm() < 1e-10);
    }

    #[test]
    fn canonicalize_degree_one_gives_identity_map() {
        let result = canonicalize(&[c(0.4, -0.2)], 0.0).unwrap();
        assert_eq!(result.product.degree(), 1);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let z = random_disk_point(&mut rng, 0.9);
            assert!((result.product.evaluate(z).unwrap() - z).norm() < 1e-10);
        }
    }

    #[test]
    fn canonicalize_roundtrip() {
        let zeros = [c(0.5, 0.0), c(0.0, 0.3)];
        let theta = std::f64::consts::FRAC_PI_4;
        let result = canonicalize(&zeros, theta).unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let z = random_disk_point(&mut rng, 0.95);
            let via_composition =
                moebius(result.moebius_param, evaluate_general(&zeros, theta, result.rotation * z));
            let direct = result.product.evaluate(z).unwrap();
            assert!(
                (via_composition - direct).norm() < 1e-10,
                "composition {via_composition} vs canonical {direct}"
            );
        }
    }

    #[test]
    fn tracking_keeps_branches_continuous() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)]).unwrap();
        let thetas = crate::uniform_thetas(96);
        let fans = track_fans(&b, &thetas).unwrap();
        for pair in fans.windows(2) {
            for (z0, z1) in pair[0].points.iter().zip(&pair[1].points) {
                assert!((z0 - z1).norm() < 0.2, "branch jumped: {z0} -> {z1}");
            }
        }
    }

    #[test]
    fn monodromy_is_a_cyclic_shift_for_pure_power() {
        let cube = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let perm = monodromy_permutation(&cube, 64).unwrap();
        // each branch advances to the next root counterclockwise
        assert_eq!(perm, vec![1, 2, 0]);
    }
}
