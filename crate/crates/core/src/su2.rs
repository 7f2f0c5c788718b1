//! Exact SU(2)/su(2) algebra.
//!
//! A group element is stored in angle-axis form,
//!
//! ```text
//!   U = exp(-i θ n·σ) = cos θ · σ0 - i sin θ · n·σ ,
//! ```
//!
//! with θ ∈ [0, π] and |n| = 1. The corresponding algebra element is
//! Ω = θ n·σ = A σ+ + A* σ- + C σz with complex A and real C, related by
//! θ = √(|A|² + C²) and n = (Re A, -Im A, C)/θ. Internally the quaternion
//! components (cos θ, sin θ · n) drive all compositions, which keeps the
//! group product and the principal logarithm well conditioned near the
//! identity and near the central element -σ0.

use num_complex::Complex64;
use thiserror::Error;

/// Unit-axis tolerance accepted by [`AngleAxis::new`].
pub const AXIS_UNIT_TOL: f64 = 1e-12;
/// Rotations with θ below this are treated as the identity.
pub const DEGENERATE_THETA: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum Su2Error {
    #[error("matrix is not special unitary: unitarity defect {unitarity:.3e}, det defect {det:.3e}")]
    NotSpecialUnitary { unitarity: f64, det: f64 },
}

/// Rotation angle plus unit axis, canonicalized to θ ∈ [0, π].
#[derive(Debug, Clone, Copy)]
pub struct AngleAxis {
    theta: f64,
    axis: [f64; 3],
    /// Axis is a placeholder (θ ≈ 0, or θ ≈ π where U ≈ -σ0).
    degenerate: bool,
    /// Input angle was folded back into [0, π].
    folded: bool,
}

impl AngleAxis {
    /// Placeholder axis used for degenerate rotations.
    pub const PLACEHOLDER_AXIS: [f64; 3] = [0.0, 0.0, 1.0];

    /// Canonicalizes (θ, n): θ is reduced mod 2π into [0, π], negating the
    /// axis when folding θ → 2π - θ. The axis must be unit length (within
    /// [`AXIS_UNIT_TOL`]) unless the rotation is degenerate.
    pub fn new(theta: f64, axis: [f64; 3]) -> Self {
        let mut t = theta.rem_euclid(2.0 * std::f64::consts::PI);
        let mut ax = axis;
        let mut folded = (t - theta).abs() > 1e-15 * (1.0 + theta.abs());
        if t > std::f64::consts::PI {
            t = 2.0 * std::f64::consts::PI - t;
            ax = [-ax[0], -ax[1], -ax[2]];
            folded = true;
        }
        if t < DEGENERATE_THETA {
            return Self {
                theta: 0.0,
                axis: Self::PLACEHOLDER_AXIS,
                degenerate: true,
                folded,
            };
        }
        let norm = (ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2]).sqrt();
        debug_assert!(
            (norm - 1.0).abs() < AXIS_UNIT_TOL,
            "axis must be unit length, |n| = {norm}"
        );
        let mut out = Self {
            theta: t,
            axis: [ax[0] / norm, ax[1] / norm, ax[2] / norm],
            degenerate: false,
            folded,
        };
        out.fix_antipode_sign();
        out
    }

    pub fn identity() -> Self {
        Self {
            theta: 0.0,
            axis: Self::PLACEHOLDER_AXIS,
            degenerate: true,
            folded: false,
        }
    }

    /// θ = √(|A|² + C²), n = (Re A, -Im A, C)/θ. A = C = 0 yields the
    /// degenerate identity; angles above π are folded (flag recorded).
    pub fn from_magnus_coeffs(a: Complex64, c: f64) -> Self {
        let theta = (a.norm_sqr() + c * c).sqrt();
        if theta < DEGENERATE_THETA {
            return Self::identity();
        }
        Self::new(theta, [a.re / theta, -a.im / theta, c / theta])
    }

    /// Inverse of [`Self::from_magnus_coeffs`]: (A, C) of Ω = θ n·σ.
    pub fn magnus_coeffs(&self) -> (Complex64, f64) {
        (
            Complex64::new(self.theta * self.axis[0], -self.theta * self.axis[1]),
            self.theta * self.axis[2],
        )
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn was_folded(&self) -> bool {
        self.folded
    }

    /// cos θ together with sin θ · n (the unit-quaternion components).
    pub fn quaternion(&self) -> (f64, [f64; 3]) {
        let s = self.theta.sin();
        (
            self.theta.cos(),
            [s * self.axis[0], s * self.axis[1], s * self.axis[2]],
        )
    }

    pub fn inverse(&self) -> Self {
        Self {
            theta: self.theta,
            axis: [-self.axis[0], -self.axis[1], -self.axis[2]],
            degenerate: self.degenerate,
            folded: self.folded,
        }
    }

    /// cos θ σ0 - i sin θ n·σ.
    pub fn to_matrix(&self) -> Su2Matrix {
        let (q0, qv) = self.quaternion();
        Su2Matrix::from_quaternion(q0, qv)
    }

    /// Group product with `self` as the left factor:
    /// exp(-i θ n·σ) = exp(-i θ_self n_self·σ) · exp(-i θ_rhs n_rhs·σ).
    ///
    /// cos θ and sin θ · n follow the closed composition rules
    ///
    /// ```text
    ///   cos θ   = cos θ0 cos θ1 - sin θ0 sin θ1 (n0·n1)
    ///   sin θ n = sin θ0 cos θ1 n0 + cos θ0 sin θ1 n1 + sin θ0 sin θ1 n0×n1
    /// ```
    pub fn compose(&self, rhs: &AngleAxis) -> Self {
        let (a0, av) = self.quaternion();
        let (b0, bv) = rhs.quaternion();
        let q0 = a0 * b0 - dot(av, bv);
        let cr = cross(av, bv);
        let qv = [
            a0 * bv[0] + b0 * av[0] + cr[0],
            a0 * bv[1] + b0 * av[1] + cr[1],
            a0 * bv[2] + b0 * av[2] + cr[2],
        ];
        Self::from_quaternion(q0, qv)
    }

    /// Rebuilds the canonical angle-axis form from quaternion components
    /// (not necessarily normalized).
    pub fn from_quaternion(q0: f64, qv: [f64; 3]) -> Self {
        let vn = (qv[0] * qv[0] + qv[1] * qv[1] + qv[2] * qv[2]).sqrt();
        let theta = vn.atan2(q0); // in [0, π] for vn >= 0
        if vn < DEGENERATE_THETA || theta < DEGENERATE_THETA {
            // Either the identity (q0 > 0) or -σ0 (q0 < 0): axis unresolvable.
            return Self {
                theta: if q0 < 0.0 { std::f64::consts::PI } else { 0.0 },
                axis: Self::PLACEHOLDER_AXIS,
                degenerate: true,
                folded: false,
            };
        }
        let mut out = Self {
            theta,
            axis: [qv[0] / vn, qv[1] / vn, qv[2] / vn],
            degenerate: false,
            folded: false,
        };
        out.fix_antipode_sign();
        out
    }

    /// At θ = π both (π, n) and (π, -n) label the same group element -σ0;
    /// pick the representative with n_x ≥ 0, ties broken by n_y, then n_z.
    fn fix_antipode_sign(&mut self) {
        if (self.theta - std::f64::consts::PI).abs() > 1e-9 {
            return;
        }
        let n = self.axis;
        let flip = if n[0].abs() > 1e-12 {
            n[0] < 0.0
        } else if n[1].abs() > 1e-12 {
            n[1] < 0.0
        } else {
            n[2] < 0.0
        };
        if flip {
            self.axis = [-n[0], -n[1], -n[2]];
        }
    }

    /// Max of angle difference and axis difference against `other`,
    /// treating degenerate rotations as equal regardless of axis.
    pub fn distance(&self, other: &AngleAxis) -> f64 {
        let dt = (self.theta - other.theta).abs();
        if self.degenerate || other.degenerate {
            return if self.degenerate == other.degenerate {
                dt
            } else {
                dt.max(1.0)
            };
        }
        let da = (0..3)
            .map(|i| (self.axis[i] - other.axis[i]).abs())
            .fold(0.0, f64::max);
        dt.max(da * self.theta.sin().abs().max(1e-3))
    }
}

/// Dense 2×2 complex matrix. Entries are tracked exactly; use
/// [`Su2Matrix::special_unitary_defect`] to check group membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix {
    pub e: [[Complex64; 2]; 2],
}

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Su2Matrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn sigma_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn sigma_y() -> Self {
        Self::new(ZERO, -I, I, ZERO)
    }

    pub fn sigma_z() -> Self {
        Self::new(ONE, ZERO, ZERO, -ONE)
    }

    /// 2×2 Hadamard matrix (σx + σz)/√2; conjugation by it swaps σx and σz.
    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        )
    }

    /// q0 σ0 - i (q1 σx + q2 σy + q3 σz).
    pub fn from_quaternion(q0: f64, qv: [f64; 3]) -> Self {
        Self::new(
            Complex64::new(q0, -qv[2]),
            Complex64::new(-qv[1], -qv[0]),
            Complex64::new(qv[1], -qv[0]),
            Complex64::new(q0, qv[2]),
        )
    }

    /// Quaternion components of the nearest SU(2) element (in Frobenius
    /// norm). Exact when the matrix is already special unitary.
    pub fn quaternion_components(&self) -> (f64, [f64; 3]) {
        let q0 = 0.5 * (self.e[0][0].re + self.e[1][1].re);
        let q3 = 0.5 * (self.e[1][1].im - self.e[0][0].im);
        let q1 = -0.5 * (self.e[0][1].im + self.e[1][0].im);
        let q2 = 0.5 * (self.e[1][0].re - self.e[0][1].re);
        (q0, [q1, q2, q3])
    }

    pub fn mul(&self, rhs: &Su2Matrix) -> Su2Matrix {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        Su2Matrix { e: out }
    }

    pub fn dagger(&self) -> Su2Matrix {
        Su2Matrix::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    /// Elementwise complex conjugate (no transpose).
    pub fn conj_elementwise(&self) -> Su2Matrix {
        Su2Matrix::new(
            self.e[0][0].conj(),
            self.e[0][1].conj(),
            self.e[1][0].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn scale(&self, s: Complex64) -> Su2Matrix {
        Su2Matrix::new(
            self.e[0][0] * s,
            self.e[0][1] * s,
            self.e[1][0] * s,
            self.e[1][1] * s,
        )
    }

    pub fn add(&self, rhs: &Su2Matrix) -> Su2Matrix {
        Su2Matrix::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }

    pub fn sub(&self, rhs: &Su2Matrix) -> Su2Matrix {
        Su2Matrix::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn distance(&self, rhs: &Su2Matrix) -> f64 {
        self.sub(rhs).frobenius_norm()
    }

    /// max(‖U†U - σ0‖, |det U - 1|).
    pub fn special_unitary_defect(&self) -> f64 {
        let u = self.dagger().mul(self).distance(&Su2Matrix::identity());
        let d = (self.det() - ONE).norm();
        u.max(d)
    }

    /// Nearest SU(2) element: quaternion extraction plus renormalization.
    pub fn project_su2(&self) -> Su2Matrix {
        let (q0, qv) = self.quaternion_components();
        let n = (q0 * q0 + qv[0] * qv[0] + qv[1] * qv[1] + qv[2] * qv[2]).sqrt();
        Su2Matrix::from_quaternion(q0 / n, [qv[0] / n, qv[1] / n, qv[2] / n])
    }

    /// Principal logarithm as canonical angle-axis form.
    ///
    /// θ = atan2(|q_vec|, q0) ∈ [0, π]; near θ = 0 and θ = π the axis is
    /// unresolvable from the matrix and the degenerate flag is set.
    pub fn principal_log(&self, tol: f64) -> Result<AngleAxis, Su2Error> {
        let defect = self.special_unitary_defect();
        if defect > tol {
            return Err(Su2Error::NotSpecialUnitary {
                unitarity: self.dagger().mul(self).distance(&Su2Matrix::identity()),
                det: (self.det() - ONE).norm(),
            });
        }
        let (q0, qv) = self.quaternion_components();
        Ok(AngleAxis::from_quaternion(q0, qv))
    }
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;

    const PI: f64 = std::f64::consts::PI;

    /// Test-only matrix exponential of -i(A σ+ + A* σ- + C σz) by
    /// scaling-and-squaring on the Taylor series. Independent of the
    /// angle-axis closed form it is used to check.
    fn expm_su2(a: Complex64, c: f64) -> Su2Matrix {
        let h = Su2Matrix::new(Complex64::new(c, 0.0), a, a.conj(), Complex64::new(-c, 0.0));
        let norm = h.frobenius_norm();
        let k = (norm.log2().ceil().max(0.0) as u32) + 4;
        let m = h.scale(Complex64::new(0.0, -1.0 / f64::powi(2.0, k as i32)));
        // Taylor to machine precision on the scaled generator
        let mut term = Su2Matrix::identity();
        let mut sum = Su2Matrix::identity();
        for n in 1..30 {
            term = term.mul(&m).scale(Complex64::new(1.0 / n as f64, 0.0));
            sum = sum.add(&term);
            if term.frobenius_norm() < 1e-18 {
                break;
            }
        }
        for _ in 0..k {
            sum = sum.mul(&sum);
        }
        sum
    }

    fn random_angle_axis(rng: &mut impl Rng) -> AngleAxis {
        let theta = rng.gen_range(0.0..PI);
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let r = (1.0 - z * z).sqrt();
        AngleAxis::new(theta, [r * phi.cos(), r * phi.sin(), z])
    }

    #[test]
    fn from_magnus_pure_sigma_z() {
        let r = AngleAxis::from_magnus_coeffs(ZERO, 0.7);
        assert!((r.theta() - 0.7).abs() < 1e-15);
        assert_eq!(r.axis(), [0.0, 0.0, 1.0]);
        assert!(!r.is_degenerate());
    }

    #[test]
    fn from_magnus_folds_large_angles() {
        // direct formula gives θ = 5, axis (0.6, -0.8, 0); canonical form
        // folds to (2π - 5) with the axis negated, flag recorded
        let r = AngleAxis::from_magnus_coeffs(Complex64::new(3.0, 4.0), 0.0);
        assert!(r.was_folded());
        assert!((r.theta() - (2.0 * PI - 5.0)).abs() < 1e-12);
        assert!((r.axis()[0] + 0.6).abs() < 1e-12);
        assert!((r.axis()[1] - 0.8).abs() < 1e-12);
        // same group element as the unfolded parameters
        let direct = expm_su2(Complex64::new(3.0, 4.0), 0.0);
        assert!(r.to_matrix().distance(&direct) < 1e-12);
    }

    #[test]
    fn from_magnus_degenerate() {
        let r = AngleAxis::from_magnus_coeffs(ZERO, 0.0);
        assert!(r.is_degenerate());
        assert_eq!(r.theta(), 0.0);
        assert_eq!(r.axis(), AngleAxis::PLACEHOLDER_AXIS);
    }

    #[test]
    fn to_matrix_examples() {
        assert!(AngleAxis::identity()
            .to_matrix()
            .distance(&Su2Matrix::identity())
            < 1e-15);
        // θ = π about any axis is the central element -σ0
        let m = AngleAxis::new(PI, [0.0, 0.0, 1.0]).to_matrix();
        assert!(m.distance(&Su2Matrix::identity().scale(-ONE)) < 1e-12);
        // θ = π/4 about x: (σ0 - i σx)/√2; θ = π/2 gives -i σx
        let m = AngleAxis::new(PI / 4.0, [1.0, 0.0, 0.0]).to_matrix();
        let want = Su2Matrix::identity()
            .add(&Su2Matrix::sigma_x().scale(-I))
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert!(m.distance(&want) < 1e-12);
        let m = AngleAxis::new(PI / 2.0, [1.0, 0.0, 0.0]).to_matrix();
        assert!(m.distance(&Su2Matrix::sigma_x().scale(-I)) < 1e-12);
    }

    #[test]
    fn principal_log_examples() {
        let id = Su2Matrix::identity().principal_log(1e-10).unwrap();
        assert!(id.is_degenerate());
        assert_eq!(id.theta(), 0.0);

        // diag(-i, i) = exp(-i π/2 σz)
        let m = Su2Matrix::new(-I, ZERO, ZERO, I);
        let r = m.principal_log(1e-10).unwrap();
        assert!((r.theta() - PI / 2.0).abs() < 1e-12);
        assert!((r.axis()[2] - 1.0).abs() < 1e-12);

        let minus_id = Su2Matrix::identity().scale(-ONE);
        let r = minus_id.principal_log(1e-10).unwrap();
        assert!((r.theta() - PI).abs() < 1e-12);
        assert!(r.is_degenerate());
    }

    #[test]
    fn principal_log_rejects_non_unitary() {
        let m = Su2Matrix::new(ONE, ONE, ZERO, ONE);
        assert!(m.principal_log(1e-10).is_err());
    }

    #[test]
    fn compose_identity_and_same_axis() {
        let a = AngleAxis::new(0.9, [0.0, 0.0, 1.0]);
        let r = a.compose(&AngleAxis::identity());
        assert!(r.distance(&a) < 1e-14);
        // same axis adds angles
        let b = AngleAxis::new(0.4, [0.0, 0.0, 1.0]);
        let r = a.compose(&b);
        assert!((r.theta() - 1.3).abs() < 1e-14);
        assert!((r.axis()[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn compose_quarter_turns() {
        // (π/2, z) ∘ (π/2, x) = (π/2, y): oracle is the matrix product
        let a = AngleAxis::new(PI / 2.0, [0.0, 0.0, 1.0]);
        let b = AngleAxis::new(PI / 2.0, [1.0, 0.0, 0.0]);
        let r = a.compose(&b);
        let oracle = a.to_matrix().mul(&b.to_matrix()).principal_log(1e-10).unwrap();
        assert!(r.distance(&oracle) < 1e-12);
        assert!((r.theta() - PI / 2.0).abs() < 1e-12);
        assert!((r.axis()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bch_matches_matrix_product_on_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = random_angle_axis(&mut rng);
            let b = random_angle_axis(&mut rng);
            let composed = a.compose(&b);
            let oracle = a
                .to_matrix()
                .mul(&b.to_matrix())
                .principal_log(1e-10)
                .unwrap();
            assert!(
                composed.distance(&oracle) < 1e-10,
                "bch mismatch: {composed:?} vs {oracle:?}"
            );
        }
    }

    #[test]
    fn round_trip_log_exp_on_random_rotations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let r = random_angle_axis(&mut rng);
            let back = r.to_matrix().principal_log(1e-10).unwrap();
            assert!(r.distance(&back) < 1e-10, "{r:?} vs {back:?}");
        }
    }

    #[test]
    fn from_magnus_matches_series_exponential() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let a = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let c = rng.gen_range(-2.0..2.0);
            let m = AngleAxis::from_magnus_coeffs(a, c).to_matrix();
            let series = expm_su2(a, c);
            assert!(m.distance(&series) < 1e-10);
        }
    }

    #[test]
    fn hadamard_swaps_x_and_z() {
        let h = Su2Matrix::hadamard();
        assert!(h.mul(&Su2Matrix::sigma_x()).mul(&h).distance(&Su2Matrix::sigma_z()) < 1e-15);
        assert!(h.mul(&Su2Matrix::sigma_z()).mul(&h).distance(&Su2Matrix::sigma_x()) < 1e-15);
    }

    #[test]
    fn antipode_axis_sign_convention() {
        let r = AngleAxis::new(PI, [-1.0, 0.0, 0.0]);
        assert!(r.axis()[0] >= 0.0);
        let r = AngleAxis::new(PI, [0.0, -1.0, 0.0]);
        assert!(r.axis()[1] >= 0.0);
    }

    proptest! {
        #[test]
        fn unitarity_of_to_matrix(theta in 0.0..PI, z in -1.0f64..1.0, phi in 0.0..(2.0*PI)) {
            let r = (1.0 - z*z).sqrt();
            let m = AngleAxis::new(theta, [r*phi.cos(), r*phi.sin(), z]).to_matrix();
            prop_assert!(m.special_unitary_defect() < 1e-12);
        }

        #[test]
        fn compose_associativity(s1 in 0.1..3.0f64, s2 in 0.1..3.0f64, s3 in 0.1..3.0f64) {
            let a = AngleAxis::new(s1, [1.0, 0.0, 0.0]);
            let b = AngleAxis::new(s2, [0.0, 1.0, 0.0]);
            let c = AngleAxis::new(s3, [0.0, 0.0, 1.0]);
            let lhs = a.compose(&b).compose(&c);
            let rhs = a.compose(&b.compose(&c));
            prop_assert!(lhs.distance(&rhs) < 1e-11);
        }
    }
}
