//! Semiclassical Rabi model: H = (Δ/2)σz + (g cos t/2)σx (ω = 1).
//!
//! Quasienergies come from three sources:
//!  * the exact confluent-Heun formula (`rabi_exact_heun`),
//!  * the ODE oracle (`oracle::quasienergy_numeric`),
//!  * Magnus pipelines per picture/order, over the full period or the
//!    generalized-parity-preserving half period.
//!
//! Out-of-region use of a picture is allowed on purpose: divergence of the
//! expansion outside its region is part of the physics being reproduced,
//! and the attached convergence certificate flags it.

use crate::floquet::{
    self, bz_fold, eps_adiabatic, eps_full_region1, eps_half_region1, eps_half_region2,
    FloquetError, Method, PictureTag, QuasienergyResult, Span,
};
use crate::magnus::{convergence_margin, recursive_magnus, MagnusError};
use crate::oracle;
use crate::pictures::{build_adiabatic, build_region1, build_region2, DriveSpec, Shape};
use crate::specfun::{heun_c, HeunParams, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RabiError {
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Picture(#[from] crate::pictures::PictureError),
    #[error(transparent)]
    Su2(#[from] crate::su2::Su2Error),
    #[error("method not applicable: {0}")]
    InvalidMethod(String),
}

/// Point in the (Δ, g) plane; signs are handled by the symmetry
/// ε(Δ, g) = ε(Δ, -g) = -ε(-Δ, g), so both parameters are non-negative.
#[derive(Debug, Clone)]
pub struct RabiPoint {
    pub delta: f64,
    pub g: f64,
    pub shape: Shape,
}

impl RabiPoint {
    pub fn new(delta: f64, g: f64) -> Self {
        assert!(delta >= 0.0 && g >= 0.0);
        Self {
            delta,
            g,
            shape: Shape::Cos,
        }
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        assert!(shape.is_periodic());
        self.shape = shape;
        self
    }

    pub fn drive_spec(&self) -> DriveSpec {
        DriveSpec::new(self.delta, self.g, self.shape.clone())
    }
}

/// Magnus quasienergy method descriptor. Order 0 in the adiabatic picture
/// is the plain adiabatic approximation (dynamical phase only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagnusMethod {
    pub picture: PictureTag,
    pub order: usize,
    pub span: Span,
}

impl MagnusMethod {
    pub fn new(picture: PictureTag, order: usize, span: Span) -> Self {
        Self {
            picture,
            order,
            span,
        }
    }
}

const REC_TOL: f64 = 1e-9;

/// Magnus quasienergy of a Rabi point. Never rejects out-of-region
/// parameters; the result carries the convergence certificate instead.
pub fn rabi_quasienergy(pt: &RabiPoint, method: MagnusMethod) -> Result<QuasienergyResult, RabiError> {
    let spec = pt.drive_spec();
    let span_t = match method.span {
        Span::HalfPeriod => PI,
        Span::FullPeriod => 2.0 * PI,
    };
    let order = method.order;
    let mut result = match (method.picture, method.span) {
        (PictureTag::RegionI, Span::FullPeriod) => {
            let ctx = build_region1(&spec, span_t);
            let mc = recursive_magnus(&ctx.drive, order.max(1), ctx.drive.suggested_intervals, REC_TOL)?;
            let (a, c) = mc.truncated(order);
            let theta = (a.norm_sqr() + c * c).sqrt();
            let mut r = eps_full_region1(theta, c, pt.delta)?;
            attach_certificate(&mut r, &ctx.drive)?;
            r
        }
        (PictureTag::RegionI, Span::HalfPeriod) => {
            let ctx = build_region1(&spec, span_t);
            let mc = recursive_magnus(&ctx.drive, order.max(1), ctx.drive.suggested_intervals, REC_TOL)?;
            let (a, c) = mc.truncated(order);
            let theta = (a.norm_sqr() + c * c).sqrt();
            let mut r = eps_half_region1(theta, c, pt.delta)?;
            attach_certificate(&mut r, &ctx.drive)?;
            r
        }
        (PictureTag::RegionII, Span::FullPeriod) => {
            // θ0(2π) = 0, so ε = θ_I(2π)/2π directly
            let ctx = build_region2(&spec, span_t);
            let mc = recursive_magnus(&ctx.drive, order.max(1), ctx.drive.suggested_intervals, REC_TOL)?;
            let (a, c) = mc.truncated(order);
            let theta = (a.norm_sqr() + c * c).sqrt();
            let (eps, folds) = bz_fold(theta / (2.0 * PI));
            let mut r = QuasienergyResult::new(eps, Method::OracleOde, folds);
            attach_certificate(&mut r, &ctx.drive)?;
            r
        }
        (PictureTag::RegionII, Span::HalfPeriod) => {
            if !matches!(pt.shape, Shape::Cos) {
                return Err(RabiError::InvalidMethod(
                    "half-period region-II extraction requires θ0(π) = 0, which holds for the cosine shape only".into(),
                ));
            }
            let ctx = build_region2(&spec, span_t);
            let mc = recursive_magnus(&ctx.drive, order.max(1), ctx.drive.suggested_intervals, REC_TOL)?;
            let (a, c) = mc.truncated(order);
            let theta = (a.norm_sqr() + c * c).sqrt();
            let mut r = eps_half_region2(a, theta)?;
            attach_certificate(&mut r, &ctx.drive)?;
            r
        }
        (PictureTag::Adiabatic, span) => {
            let (ctx, frame) = build_adiabatic(&spec, 0.0, (0.0, span_t))?;
            let phi_end = (frame.phi)(span_t);
            let (a, c) = if order == 0 {
                (Complex64::new(0.0, 0.0), 0.0)
            } else {
                let mc = recursive_magnus(&ctx.drive, order, ctx.drive.suggested_intervals, REC_TOL)?;
                mc.truncated(order)
            };
            let theta = (a.norm_sqr() + c * c).sqrt();
            let mut r = match span {
                Span::HalfPeriod => eps_adiabatic(phi_end, theta, c)?,
                Span::FullPeriod => {
                    // U(2π) = Ψ(0) [Φ(2π) U_a(2π)] Ψ†(0): eigenphase of the
                    // bracket via the group composition
                    let phase = crate::su2::AngleAxis::new(phi_end, [0.0, 0.0, 1.0]);
                    let ua = crate::su2::AngleAxis::from_magnus_coeffs(a, c);
                    let theta_tot = phase.compose(&ua).theta();
                    let (eps, folds) = bz_fold(theta_tot / (2.0 * PI));
                    QuasienergyResult::new(eps, Method::OracleOde, folds)
                }
            };
            attach_certificate(&mut r, &ctx.drive)?;
            r
        }
    };
    result.method = Method::Magnus {
        picture: method.picture,
        order,
        span: method.span,
    };
    Ok(result)
}

fn attach_certificate(r: &mut QuasienergyResult, drive: &crate::magnus::ScalarDrive) -> Result<(), RabiError> {
    let cert = convergence_margin(drive)?;
    r.certified = Some(cert.certified);
    Ok(())
}

/// Exact quasienergy from the confluent Heun series:
/// ε = (1/π) arcsin[ √2 Δ Re(e^{ig} η+ η-) ] with
/// η± = HeunC(±1/2, 1/2, -(4ig + 2Δ² + 1)/8, ig, 2ig; z = 1/2).
pub fn rabi_exact_heun(pt: &RabiPoint) -> Result<QuasienergyResult, RabiError> {
    let arg = rabi_heun_sin_eps_pi(pt.delta, pt.g)?;
    if arg.abs() > 1.0 + floquet::CLAMP_TOL {
        return Err(RabiError::Floquet(FloquetError::DomainError { arg }));
    }
    let (eps, folds) = bz_fold(arg.clamp(-1.0, 1.0).asin() / PI);
    Ok(QuasienergyResult::new(eps, Method::Exact, folds))
}

/// sin(επ) of the exact formula without the arcsin (signed, unfolded);
/// its zero crossings are the exact center crossings. Negative arguments
/// are mapped in by the symmetry ε(Δ, g) = ε(Δ, -g) = -ε(-Δ, g).
pub fn rabi_heun_sin_eps_pi(delta: f64, g: f64) -> Result<f64, RabiError> {
    let (d_abs, g_abs) = (delta.abs(), g.abs());
    let ig = Complex64::new(0.0, g_abs);
    let base = HeunParams {
        mu0: Complex64::new(0.5, 0.0),
        mu1: Complex64::new(0.5, 0.0),
        b0: -(4.0 * ig + 2.0 * d_abs * d_abs + 1.0) / 8.0,
        b1: ig,
        a: 2.0 * ig,
        z: 0.5,
    };
    let eta_plus = heun_c(&base)?;
    let eta_minus = heun_c(&HeunParams {
        mu0: -base.mu0,
        ..base
    })?;
    let s = 2.0f64.sqrt() * d_abs * (Complex64::from_polar(1.0, g_abs) * eta_plus * eta_minus).re;
    Ok(if delta < 0.0 { -s } else { s })
}

/// Symmetry audit of a Rabi point.
#[derive(Debug, Clone)]
pub struct RabiSymmetryReport {
    /// quasienergy distance between ε(Δ, g) and ε(Δ, -g) (oracle).
    pub evenness_in_g: f64,
    /// quasienergy distance between ε(Δ, g) and -ε(-Δ, g) (oracle).
    pub oddness_in_delta: f64,
    /// |C2(π)| in the region-II picture (vanishes for the cosine shape).
    pub c2_half_period: f64,
    /// Whether the C-vanishing applies (cosine shape) or is informational.
    pub c_vanishing_expected: bool,
}

pub fn rabi_symmetry_check(pt: &RabiPoint) -> Result<RabiSymmetryReport, RabiError> {
    let tol = 1e-11;
    let eps = oracle::quasienergy_numeric(&pt.drive_spec(), tol)?.epsilon;

    // ε(Δ, -g): flip the drive sign in the Hamiltonian directly
    let shape = pt.shape.clone();
    let d = pt.delta;
    let g = pt.g;
    let ham_neg_g = std::sync::Arc::new(move |t: f64| {
        (Complex64::new(-0.5 * g * shape.value(t), 0.0), 0.5 * d)
    });
    let u = oracle::propagate(&oracle::PropagatorRequest::new(ham_neg_g, 0.0, 2.0 * PI, tol))?;
    let eps_neg_g = u.principal_log(1e-8)?.theta() / (2.0 * PI);

    // ε(-Δ, g)
    let shape = pt.shape.clone();
    let ham_neg_d = std::sync::Arc::new(move |t: f64| {
        (Complex64::new(0.5 * g * shape.value(t), 0.0), -0.5 * d)
    });
    let u = oracle::propagate(&oracle::PropagatorRequest::new(ham_neg_d, 0.0, 2.0 * PI, tol))?;
    let eps_neg_d = u.principal_log(1e-8)?.theta() / (2.0 * PI);

    let ctx = build_region2(&pt.drive_spec(), PI);
    let mc = recursive_magnus(&ctx.drive, 2, ctx.drive.suggested_intervals, REC_TOL)?;

    Ok(RabiSymmetryReport {
        evenness_in_g: floquet::quasienergy_distance(eps, bz_fold(eps_neg_g).0),
        oddness_in_delta: floquet::quasienergy_distance(eps, bz_fold(-eps_neg_d).0),
        c2_half_period: mc.c[1].abs(),
        c_vanishing_expected: matches!(pt.shape, Shape::Cos),
    })
}

/// Interaction-picture propagator of a picture context, computed by the
/// ODE oracle (exact, no Magnus truncation).
pub fn exact_picture_propagator(
    ctx: &crate::pictures::PictureContext,
    t: f64,
    tol: f64,
) -> Result<crate::su2::Su2Matrix, RabiError> {
    let v = ctx.drive.v.clone();
    Ok(oracle::propagate(&oracle::PropagatorRequest::new(
        std::sync::Arc::new(move |tt| (v(tt), 0.0)),
        ctx.drive.t0,
        t,
        tol,
    ))?)
}
