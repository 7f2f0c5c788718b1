//! Picture transformations for the physical Hamiltonian
//! H(t) = (Δ/2) σz + (g f̃(t)/2) σx, with ω = 1 baked in (all parameters
//! are the dimensionless ratios Δ/ω and g/ω, the period is 2π).
//!
//! Three frames bring H into the single-axis form v(t) σ+ + v*(t) σ-:
//!
//! | picture   | valid for | v(t)                    | frame U0(t)            |
//! |-----------|-----------|-------------------------|------------------------|
//! | region I  | g < 1     | (g/2) f̃(t) e^{iΔt}      | exp(-iΔt σz/2)         |
//! | region II | Δ < 1     | (Δ/2) e^{ig F̃(t)}       | exp(-ig F̃(t) σz/2), σx↔σz swapped |
//! | adiabatic | slow f    | i (χ̇/2) e^{2iφ(t)}      | Ψ(t) Φ(t)              |
//!
//! The region-I exponent sign e^{+iΔt} is the one consistent with
//! U0 = exp(-iΔt σz/2); the frame-consistency tests below pin it against
//! the ODE oracle.

use crate::magnus::{MagnusCoefficients, ScalarDrive};
use crate::quad;
use crate::su2::{AngleAxis, Su2Matrix};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PictureError {
    #[error("drive is not periodic; region classification requires a periodic shape")]
    NonPeriodicDrive,
    #[error(transparent)]
    Quadrature(#[from] quad::QuadError),
    #[error("sampled drive: {0}")]
    SampledParse(String),
}

/// Dimensionless shape function f̃(t).
#[derive(Debug, Clone)]
pub enum Shape {
    Cos,
    Sin,
    /// f̃(t) = sweep · t (unbounded, aperiodic).
    Linear { sweep: f64 },
    /// f̃(t) = sech t (bell-shaped, aperiodic).
    Sech,
    /// Piecewise-linear interpolation of a sampled time series.
    Sampled(SampledShape),
}

impl Shape {
    pub fn value(&self, t: f64) -> f64 {
        match self {
            Shape::Cos => t.cos(),
            Shape::Sin => t.sin(),
            Shape::Linear { sweep } => sweep * t,
            Shape::Sech => 1.0 / t.cosh(),
            Shape::Sampled(s) => s.value(t),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            Shape::Cos => -t.sin(),
            Shape::Sin => t.cos(),
            Shape::Linear { sweep } => *sweep,
            Shape::Sech => -t.tanh() / t.cosh(),
            Shape::Sampled(s) => s.derivative(t),
        }
    }

    /// F̃(t) = ∫_0^t f̃(s) ds.
    pub fn antiderivative(&self, t: f64) -> f64 {
        match self {
            Shape::Cos => t.sin(),
            Shape::Sin => 1.0 - t.cos(),
            Shape::Linear { sweep } => 0.5 * sweep * t * t,
            Shape::Sech => 2.0 * (t.exp().atan() - std::f64::consts::FRAC_PI_4),
            Shape::Sampled(s) => s.antiderivative(t),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Shape::Cos | Shape::Sin)
    }

    /// f̃(-t) = -f̃(t) (PT symmetry with P = σz).
    pub fn is_odd(&self) -> bool {
        matches!(self, Shape::Sin | Shape::Linear { .. })
    }

    /// f̃(t + π) = -f̃(t) (generalized parity).
    pub fn is_gp_antiperiodic(&self) -> bool {
        matches!(self, Shape::Cos | Shape::Sin)
    }
}

/// Sampled shape with linear interpolation between strictly increasing
/// time stamps.
#[derive(Debug, Clone)]
pub struct SampledShape {
    points: Arc<Vec<(f64, f64)>>,
    cumulative: Arc<Vec<f64>>,
}

impl SampledShape {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, PictureError> {
        if points.len() < 2 {
            return Err(PictureError::SampledParse(
                "need at least two samples".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(PictureError::SampledParse(format!(
                    "time stamps must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        // trapezoid antiderivative at the nodes
        let mut cum = vec![0.0];
        for w in points.windows(2) {
            let last = *cum.last().unwrap();
            cum.push(last + 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0));
        }
        Ok(Self {
            points: Arc::new(points),
            cumulative: Arc::new(cum),
        })
    }

    fn locate(&self, t: f64) -> usize {
        let pts = &self.points;
        match pts.binary_search_by(|p| p.0.total_cmp(&t)) {
            Ok(i) => i.min(pts.len() - 2),
            Err(0) => 0,
            Err(i) if i >= pts.len() => pts.len() - 2,
            Err(i) => i - 1,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let i = self.locate(t);
        let (t0, f0) = self.points[i];
        let (t1, f1) = self.points[i + 1];
        f0 + (f1 - f0) * ((t - t0) / (t1 - t0)).clamp(0.0, 1.0)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.locate(t);
        let (t0, f0) = self.points[i];
        let (t1, f1) = self.points[i + 1];
        (f1 - f0) / (t1 - t0)
    }

    pub fn antiderivative(&self, t: f64) -> f64 {
        let i = self.locate(t);
        let (t0, f0) = self.points[i];
        let dt = t - t0;
        self.cumulative[i] + f0 * dt + 0.5 * self.derivative(t) * dt * dt
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Parses plain two-column text (time, f̃); blank lines and `#` comments
/// are skipped.
pub fn parse_sampled(text: &str) -> Result<SampledShape, PictureError> {
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<f64, PictureError> {
            s.ok_or_else(|| {
                PictureError::SampledParse(format!("line {}: expected two columns", lineno + 1))
            })?
            .parse::<f64>()
            .map_err(|e| PictureError::SampledParse(format!("line {}: {e}", lineno + 1)))
        };
        let t = parse(cols.next())?;
        let f = parse(cols.next())?;
        pts.push((t, f));
    }
    SampledShape::new(pts)
}

/// Maximal index ranges `[start, end]` (inclusive) on which the sampled
/// values are monotone (non-decreasing or non-increasing).
pub fn monotone_segments(points: &[(f64, f64)]) -> Vec<(usize, usize)> {
    if points.len() < 2 {
        return vec![];
    }
    let mut segs = Vec::new();
    let mut start = 0usize;
    let mut dir = 0i8;
    for i in 1..points.len() {
        let d = (points[i].1 - points[i - 1].1).partial_cmp(&0.0).unwrap() as i8;
        if dir == 0 {
            dir = d;
        } else if d != 0 && d != dir {
            segs.push((start, i - 1));
            start = i - 1;
            dir = d;
        }
    }
    segs.push((start, points.len() - 1));
    segs
}

/// Physical drive parameters (ω = 1).
#[derive(Debug, Clone)]
pub struct DriveSpec {
    pub delta: f64,
    pub g: f64,
    pub shape: Shape,
}

impl DriveSpec {
    pub fn new(delta: f64, g: f64, shape: Shape) -> Self {
        assert!(delta >= 0.0, "negative splittings map to -ε(Δ, g); pass |Δ|");
        Self { delta, g, shape }
    }

    /// Samples an arbitrary f̃ onto a uniform grid (testing helper).
    pub fn sampled_from_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Self {
        let pts: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let t = lo + (hi - lo) * k as f64 / n as f64;
                (t, f(t))
            })
            .collect();
        Self {
            delta: 1.0,
            g: 1.0,
            shape: Shape::Sampled(SampledShape::new(pts).unwrap()),
        }
    }

    /// f(t) = g f̃(t).
    pub fn f(&self, t: f64) -> f64 {
        self.g * self.shape.value(t)
    }

    pub fn f_dot(&self, t: f64) -> f64 {
        self.g * self.shape.derivative(t)
    }

    pub fn f_antiderivative(&self, t: f64) -> f64 {
        self.g * self.shape.antiderivative(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    I,
    II,
    III,
}

/// Region scheme: g < 1 → I, else Δ < 1 → II, else III. When both g < 1
/// and Δ < 1 the picture with the smaller perturbation norm min(g, Δ)·π
/// wins.
pub fn classify_region(spec: &DriveSpec) -> Result<Region, PictureError> {
    if !spec.shape.is_periodic() {
        return Err(PictureError::NonPeriodicDrive);
    }
    let (g, d) = (spec.g.abs(), spec.delta);
    Ok(if g < 1.0 && d < 1.0 {
        if g <= d {
            Region::I
        } else {
            Region::II
        }
    } else if g < 1.0 {
        Region::I
    } else if d < 1.0 {
        Region::II
    } else {
        Region::III
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PictureKind {
    RegionI,
    RegionII,
    Adiabatic,
}

/// A picture choice: the interaction drive v(t), the frame factorization
/// U0(t), and whether the σx↔σz Hadamard swap was applied first.
pub struct PictureContext {
    pub kind: PictureKind,
    pub drive: ScalarDrive,
    pub frame: Arc<dyn Fn(f64) -> AngleAxis + Send + Sync>,
    pub swapped: bool,
}

impl PictureContext {
    /// Reassembles the physical propagator from the picture propagator:
    /// U_phys(t) = [H2] frame(t) · U_pict · frame(t0)† [H2].
    pub fn assemble_physical(&self, u_pict: &Su2Matrix, t: f64) -> Su2Matrix {
        let f_t = (self.frame)(t).to_matrix();
        let f_0 = (self.frame)(self.drive.t0).to_matrix();
        let m = f_t.mul(u_pict).mul(&f_0.dagger());
        if self.swapped {
            let h2 = Su2Matrix::hadamard();
            h2.mul(&m).mul(&h2)
        } else {
            m
        }
    }
}

fn grid_suggestion(span: f64, max_phase_rate: f64) -> usize {
    let oscillations = span * (max_phase_rate + 1.0) / (2.0 * std::f64::consts::PI);
    ((oscillations * 32.0).ceil() as usize).clamp(256, 1 << 20)
}

/// Weak-drive interaction picture: v(t) = (g/2) f̃(t) e^{iΔt},
/// U0(t) = exp(-iΔt σz/2).
pub fn build_region1(spec: &DriveSpec, span: f64) -> PictureContext {
    let (g, delta) = (spec.g, spec.delta);
    let shape = spec.shape.clone();
    let drive = ScalarDrive::new(
        move |t| {
            Complex64::from_polar(1.0, delta * t) * (0.5 * g * shape.value(t))
        },
        0.0,
        span,
    )
    .with_suggested_intervals(grid_suggestion(span, delta + 1.0));
    PictureContext {
        kind: PictureKind::RegionI,
        drive,
        frame: Arc::new(move |t| AngleAxis::new(0.5 * delta * t, [0.0, 0.0, 1.0])),
        swapped: false,
    }
}

/// Small-splitting picture after the Hadamard swap:
/// v(t) = (Δ/2) e^{ig F̃(t)}, U0(t) = exp(-ig F̃(t) σz/2).
pub fn build_region2(spec: &DriveSpec, span: f64) -> PictureContext {
    let (g, delta) = (spec.g, spec.delta);
    let shape = spec.shape.clone();
    let shape_f = spec.shape.clone();
    let drive = ScalarDrive::new(
        move |t| Complex64::from_polar(0.5 * delta, g * shape.antiderivative(t)),
        0.0,
        span,
    )
    .with_suggested_intervals(grid_suggestion(span, g.abs() + 1.0));
    PictureContext {
        kind: PictureKind::RegionII,
        drive,
        frame: Arc::new(move |t| {
            AngleAxis::new(0.5 * g * shape_f.antiderivative(t), [0.0, 0.0, 1.0])
        }),
        swapped: true,
    }
}

/// Real-gauge adiabatic frame data.
pub struct AdiabaticFrame {
    pub chi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub chi_dot: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// Adiabatic picture over `window`, with the dynamical phase origin
/// φ(t0) = 0:
///
/// ```text
///   χ(t)  = arctan[f(t)/Δ]          (single-argument arctan: real gauge,
///                                    zero Berry phase)
///   χ̇(t)  = Δ f'(t) / (Δ² + f²)
///   φ(t)  = ½ ∫_{t0}^t √(Δ² + f²)
///   v(t)  = i (χ̇/2) e^{2iφ}
///   U0(t) = Ψ(t) Φ(t),  Ψ = exp(-i χ/2 σy),  Φ = exp(-i φ σz) .
/// ```
pub fn build_adiabatic(
    spec: &DriveSpec,
    t0: f64,
    window: (f64, f64),
) -> Result<(PictureContext, AdiabaticFrame), PictureError> {
    assert!(window.0 < window.1);
    let (delta, _g) = (spec.delta, spec.g);
    let s1 = spec.clone();
    let s2 = spec.clone();
    let chi = Arc::new(move |t: f64| (s1.f(t) / s1.delta).atan());
    let chi_dot = Arc::new(move |t: f64| {
        let f = s2.f(t);
        s2.delta * s2.f_dot(t) / (s2.delta * s2.delta + f * f)
    });

    // φ by cumulative quadrature with Hermite interpolation between nodes
    // (the derivative φ' = √(Δ²+f²)/2 is known exactly at the nodes)
    let lo = window.0.min(t0);
    let hi = window.1.max(t0);
    let spec_e = spec.clone();
    let energy = move |t: f64| 0.5 * (spec_e.delta.powi(2) + spec_e.f(t).powi(2)).sqrt();
    let n = (((hi - lo) * 2048.0).ceil() as usize).clamp(1 << 12, 1 << 18);
    let grid = quad::PanelGrid::uniform(lo, hi, n);
    let evals: Vec<Complex64> = grid
        .nodes()
        .iter()
        .map(|&t| Complex64::new(energy(t), 0.0))
        .collect();
    let cumulative = grid.cumulative(&evals);
    let nodes: Vec<f64> = grid.nodes().to_vec();
    let phis: Vec<f64> = cumulative.iter().map(|z| z.re).collect();
    let energy2 = energy.clone();
    let h = nodes[1] - nodes[0];
    let (lo_n, n_len) = (nodes[0], nodes.len());
    // cubic Hermite between nodes, with the exact slopes φ' = E(t)
    let phi_raw = move |t: f64| -> f64 {
        let x = ((t - lo_n) / h).clamp(0.0, (n_len - 1) as f64);
        let i = (x.floor() as usize).min(n_len - 2);
        let s = x - i as f64;
        let (p0, p1) = (phis[i], phis[i + 1]);
        let (m0, m1) = (energy2(lo_n + h * i as f64) * h, energy2(lo_n + h * (i + 1) as f64) * h);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * p0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * p1
            + (s3 - s2) * m1
    };
    // anchor so φ(t0) = 0 regardless of grid alignment
    let offset = phi_raw(t0);
    let phi = Arc::new(move |t: f64| phi_raw(t) - offset);

    let chi_dot_v = chi_dot.clone();
    let phi_v = phi.clone();
    let drive = ScalarDrive::new(
        move |t| Complex64::new(0.0, 0.5 * chi_dot_v(t)) * Complex64::from_polar(1.0, 2.0 * phi_v(t)),
        window.0,
        window.1,
    )
    .with_suggested_intervals(grid_suggestion(
        window.1 - window.0,
        (delta * delta + spec.g * spec.g).sqrt(),
    ));

    let chi_f = chi.clone();
    let phi_f = phi.clone();
    let frame = Arc::new(move |t: f64| {
        let psi = AngleAxis::new(0.5 * chi_f(t), [0.0, 1.0, 0.0]);
        let ph = AngleAxis::new(phi_f(t), [0.0, 0.0, 1.0]);
        psi.compose(&ph)
    });

    Ok((
        PictureContext {
            kind: PictureKind::Adiabatic,
            drive,
            frame,
            swapped: false,
        },
        AdiabaticFrame { chi, chi_dot, phi },
    ))
}

/// Adiabatic amplitudes from summed Magnus coefficients:
/// α = cos θ - i (C/θ) sin θ, β = -i (A*/θ) sin θ, |α|² + |β|² = 1.
pub fn amplitudes_from_magnus(mc: &MagnusCoefficients) -> (Complex64, Complex64) {
    amplitudes_from_ac(mc.a_sum(), mc.c_sum())
}

pub fn amplitudes_from_ac(a: Complex64, c: f64) -> (Complex64, Complex64) {
    let theta = (a.norm_sqr() + c * c).sqrt();
    if theta < 1e-14 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let sinc = theta.sin() / theta;
    (
        Complex64::new(theta.cos(), -c * sinc),
        Complex64::new(0.0, -1.0) * a.conj() * sinc,
    )
}
