//! Magnus coefficients for Hamiltonians of the single-axis form
//! H = v(t) σ+ + v*(t) σ-.
//!
//! For this family the su(2) decomposition Ω = A σ+ + A* σ- + C σz has
//! A_{2n} = C_{2n-1} = 0 for every n, and the first three non-zero
//! coefficients admit closed iterated-integral forms,
//!
//! ```text
//!   A1(t) = ∫ v1
//!   C2(t) = ∫∫_{t2<t1} Im[v1 v2*]
//!   A3(t) = (2i/3) ∫∫∫_{t3<t2<t1} [ Im(v2 v3*) v1 + Im(v2 v1*) v3 ] ,
//! ```
//!
//! evaluated here as iterated cumulative integrals on a shared grid.
//! Arbitrary order is reached by the grid recursion
//!
//! ```text
//!   a_n^(j) = 2i Σ_m [ A_m c_{n-m}^(j-1) - C_m a_{n-m}^(j-1) ]
//!   c_n^(j) = 2  Σ_m Im[ A_m a_{n-m}^(j-1)* ]
//!   A_n = Σ_j (B_j/j!) ∫ a_n^(j) ,   C_n = Σ_j (B_j/j!) ∫ c_n^(j) ,
//! ```
//!
//! with initial data a_1^(0) = v, c_1^(0) = 0 and Bernoulli numbers B_j.
//! The closed forms and the recursion are independent evaluation paths
//! and are tested against each other.

use crate::quad::{self, PanelGrid, QuadError};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MagnusError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("grid too coarse for order {order}: refinement changed results by {delta:.3e} (budget {budget:.3e})")]
    GridTooCoarse { order: usize, delta: f64, budget: f64 },
}

/// Bernoulli numbers B_0 .. B_12 (B_1 = -1/2 convention).
pub const BERNOULLI: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];

/// Complex drive v(t) on a finite interval.
#[derive(Clone)]
pub struct ScalarDrive {
    pub v: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub t0: f64,
    pub t1: f64,
    /// Grid-interval suggestion from the builder (total phase variation
    /// over 2π times a per-oscillation node budget).
    pub suggested_intervals: usize,
}

impl ScalarDrive {
    pub fn new<F>(v: F, t0: f64, t1: f64) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            v: Arc::new(v),
            t0,
            t1,
            suggested_intervals: 256,
        }
    }

    pub fn with_suggested_intervals(mut self, n: usize) -> Self {
        self.suggested_intervals = n.clamp(16, 1 << 22);
        self
    }

    /// Same drive restricted to [t0, t].
    pub fn truncated(&self, t: f64) -> Self {
        assert!(t > self.t0 && t <= self.t1 + 1e-12);
        let frac = (t - self.t0) / (self.t1 - self.t0);
        Self {
            v: self.v.clone(),
            t0: self.t0,
            t1: t,
            suggested_intervals: ((self.suggested_intervals as f64 * frac) as usize).max(64),
        }
    }

    fn base_grid(&self) -> PanelGrid {
        PanelGrid::uniform(self.t0, self.t1, self.suggested_intervals)
    }

    fn sample(&self, grid: &PanelGrid) -> Vec<Complex64> {
        grid.nodes().iter().map(|&t| (self.v)(t)).collect()
    }
}

/// Per-order Magnus coefficients A_1..A_N (complex) and C_1..C_N (real)
/// at a fixed evaluation time.
#[derive(Debug, Clone)]
pub struct MagnusCoefficients {
    pub a: Vec<Complex64>,
    pub c: Vec<f64>,
    pub time: f64,
}

impl MagnusCoefficients {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn a_sum(&self) -> Complex64 {
        self.a.iter().sum()
    }

    pub fn c_sum(&self) -> f64 {
        self.c.iter().sum()
    }

    /// Σ up to and including `order`.
    pub fn truncated(&self, order: usize) -> (Complex64, f64) {
        let k = order.min(self.order());
        (
            self.a[..k].iter().sum(),
            self.c[..k].iter().sum(),
        )
    }

    /// θ = √(|ΣA|² + (ΣC)²) of the summed operator.
    pub fn theta(&self) -> f64 {
        (self.a_sum().norm_sqr() + self.c_sum() * self.c_sum()).sqrt()
    }
}

/// A_1(t) = ∫_{t0}^{t} v, by adaptive quadrature.
pub fn closed_form_a1(d: &ScalarDrive, t: f64, tol: f64) -> Result<Complex64, MagnusError> {
    Ok(quad::integrate_complex(&*d.v, d.t0, t, tol)?)
}

/// Runs `f` on successively refined grids until the result moves by less
/// than `tol`, returning the finest value.
fn richardson<T, F>(d: &ScalarDrive, tol: f64, dist: impl Fn(&T, &T) -> f64, f: F) -> Result<T, MagnusError>
where
    F: Fn(&PanelGrid, &[Complex64]) -> T,
{
    let mut grid = d.base_grid();
    let mut vals = d.sample(&grid);
    let mut cur = f(&grid, &vals);
    for _ in 0..8 {
        grid = grid.refined();
        vals = d.sample(&grid);
        let next = f(&grid, &vals);
        let delta = dist(&cur, &next);
        cur = next;
        if delta < tol {
            return Ok(cur);
        }
    }
    Err(MagnusError::Quadrature(QuadError::ToleranceNotMet {
        tol,
        estimate: f64::NAN,
        evals: 0,
    }))
}

/// C_2(t) = ∫_{t0}^{t} Im[v(t1) A1*(t1)] dt1 over the ordered simplex,
/// via an inner cumulative integral.
pub fn closed_form_c2(d: &ScalarDrive, t: f64, tol: f64) -> Result<f64, MagnusError> {
    let dd = d.truncated(t);
    richardson(
        &dd,
        tol,
        |a: &f64, b: &f64| (a - b).abs(),
        |grid, v| {
            let a1 = grid.cumulative(v);
            let integrand: Vec<Complex64> = v
                .iter()
                .zip(&a1)
                .map(|(vi, ai)| Complex64::new((vi * ai.conj()).im, 0.0))
                .collect();
            grid.total(&integrand).re
        },
    )
}

/// A_3(t) by nested cumulative integration:
///
/// ```text
///   A3 = (2i/3) ∫ v·C2cum + (1/3) ∫ (v* G - v G̃) ,
///   G = ∫ v A1 ,  G̃ = ∫ v* A1 .
/// ```
pub fn closed_form_a3(d: &ScalarDrive, t: f64, tol: f64) -> Result<Complex64, MagnusError> {
    let dd = d.truncated(t);
    richardson(
        &dd,
        tol,
        |a: &Complex64, b: &Complex64| (a - b).norm(),
        |grid, v| {
            let a1 = grid.cumulative(v);
            let c2_integrand: Vec<Complex64> = v
                .iter()
                .zip(&a1)
                .map(|(vi, ai)| Complex64::new((vi * ai.conj()).im, 0.0))
                .collect();
            let c2 = grid.cumulative(&c2_integrand);
            let g = grid.cumulative(&v.iter().zip(&a1).map(|(vi, ai)| vi * ai).collect::<Vec<_>>());
            let gt = grid.cumulative(
                &v.iter()
                    .zip(&a1)
                    .map(|(vi, ai)| vi.conj() * ai)
                    .collect::<Vec<_>>(),
            );
            let term1: Vec<Complex64> = v.iter().zip(&c2).map(|(vi, ci)| vi * ci.re).collect();
            let term2: Vec<Complex64> = (0..v.len())
                .map(|i| v[i].conj() * g[i] - v[i] * gt[i])
                .collect();
            let t1 = grid.total(&term1);
            let t2 = grid.total(&term2);
            Complex64::new(0.0, 2.0 / 3.0) * t1 + t2 / 3.0
        },
    )
}

/// Full grid recursion to the requested order. The tables are rebuilt on a
/// doubled grid and the result is rejected (`GridTooCoarse`) if any
/// coefficient moves by more than 10× the requested tolerance.
pub fn recursive_magnus(
    d: &ScalarDrive,
    order: usize,
    grid_points: usize,
    tol: f64,
) -> Result<MagnusCoefficients, MagnusError> {
    assert!(order >= 1);
    assert!(order < BERNOULLI.len(), "Bernoulli table covers orders < 13");
    let grid = PanelGrid::uniform(d.t0, d.t1, grid_points.max(32));
    let coarse = recursion_tables(&grid, &d.sample(&grid), order);
    let fine_grid = grid.refined();
    let fine = recursion_tables(&fine_grid, &d.sample(&fine_grid), order);
    let scale = fine.a[0].norm().max(1.0);
    let budget = 10.0 * tol * scale;
    let mut delta = 0.0f64;
    for n in 0..order {
        delta = delta
            .max((coarse.a[n] - fine.a[n]).norm())
            .max((coarse.c[n] - fine.c[n]).abs());
    }
    if delta > budget {
        return Err(MagnusError::GridTooCoarse {
            order,
            delta,
            budget,
        });
    }
    Ok(fine)
}

fn recursion_tables(grid: &PanelGrid, v: &[Complex64], order: usize) -> MagnusCoefficients {
    let len = grid.len();
    let zero = vec![Complex64::new(0.0, 0.0); len];
    // a[n-1][j], c[n-1][j] tables on the grid; A[n-1], C[n-1] cumulative
    let mut a_tab: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(order);
    let mut c_tab: Vec<Vec<Vec<f64>>> = Vec::with_capacity(order);
    let mut a_cum: Vec<Vec<Complex64>> = Vec::with_capacity(order);
    let mut c_cum: Vec<Vec<f64>> = Vec::with_capacity(order);

    // order 1: a_1^(0) = v, c_1^(0) = 0
    a_tab.push(vec![v.to_vec()]);
    c_tab.push(vec![vec![0.0; len]]);
    a_cum.push(grid.cumulative(v));
    c_cum.push(vec![0.0; len]);

    for n in 2..=order {
        let mut a_rows: Vec<Vec<Complex64>> = vec![zero.clone()]; // j = 0 row vanishes
        let mut c_rows: Vec<Vec<f64>> = vec![vec![0.0; len]];
        for j in 1..n {
            let mut arow = vec![Complex64::new(0.0, 0.0); len];
            let mut crow = vec![0.0f64; len];
            for m in 1..=(n - j) {
                let am = &a_cum[m - 1];
                let cm = &c_cum[m - 1];
                let aprev = &a_tab[n - m - 1][j - 1];
                let cprev = &c_tab[n - m - 1][j - 1];
                for i in 0..len {
                    arow[i] += Complex64::new(0.0, 2.0)
                        * (am[i] * cprev[i] - cm[i] * aprev[i]);
                    crow[i] += 2.0 * (am[i] * aprev[i].conj()).im;
                }
            }
            a_rows.push(arow);
            c_rows.push(crow);
        }
        // Bernoulli-weighted cumulative integrals
        let mut a_n = vec![Complex64::new(0.0, 0.0); len];
        let mut c_n = vec![0.0f64; len];
        for j in 1..n {
            let w = BERNOULLI[j] / factorial(j);
            if w == 0.0 {
                continue;
            }
            let ca = grid.cumulative(&a_rows[j]);
            let cc = grid.cumulative(
                &c_rows[j]
                    .iter()
                    .map(|&x| Complex64::new(x, 0.0))
                    .collect::<Vec<_>>(),
            );
            for i in 0..len {
                a_n[i] += w * ca[i];
                c_n[i] += w * cc[i].re;
            }
        }
        a_tab.push(a_rows);
        c_tab.push(c_rows);
        a_cum.push(a_n);
        c_cum.push(c_n);
    }

    MagnusCoefficients {
        a: a_cum.iter().map(|col| *col.last().unwrap()).collect(),
        c: c_cum.iter().map(|col| *col.last().unwrap()).collect(),
        time: *grid.nodes().last().unwrap(),
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Magnus convergence certificate: margin = ∫ |v| over the drive interval,
/// certified when it stays below π.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceCertificate {
    pub margin: f64,
    pub certified: bool,
}

pub fn convergence_margin(d: &ScalarDrive) -> Result<ConvergenceCertificate, MagnusError> {
    let margin = quad::integrate(&|t| (d.v)(t).norm(), d.t0, d.t1, 1e-9)?;
    Ok(ConvergenceCertificate {
        margin,
        certified: margin < std::f64::consts::PI,
    })
}
