//! Quadrature kernels: adaptive Gauss–Kronrod for one-dimensional
//! integrals and a composite quartic panel rule that produces cumulative
//! integrals on a grid (the workhorse behind the iterated time-ordered
//! integrals of the Magnus coefficients).

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature failed to reach tolerance {tol:.3e}: error estimate {estimate:.3e} after {evals} evaluations")]
    ToleranceNotMet { tol: f64, estimate: f64, evals: usize },
    #[error("grid too coarse: refinement changed result by {delta:.3e} (budget {budget:.3e})")]
    GridTooCoarse { delta: f64, budget: f64 },
}

// 15-point Kronrod nodes on [-1, 1] (positive half) with the embedded
// 7-point Gauss weights; standard QK15 pair.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn qk15<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fl, fr) = (f(c - h * x), f(c + h * x));
        let pair = if x == 0.0 { fl } else { fl + fr };
        kron += wk * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, (kron - gauss).norm() * h.abs())
}

/// Adaptive complex-valued integral of `f` over `[a, b]` to absolute
/// tolerance `tol`, by bisection of the worst interval.
pub fn integrate_complex<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, QuadError> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    struct Seg {
        a: f64,
        b: f64,
        val: Complex64,
        err: f64,
    }
    let (val, err) = qk15(f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    let mut evals = 15usize;
    const MAX_EVALS: usize = 4_000_000;
    loop {
        let total_err: f64 = segs.iter().map(|s| s.err).sum();
        if total_err <= tol {
            return Ok(segs.iter().map(|s| s.val).sum());
        }
        if evals >= MAX_EVALS {
            return Err(QuadError::ToleranceNotMet {
                tol,
                estimate: total_err,
                evals,
            });
        }
        // split the worst segment
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let s = segs.swap_remove(worst);
        let m = 0.5 * (s.a + s.b);
        if m == s.a || m == s.b {
            return Err(QuadError::ToleranceNotMet {
                tol,
                estimate: total_err,
                evals,
            });
        }
        let (v1, e1) = qk15(f, s.a, m);
        let (v2, e2) = qk15(f, m, s.b);
        evals += 30;
        segs.push(Seg { a: s.a, b: m, val: v1, err: e1 });
        segs.push(Seg { a: m, b: s.b, val: v2, err: e2 });
    }
}

/// Adaptive real-valued integral (thin wrapper over the complex kernel).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, QuadError> {
    integrate_complex(&|t| Complex64::new(f(t), 0.0), a, b, tol).map(|z| z.re)
}

// Cumulative weights of the degree-4 interpolant through 5 equidistant
// nodes: W[m][i] multiplies f(t_i) in ∫_{t0}^{t_m}, in units of h.
// The m = 4 row is Boole's rule.
const CUM4: [[f64; 5]; 4] = [
    [
        251.0 / 720.0,
        323.0 / 360.0,
        -11.0 / 30.0,
        53.0 / 360.0,
        -19.0 / 720.0,
    ],
    [29.0 / 90.0, 62.0 / 45.0, 4.0 / 15.0, 2.0 / 45.0, -1.0 / 90.0],
    [27.0 / 80.0, 51.0 / 40.0, 9.0 / 10.0, 21.0 / 40.0, -3.0 / 80.0],
    [14.0 / 45.0, 64.0 / 45.0, 8.0 / 15.0, 64.0 / 45.0, 14.0 / 45.0],
];

/// Time grid made of contiguous segments, each uniformly spaced with a
/// multiple of four intervals, so the quartic cumulative rule applies
/// panel by panel.
#[derive(Debug, Clone)]
pub struct PanelGrid {
    nodes: Vec<f64>,
    /// (start index, step) per segment; segment s spans nodes
    /// `start..=start + 4k`.
    segments: Vec<(usize, f64)>,
}

impl PanelGrid {
    /// Uniform grid over [a, b] with `intervals` rounded up to a multiple
    /// of four.
    pub fn uniform(a: f64, b: f64, intervals: usize) -> Self {
        Self::from_segments(&[(a, b, intervals)])
    }

    /// Builds a grid from `(lo, hi, intervals)` segments; segments must be
    /// contiguous and increasing.
    pub fn from_segments(segs: &[(f64, f64, usize)]) -> Self {
        assert!(!segs.is_empty());
        let mut nodes = vec![segs[0].0];
        let mut segments = Vec::with_capacity(segs.len());
        for &(lo, hi, n) in segs {
            assert!(hi > lo);
            assert!((lo - *nodes.last().unwrap()).abs() < 1e-12 * (1.0 + lo.abs()));
            let n = n.div_ceil(4).max(1) * 4;
            let h = (hi - lo) / n as f64;
            segments.push((nodes.len() - 1, h));
            for k in 1..=n {
                nodes.push(lo + h * k as f64);
            }
        }
        Self { nodes, segments }
    }

    /// Same segment structure with every step halved.
    pub fn refined(&self) -> Self {
        let mut segs = Vec::with_capacity(self.segments.len());
        for (si, &(start, _h)) in self.segments.iter().enumerate() {
            let end = self
                .segments
                .get(si + 1)
                .map(|&(s, _)| s)
                .unwrap_or(self.nodes.len() - 1);
            let n = end - start;
            segs.push((self.nodes[start], self.nodes[end], 2 * n));
        }
        Self::from_segments(&segs)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cumulative integral of `values` (sampled on the grid nodes) from the
    /// first node to every node, via the quartic panel rule.
    pub fn cumulative(&self, values: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(values.len(), self.nodes.len());
        let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
        for (si, &(start, h)) in self.segments.iter().enumerate() {
            let end = self
                .segments
                .get(si + 1)
                .map(|&(s, _)| s)
                .unwrap_or(self.nodes.len() - 1);
            let mut base = out[start];
            let mut p = start;
            while p < end {
                let f = &values[p..=p + 4];
                for m in 0..4 {
                    let w = &CUM4[m];
                    out[p + m + 1] = base
                        + (w[0] * f[0] + w[1] * f[1] + w[2] * f[2] + w[3] * f[3] + w[4] * f[4])
                            * h;
                }
                base = out[p + 4];
                p += 4;
            }
        }
        out
    }

    /// Integral over the whole grid.
    pub fn total(&self, values: &[Complex64]) -> Complex64 {
        *self.cumulative(values).last().unwrap()
    }
}
