//! Zeroth-order Struve function.

use crate::quad;

/// Power series below the switch point, integral representation above.
const SWITCH: f64 = 8.0;

/// H0(x), absolute error below 1e-8.
pub fn struve_h0(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs(); // H0 is odd
    let v = if x <= SWITCH {
        h0_series(x)
    } else {
        h0_integral(x)
    };
    s * v
}

/// (2/π) Σ_k (-1)^k x^{2k+1} / ((2k+1)!!)².
fn h0_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for k in 1..60 {
        let odd = (2 * k + 1) as f64;
        term *= -x * x / (odd * odd);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    2.0 / std::f64::consts::PI * sum
}

/// H0(x) = (2/π) ∫_0^{π/2} sin(x cos t) dt.
fn h0_integral(x: f64) -> f64 {
    let v = quad::integrate(&|t| (x * t.cos()).sin(), 0.0, std::f64::consts::FRAC_PI_2, 1e-11)
        .expect("smooth bounded integrand on a finite interval");
    2.0 / std::f64::consts::PI * v
}
