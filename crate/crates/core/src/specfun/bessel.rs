//! Zeroth-order Bessel function of the first kind.

/// Power series below the switch point, Hankel asymptotic expansion above.
const SWITCH: f64 = 12.0;

/// J0(x), absolute error below 1e-10 over the real line.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs(); // J0 is even
    if x <= SWITCH {
        j0_series(x)
    } else {
        j0_asymptotic(x)
    }
}

/// Σ_k (-1)^k (x²/4)^k / (k!)², summed until the terms fall below the
/// rounding floor. At |x| ≤ 12 at most ~40 terms contribute.
fn j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..80 {
        term *= -q / ((k * k) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// Hankel expansion: J0(x) = √(2/πx) [P(x) cos χ - Q(x) sin χ], χ = x - π/4,
/// with P, Q the standard asymptotic series in 1/(8x).
fn j0_asymptotic(x: f64) -> f64 {
    let mut p = 0.0f64;
    let mut q = 0.0f64;
    let mut term = 1.0f64; // t_0
    let mut prev = f64::INFINITY;
    for m in 0..24 {
        let t = term.abs();
        if t > prev {
            break; // divergent tail reached; stop at the smallest term
        }
        prev = t;
        match m % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        let mm = (m + 1) as f64;
        term *= (2.0 * mm - 1.0) * (2.0 * mm - 1.0) / (mm * 8.0 * x);
    }
    let chi = x - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() + q * chi.sin())
}
