//! Argument of the Gamma function on the line 1 - iγ.

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// arg Γ(1-iγ) from the Weierstrass product:
///
/// ```text
///   arg Γ(1-iγ) = γ_E γ - Σ_{k≥1} [ γ/k - arctan(γ/k) ] ,
/// ```
///
/// summed until the cubic tail estimate Σ_{k>K} γ³/(3k³) ≈ γ³/(6K²) is
/// below 1e-12 (capped at 2·10⁶ terms, after which the tail estimate with
/// Euler–Maclaurin endpoint corrections is added instead).
pub fn gamma_arg_one_minus_i(gamma: f64) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    let g = gamma;
    // plain cubic bound γ³/(6K²) < 1e-12
    let k_need = (g.abs().powi(3) / 6e-12).sqrt().ceil().max(64.0);
    let k_max = (k_need as usize).min(2_000_000);
    let mut sum = 0.0f64;
    for k in 1..=k_max {
        let x = g / k as f64;
        sum += x - x.atan();
    }
    // tail Σ_{k>K} [γ³/(3k³) - γ⁵/(5k⁵) + …] with the k⁻³ sum expanded by
    // Euler–Maclaurin; residual is O(γ⁷/K⁶)
    let kk = k_max as f64;
    let tail = g.powi(3) / 3.0 * (0.5 / (kk * kk) - 0.5 / kk.powi(3) + 0.25 / kk.powi(4))
        - g.powi(5) / (20.0 * kk.powi(4));
    EULER_GAMMA * g - (sum + tail)
}
