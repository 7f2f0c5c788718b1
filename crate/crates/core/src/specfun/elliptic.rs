//! Incomplete elliptic integral of the second kind in the *parameter*
//! convention:
//!
//! ```text
//!   E(φ, m) = ∫_0^φ √(1 - m sin²r) dr ,   m ∈ [0, 1].
//! ```
//!
//! The caller passes the parameter m (the squared modulus), which removes
//! the classic k-vs-m ambiguity at the interface.

use super::SpecFunError;
use crate::quad;

/// E(φ, m) by adaptive quadrature, absolute error ≤ 1e-10.
pub fn incomplete_elliptic_e(phi: f64, m_param: f64) -> Result<f64, SpecFunError> {
    if !(0.0..=1.0).contains(&m_param) || !m_param.is_finite() {
        return Err(SpecFunError::ParameterOutOfRange(format!(
            "elliptic parameter m = {m_param}, expected m in [0, 1]"
        )));
    }
    let v = quad::integrate(
        &|r| (1.0 - m_param * r.sin() * r.sin()).max(0.0).sqrt(),
        0.0,
        phi,
        1e-11,
    )
    .expect("bounded integrand on a finite interval");
    Ok(v)
}
