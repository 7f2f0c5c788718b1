//! Confluent Heun series evaluator.
//!
//! `heun_c` evaluates the Frobenius solution, analytic at z = 0 and
//! normalized to 1 there, of the confluent Heun equation written as
//!
//! ```text
//!   y'' + [ a + (1-μ0)/z + (1-μ1)/(z-1) ] y' + [ q/z + r/(z-1) ] y = 0 ,
//!   q = -b0 - b1·μ0 - μ1 (1-μ0)/2 ,
//!   r =  b0 + a·μ1/2 + μ1 (1-μ0)/2 .
//! ```
//!
//! The local exponents at z = 0 are {0, μ0}; passing -μ0 instead of μ0
//! selects the equation satisfied by the analytic factor of the second
//! (z^μ0) branch, so the pair of calls (±μ0) delivers both local
//! solutions. The (b0, b1, a) parameterization matches the quasienergy
//! formula of the cosine-driven two-level problem, where the two branches
//! are the even/odd half-period solutions; see `models::rabi`.

use super::SpecFunError;
use num_complex::Complex64;

/// Parameters of the confluent Heun series; `z` must lie strictly inside
/// the unit disc around the expansion point 0.
#[derive(Debug, Clone, Copy)]
pub struct HeunParams {
    pub mu0: Complex64,
    pub mu1: Complex64,
    pub b0: Complex64,
    pub b1: Complex64,
    pub a: Complex64,
    pub z: f64,
}

const MAX_TERMS: usize = 10_000;

/// Sum of the power series at `p.z`, truncated when two successive partial
/// sums differ by less than 1e-12 in absolute value.
pub fn heun_c(p: &HeunParams) -> Result<Complex64, SpecFunError> {
    assert!(p.z.abs() < 1.0, "series argument must satisfy |z| < 1");
    let q = -p.b0 - p.b1 * p.mu0 - p.mu1 * (Complex64::new(1.0, 0.0) - p.mu0) * 0.5;
    let r = p.b0 + p.a * p.mu1 * 0.5 + p.mu1 * (Complex64::new(1.0, 0.0) - p.mu0) * 0.5;

    // three-term recurrence from the ODE, c_0 = 1:
    //   c_{m+1} (m+1)(m+1-μ0) =
    //     c_m [ m(m-1) + m(2 - μ0 - μ1 - a) - q ] + c_{m-1} [ a(m-1) + q + r ]
    let mut c_prev = Complex64::new(0.0, 0.0);
    let mut c_cur = Complex64::new(1.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let zc = Complex64::new(p.z, 0.0);
    for m in 0..MAX_TERMS {
        let mf = m as f64;
        let num = c_cur
            * (Complex64::new(mf * (mf - 1.0), 0.0)
                + (Complex64::new(2.0, 0.0) - p.mu0 - p.mu1 - p.a) * mf
                - q)
            + c_prev * (p.a * (mf - 1.0) + q + r);
        let c_next = num / ((mf + 1.0) * (Complex64::new(mf + 1.0, 0.0) - p.mu0));
        zpow *= zc;
        let increment = c_next * zpow;
        sum += increment;
        if increment.norm() < 1e-12 && m > 8 {
            return Ok(sum);
        }
        c_prev = c_cur;
        c_cur = c_next;
    }
    Err(SpecFunError::SeriesNotConverged {
        terms: MAX_TERMS,
        last: (c_cur * zpow).norm(),
    })
}
