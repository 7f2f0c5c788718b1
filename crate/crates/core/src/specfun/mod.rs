//! Self-contained special functions: Bessel J0, Struve H0, the incomplete
//! elliptic integral of the second kind, arg Γ(1-iγ), and a confluent Heun
//! series evaluator. Only what the two-level models need, nothing more.

mod bessel;
mod elliptic;
mod gamma_arg;
mod heun;
mod struve;

pub use bessel::bessel_j0;
pub use elliptic::incomplete_elliptic_e;
pub use gamma_arg::gamma_arg_one_minus_i;
pub use heun::{heun_c, HeunParams};
pub use struve::struve_h0;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecFunError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("series did not converge after {terms} terms (last increment {last:.3e})")]
    SeriesNotConverged { terms: usize, last: f64 },
}
