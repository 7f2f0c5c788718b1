//! Numerical library for single-axis-driven two-level quantum systems:
//! commutator-free su(2) Magnus expansions, picture transformations,
//! Floquet quasienergies with generalized-parity-preserving half-period
//! extraction, Landau–Zener transition probabilities and Stokes phases,
//! all validated against an exact ODE reference.

pub mod floquet;
pub mod magnus;
pub mod models;
pub mod oracle;
pub mod pictures;
pub mod quad;
pub mod specfun;
pub mod su2;

pub use num_complex::Complex64;
