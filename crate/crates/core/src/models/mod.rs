//! End-to-end model drivers: the Landau-Zener sweep and the semiclassical
//! Rabi model.

pub mod lz;
pub mod rabi;
