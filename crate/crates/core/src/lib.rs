pub mod amplitudes;
pub mod cli;
pub mod cylwave;
pub mod diagnostics;
pub mod error;
pub mod fieldgrid;
pub mod geometry;
pub mod incident;
pub mod quadrature;
pub mod scattering;

pub use error::{Error, Result};
