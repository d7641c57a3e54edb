//! Elastic surfaces of revolution: geometry, curvature-energy Euler-Lagrange
//! residuals, closed-form solution families and the mechanical stability of
//! spherical membranes with a skeleton.
//!
//! Lengths are in nanometres and energies in units of `k_B T` unless a
//! function says otherwise; [`units`] converts pressures to pascal.

pub mod energetics;
pub mod error;
pub mod geom;
pub mod quadrature;
pub mod solutions;
pub mod stability;
pub mod units;

pub use error::{Error, Result};
