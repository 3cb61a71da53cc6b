//! Numerical verification of monotonicity identities, Willmore energies and Li–Yau type
//! bounds for capillary surfaces in the half-space and in the unit ball.

// `!(x > 0.0)` style guards reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geom;
pub mod quadrature;
pub mod surface;
pub mod wetted;
pub mod balls;
pub mod energy;
pub mod field;
pub mod mono;
pub mod config;
pub mod report;

pub use error::{Error, Result};
