//! Finite-time performance of a quantum Otto refrigerator whose working
//! medium is a harmonic oscillator with a time-dependent frequency.
//!
//! Natural units `ħ = k_B = m = 1` are used throughout.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod ode;
pub mod qsl;
pub mod quad;
pub mod ramp;
pub mod report;
pub mod special;
pub mod sweep;
pub mod thermo;

mod dop853_tableau;

pub use error::{Error, Result};
