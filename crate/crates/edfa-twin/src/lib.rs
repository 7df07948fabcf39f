//! Digital-twin toolkit for erbium-doped fiber amplifiers.
//!
//! The crate provides, end to end:
//!
//! * a physics-based **simulator** of multi-stage EDFAs under gain or
//!   power control, used as ground truth ([`simulator`]);
//! * the **grey-box model**: gain spectra form a one-variable affine
//!   family, so two fitted spectra plus a monotone setpoint equation
//!   predict gain from a handful of samples ([`greybox`]);
//! * a from-scratch **MLP baseline** for comparison ([`mlp`]);
//! * dataset formats, ASE-subtraction preprocessing, public-dataset
//!   ingestion and split strategies ([`dataset`]);
//! * metrics and scripted experiments ([`eval`]);
//! * a command-line front end ([`cli`]).
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod error;
pub mod ode;
pub mod setting;
pub mod spectrum;

pub use error::{Error, Result};
