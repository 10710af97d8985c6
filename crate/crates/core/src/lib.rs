//! Forward model and analysis toolkit for spin-ensemble RF interferometric
//! ranging.
//!
//! An NV-center spin ensemble reads out the phase of a free-space GHz RF
//! interferometer: the target distance sets the phase difference between a
//! reference and a backscattered path, the interference amplitude drives the
//! spin ensemble, and the spin-dependent fluorescence encodes the target
//! position. Multi-pi RF pulses sharpen the position response beyond the
//! classical sqrt(N) limit.
//!
//! The crate is `no_std`-compatible (`--no-default-features --features libm`);
//! all quantities are SI (Hz, T, s, m) unless a name says otherwise.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ambiguity;
pub mod analysis;
pub mod error;
pub mod interferometer;
pub mod physics;
pub mod pulse;
pub mod rng;
pub mod stats;

pub(crate) mod math;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
