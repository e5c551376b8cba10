//! Photon statistics, squeezing and entanglement of a superposition of
//! coherent and subharmonic two-mode cavity light.
//!
//! The closed-form modules (`coherent`, `subharmonic`, `superposition`,
//! `statistics`) are cross-checked by the brute-force solvers in `oracles`;
//! `verify` runs the full comparison suite.

pub mod coherent;
pub mod error;
pub mod moments;
pub mod oracles;
pub mod params;
pub mod statistics;
pub mod subharmonic;
pub mod superposition;
pub mod verify;

pub use error::{Error, Result};
pub use params::{lambda_pm, Regime, SystemParams, ThresholdClass, Time};
