//! Feed-forward back-propagation networks for 8x6 character recognition.
//!
//! The crate covers the full path from a scanned character to a recognised
//! letter and the experiment protocol around it:
//!
//! - [`numcore`]: dense matrices and vectors, tansig, the seeded generator.
//! - [`netcore`]: topology, parameters, forward pass, text snapshots.
//! - [`learn`]: back-propagation, classical and two-term momentum updates,
//!   the batch training loop and its report.
//! - [`classify`]: one-hot targets, winner-take-all decisions, accuracy.
//! - [`preprocess`]: thresholding, 8x6 block pooling, flattening, samples.
//! - [`dataio`]: PGM and glyph files, the bundled font, report files.
//! - [`harness`]: the depth x update-rule experiment and its trend summary.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the element type for the common cases. The experiment harness
//! runs in `f64`.

pub mod classify;
pub mod dataio;
mod error;
pub mod harness;
pub mod learn;
pub mod netcore;
pub mod numcore;
pub mod preprocess;

pub use error::{Error, Result};
pub use numcore::Scalar;

pub type Matrix64 = numcore::Matrix<f64>;
pub type Matrix32 = numcore::Matrix<f32>;
pub type Vector64 = numcore::Vector<f64>;
pub type Vector32 = numcore::Vector<f32>;
pub type Network64 = netcore::Network<f64>;
pub type Network32 = netcore::Network<f32>;
pub type Trainer64 = learn::Trainer<f64>;
pub type Trainer32 = learn::Trainer<f32>;
pub type ParamSet64 = learn::ParamSet<f64>;
