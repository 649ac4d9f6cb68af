//! Dense linear algebra, activation functions and the pinned random source.

mod activation;
mod matrix;
mod prng;
mod scalar;

pub use activation::{tansig, tansig_deriv_from_output, ActivationKind};
pub use matrix::{Matrix, Vector};
pub use prng::{mix64, uniform_01, Prng};
pub use scalar::Scalar;
