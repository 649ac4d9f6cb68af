//! Back-propagation, the momentum weight updates and the training loop.

mod backprop;
mod gradcheck;
mod hyper;
mod params;
mod report;
mod train;
mod update;

pub use backprop::{backprop, batch_gradient, lms_error, mse, BatchGradient, GradientSet};
pub use gradcheck::{compare_gradients, numerical_gradient, GradientComparison, ParamCoord};
pub use hyper::{HyperParams, UpdateRule};
pub use params::ParamSet;
pub use report::{gradient_metric, EpochRecord, TrainingReport};
pub use train::{train_sample, Trainer};
pub use update::{apply_update, DeltaHistory};
