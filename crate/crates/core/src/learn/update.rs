use super::{HyperParams, ParamSet, UpdateRule};
use crate::netcore::Network;
use crate::numcore::Scalar;

/// The two most recent applied parameter changes.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaHistory<T> {
    /// Change applied at the previous step.
    pub prev: ParamSet<T>,
    /// Change applied the step before that.
    pub prev2: ParamSet<T>,
}

impl<T: Scalar> DeltaHistory<T> {
    pub fn zeros_like(net: &Network<T>) -> Self {
        Self {
            prev: ParamSet::zeros_like(net),
            prev2: ParamSet::zeros_like(net),
        }
    }
}

/// Applies one momentum step and shifts the history.
///
/// Classical: `change = eta * grad + alpha * prev`.
/// Modified: `change = eta * grad + alpha * prev + beta * prev2`.
///
/// `grad` points in the error-reducing direction. Returns the applied change.
pub fn apply_update<T: Scalar>(
    net: &mut Network<T>,
    grad: &ParamSet<T>,
    hist: &mut DeltaHistory<T>,
    hp: &HyperParams,
) -> ParamSet<T> {
    assert!(grad.matches(net) && hist.prev.matches(net) && hist.prev2.matches(net));
    let eta = T::from_f64_lossy(hp.eta);
    let alpha = T::from_f64_lossy(hp.alpha);
    let beta = T::from_f64_lossy(hp.beta);

    let mut change = ParamSet::zeros_like(net);
    change.axpy(eta, grad);
    change.axpy(alpha, &hist.prev);
    if hp.update_rule == UpdateRule::Modified {
        change.axpy(beta, &hist.prev2);
    }

    for (w, c) in net.weights_mut().iter_mut().zip(&change.weights) {
        w.axpy(T::one(), c);
    }
    for (b, c) in net.biases_mut().iter_mut().zip(&change.biases) {
        b.axpy(T::one(), c);
    }

    hist.prev2 = std::mem::replace(&mut hist.prev, change.clone());
    change
}
