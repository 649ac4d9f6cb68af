//! Central finite-difference gradients, independent of `backprop`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{lms_error, ParamSet};
use crate::netcore::Network;
use crate::numcore::{Scalar, Vector};
use crate::Result;

/// Location of one parameter. Biases are reported as column `cols` of their
/// layer, i.e. the weight on a constant input of 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamCoord {
    pub layer: usize,
    pub row: usize,
    pub col: usize,
    pub is_bias: bool,
}

impl fmt::Display for ParamCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_bias { "bias" } else { "weight" };
        write!(f, "layer {} {kind} ({}, {})", self.layer, self.row, self.col)
    }
}

/// `-(dE/dparam)` for the single pattern `(x, t)` by central differences.
pub fn numerical_gradient<T: Scalar>(net: &Network<T>, x: &Vector<T>, t: &Vector<T>, step: T) -> Result<ParamSet<T>> {
    let mut probe = net.clone();
    let mut out = ParamSet::zeros_like(net);
    let two = T::from_f64_lossy(2.0);
    let error_at = |probe: &Network<T>| -> Result<T> { lms_error(t, &probe.predict(x)?) };

    for l in 0..net.weights().len() {
        for i in 0..net.weights()[l].as_slice().len() {
            let orig = net.weights()[l].as_slice()[i];
            probe.weights_mut()[l].as_mut_slice()[i] = orig + step;
            let up = error_at(&probe)?;
            probe.weights_mut()[l].as_mut_slice()[i] = orig - step;
            let down = error_at(&probe)?;
            probe.weights_mut()[l].as_mut_slice()[i] = orig;
            out.weights[l].as_mut_slice()[i] = -(up - down) / (two * step);
        }
        for i in 0..net.biases()[l].len() {
            let orig = net.biases()[l][i];
            probe.biases_mut()[l][i] = orig + step;
            let up = error_at(&probe)?;
            probe.biases_mut()[l][i] = orig - step;
            let down = error_at(&probe)?;
            probe.biases_mut()[l][i] = orig;
            out.biases[l][i] = -(up - down) / (two * step);
        }
    }
    Ok(out)
}

/// Worst relative disagreement between two gradient sets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientComparison {
    pub max_rel_error: f64,
    pub at: ParamCoord,
    pub analytic: f64,
    pub numeric: f64,
}

/// `|a - n| / max(|a|, |n|, floor)` maximised over all parameters.
pub fn compare_gradients<T: Scalar>(analytic: &ParamSet<T>, numeric: &ParamSet<T>, floor: f64) -> GradientComparison {
    let mut worst = GradientComparison {
        max_rel_error: 0.0,
        at: ParamCoord {
            layer: 0,
            row: 0,
            col: 0,
            is_bias: false,
        },
        analytic: 0.0,
        numeric: 0.0,
    };
    let mut consider = |a: T, n: T, at: ParamCoord| {
        let (a, n) = (a.to_f64_lossy(), n.to_f64_lossy());
        let rel = (a - n).abs() / a.abs().max(n.abs()).max(floor);
        if rel > worst.max_rel_error || rel.is_nan() {
            worst = GradientComparison {
                max_rel_error: if rel.is_nan() { f64::INFINITY } else { rel },
                at,
                analytic: a,
                numeric: n,
            };
        }
    };
    for (layer, (wa, wn)) in analytic.weights.iter().zip(&numeric.weights).enumerate() {
        for row in 0..wa.rows() {
            for col in 0..wa.cols() {
                let at = ParamCoord {
                    layer,
                    row,
                    col,
                    is_bias: false,
                };
                consider(wa[(row, col)], wn[(row, col)], at);
            }
        }
        let (ba, bn) = (&analytic.biases[layer], &numeric.biases[layer]);
        for row in 0..ba.len() {
            let at = ParamCoord {
                layer,
                row,
                col: wa.cols(),
                is_bias: true,
            };
            consider(ba[row], bn[row], at);
        }
    }
    worst
}
