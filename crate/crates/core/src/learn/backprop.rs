use super::ParamSet;
use crate::netcore::{LayerActivations, Network};
use crate::numcore::{Matrix, Scalar, Vector};
use crate::{Error, Result};

/// `0.5 * sum_k (t_k - y_k)^2`
pub fn lms_error<T: Scalar>(t: &Vector<T>, y: &Vector<T>) -> Result<T> {
    if t.len() != y.len() {
        return Err(Error::shape("lms_error", t.len(), y.len()));
    }
    let half = T::from_f64_lossy(0.5);
    Ok(half * sum_sq_residual(t, y))
}

fn sum_sq_residual<T: Scalar>(t: &Vector<T>, y: &Vector<T>) -> T {
    t.iter()
        .zip(y.iter())
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
}

/// Mean of the squared residuals over `patterns * outputs` entries.
pub fn mse<T: Scalar>(squared_residuals: &[T], patterns: usize, outputs: usize) -> Result<T> {
    if patterns == 0 || outputs == 0 {
        return Err(Error::Domain("mse needs at least one pattern and one output".into()));
    }
    let total: T = squared_residuals.iter().copied().sum();
    Ok(total / T::from_usize(patterns * outputs).expect("count fits"))
}

/// Gradients for one pattern, pointing in the error-reducing direction
/// (`-dE/dparam`), plus the deltas of every non-input layer.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientSet<T> {
    pub params: ParamSet<T>,
    /// `deltas[l]` belongs to layer `l + 1`; the last one is the output delta.
    pub deltas: Vec<Vector<T>>,
}

pub fn backprop<T: Scalar>(net: &Network<T>, acts: &LayerActivations<T>, t: &Vector<T>) -> Result<GradientSet<T>> {
    let sizes = net.topology().sizes();
    let layers = acts.layers();
    if layers.len() != sizes.len() || layers.iter().zip(&sizes).any(|(a, &s)| a.len() != s) {
        return Err(Error::shape(
            "backprop",
            format!("activations for {}", net.topology()),
            format!("{:?}", layers.iter().map(Vector::len).collect::<Vec<_>>()),
        ));
    }
    if t.len() != net.topology().output_size() {
        return Err(Error::shape("backprop", net.topology().output_size(), t.len()));
    }

    let kinds = net.activations();
    let n = net.weights().len();
    let mut deltas: Vec<Vector<T>> = Vec::with_capacity(n);

    // output: (t - y) f'(y)
    let y = acts.output();
    let out_kind = kinds[n];
    deltas.push(Vector::from_vec(
        t.iter()
            .zip(y.iter())
            .map(|(&tk, &yk)| (tk - yk) * out_kind.deriv_from_output(yk))
            .collect(),
    ));
    // hidden: f'(z) * W^T delta_next, from the last hidden layer backwards
    for l in (1..n).rev() {
        let downstream = deltas.last().expect("output delta pushed");
        let back = net.weights()[l].transpose_matvec(downstream)?;
        let z = &layers[l];
        let kind = kinds[l];
        deltas.push(Vector::from_vec(
            back.iter()
                .zip(z.iter())
                .map(|(&s, &zi)| s * kind.deriv_from_output(zi))
                .collect(),
        ));
    }
    deltas.reverse();

    let weights = (0..n).map(|l| Matrix::outer(&deltas[l], &layers[l])).collect();
    let biases = deltas.clone();
    Ok(GradientSet {
        params: ParamSet { weights, biases },
        deltas,
    })
}

/// Gradient summed over a batch of patterns, with the error totals measured
/// at the current parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BatchGradient<T> {
    pub grad: ParamSet<T>,
    /// `sum over patterns and outputs of (t - y)^2`
    pub sum_sq: T,
    /// `sum over patterns of E`
    pub e_sum: T,
}

pub fn batch_gradient<T: Scalar>(
    net: &Network<T>,
    inputs: &[Vector<T>],
    targets: &[Vector<T>],
) -> Result<BatchGradient<T>> {
    if inputs.len() != targets.len() {
        return Err(Error::shape("batch_gradient", inputs.len(), targets.len()));
    }
    let mut grad = ParamSet::zeros_like(net);
    let mut sum_sq = T::zero();
    for (x, t) in inputs.iter().zip(targets) {
        let acts = net.forward(x)?;
        let g = backprop(net, &acts, t)?;
        for (l, d) in g.deltas.iter().enumerate() {
            grad.weights[l].add_outer(T::one(), d, &acts.layers()[l]);
            grad.biases[l].axpy(T::one(), d);
        }
        sum_sq = sum_sq + sum_sq_residual(t, acts.output());
    }
    Ok(BatchGradient {
        grad,
        sum_sq,
        e_sum: T::from_f64_lossy(0.5) * sum_sq,
    })
}
