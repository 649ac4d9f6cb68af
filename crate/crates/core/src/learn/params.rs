use crate::netcore::Network;
use crate::numcore::{Matrix, Scalar, Vector};

/// One value per network parameter, laid out like the network itself.
/// Used for gradients, applied changes and momentum history.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<T> {
    pub weights: Vec<Matrix<T>>,
    pub biases: Vec<Vector<T>>,
}

impl<T: Scalar> ParamSet<T> {
    pub fn zeros_like(net: &Network<T>) -> Self {
        Self {
            weights: net
                .weights()
                .iter()
                .map(|w| Matrix::zeros(w.rows(), w.cols()))
                .collect(),
            biases: net.biases().iter().map(|b| Vector::zeros(b.len())).collect(),
        }
    }

    pub fn matches(&self, net: &Network<T>) -> bool {
        self.weights.len() == net.weights().len()
            && self.biases.len() == net.biases().len()
            && self
                .weights
                .iter()
                .zip(net.weights())
                .all(|(a, b)| a.shape() == b.shape())
            && self.biases.iter().zip(net.biases()).all(|(a, b)| a.len() == b.len())
    }

    /// `self += scale * other`
    pub fn axpy(&mut self, scale: T, other: &Self) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            a.axpy(scale, b);
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            a.axpy(scale, b);
        }
    }

    /// Euclidean norm of all entries stacked into one vector.
    pub fn l2_norm(&self) -> T {
        let w: T = self.weights.iter().map(Matrix::sum_squares).sum();
        let b: T = self.biases.iter().map(Vector::sum_squares).sum();
        (w + b).sqrt()
    }

    /// Entries in network parameter order.
    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| w.as_slice().iter().chain(b.as_slice()).copied())
    }

    pub fn is_zero(&self) -> bool {
        self.values().all(|v| v == T::zero())
    }
}
