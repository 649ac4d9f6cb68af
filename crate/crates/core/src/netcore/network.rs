use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Topology;
use crate::numcore::{ActivationKind, Matrix, Prng, Scalar, Vector};
use crate::{Error, Result};

/// How initial weights and biases are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitScheme {
    /// Uniform on `[0, 1)`.
    #[default]
    Paper,
    /// Uniform on `[-0.5, 0.5)`.
    Symmetric,
}

impl InitScheme {
    pub fn name(self) -> &'static str {
        match self {
            InitScheme::Paper => "paper",
            InitScheme::Symmetric => "symmetric",
        }
    }

    fn draw<T: Scalar>(self, prng: &mut Prng) -> T {
        let u = prng.next_unit::<T>();
        match self {
            InitScheme::Paper => u,
            InitScheme::Symmetric => u - T::from_f64_lossy(0.5),
        }
    }
}

impl fmt::Display for InitScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(InitScheme::Paper),
            "symmetric" => Ok(InitScheme::Symmetric),
            other => Err(Error::Config(format!("unknown init scheme `{other}`"))),
        }
    }
}

/// Weights and biases of a fully connected network.
///
/// `weights[l]` maps the outputs of layer `l` to the pre-activations of layer
/// `l + 1`, so it has `size(l + 1)` rows and `size(l)` columns. The input
/// layer is linear; every later layer is tansig.
#[derive(Clone, Debug, PartialEq)]
pub struct Network<T> {
    topology: Topology,
    weights: Vec<Matrix<T>>,
    biases: Vec<Vector<T>>,
    activations: Vec<ActivationKind>,
}

/// Outputs of every layer for one input, input layer first.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerActivations<T>(pub Vec<Vector<T>>);

impl<T: Scalar> LayerActivations<T> {
    pub fn layers(&self) -> &[Vector<T>] {
        &self.0
    }

    pub fn output(&self) -> &Vector<T> {
        self.0.last().expect("activations are never empty")
    }
}

/// The last layer's vector.
pub fn output_of<T: Scalar>(acts: &LayerActivations<T>) -> Vector<T> {
    acts.output().clone()
}

fn default_activations(topology: &Topology) -> Vec<ActivationKind> {
    let mut a = vec![ActivationKind::TanSig; topology.num_layers()];
    a[0] = ActivationKind::Linear;
    a
}

impl<T: Scalar> Network<T> {
    /// Every parameter zero.
    pub fn zeros(topology: Topology) -> Self {
        let sizes = topology.sizes();
        let weights = sizes.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        let biases = sizes[1..].iter().map(|&n| Vector::zeros(n)).collect();
        Self {
            activations: default_activations(&topology),
            topology,
            weights,
            biases,
        }
    }

    /// Draws every parameter from `prng`: layer by layer, each layer's weights
    /// in row-major order followed by its biases.
    pub fn init(topology: Topology, prng: &mut Prng, scheme: InitScheme) -> Self {
        let mut net = Self::zeros(topology);
        for (w, b) in net.weights.iter_mut().zip(net.biases.iter_mut()) {
            for v in w.as_mut_slice() {
                *v = scheme.draw(prng);
            }
            for v in b.as_mut_slice() {
                *v = scheme.draw(prng);
            }
        }
        net
    }

    pub fn from_parts(topology: Topology, weights: Vec<Matrix<T>>, biases: Vec<Vector<T>>) -> Result<Self> {
        let sizes = topology.sizes();
        if weights.len() != sizes.len() - 1 || biases.len() != sizes.len() - 1 {
            return Err(Error::shape(
                "Network::from_parts",
                format!("{} layers of parameters", sizes.len() - 1),
                format!("{} weights / {} biases", weights.len(), biases.len()),
            ));
        }
        for (l, (w, b)) in weights.iter().zip(&biases).enumerate() {
            if w.rows() != sizes[l + 1] || w.cols() != sizes[l] {
                return Err(Error::shape(
                    "Network::from_parts",
                    format!("layer {l} weights {}x{}", sizes[l + 1], sizes[l]),
                    w.shape(),
                ));
            }
            if b.len() != sizes[l + 1] {
                return Err(Error::shape(
                    "Network::from_parts",
                    format!("layer {l} bias {}", sizes[l + 1]),
                    b.len(),
                ));
            }
        }
        Ok(Self {
            activations: default_activations(&topology),
            topology,
            weights,
            biases,
        })
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn weights(&self) -> &[Matrix<T>] {
        &self.weights
    }

    pub fn biases(&self) -> &[Vector<T>] {
        &self.biases
    }

    pub fn weights_mut(&mut self) -> &mut [Matrix<T>] {
        &mut self.weights
    }

    pub fn biases_mut(&mut self) -> &mut [Vector<T>] {
        &mut self.biases
    }

    pub fn activations(&self) -> &[ActivationKind] {
        &self.activations
    }

    /// Every parameter, layer by layer, weights (row-major) before biases.
    pub fn parameters(&self) -> impl Iterator<Item = T> + '_ {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| w.as_slice().iter().chain(b.as_slice()).copied())
    }

    pub fn forward(&self, x: &Vector<T>) -> Result<LayerActivations<T>> {
        if x.len() != self.topology.input_size() {
            return Err(Error::shape("forward", self.topology.input_size(), x.len()));
        }
        if !x.is_finite() {
            return Err(Error::Domain("non-finite network input".into()));
        }
        let mut layers = Vec::with_capacity(self.topology.num_layers());
        layers.push(x.map(|v| self.activations[0].apply(v)));
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let act = self.activations[l + 1];
            let mut z = w.matvec(layers.last().expect("input pushed"))?;
            for (zi, &bi) in z.as_mut_slice().iter_mut().zip(b.iter()) {
                *zi = act.apply(*zi + bi);
            }
            layers.push(z);
        }
        Ok(LayerActivations(layers))
    }

    /// Output layer only.
    pub fn predict(&self, x: &Vector<T>) -> Result<Vector<T>> {
        Ok(output_of(&self.forward(x)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::uniform_01;

    fn tiny(w1: f64, w2: f64) -> Network<f64> {
        let topo = Topology::new(1, vec![1], 1).unwrap();
        Network::from_parts(
            topo,
            vec![
                Matrix::from_vec(1, 1, vec![w1]).unwrap(),
                Matrix::from_vec(1, 1, vec![w2]).unwrap(),
            ],
            vec![Vector::zeros(1), Vector::zeros(1)],
        )
        .unwrap()
    }

    #[test]
    fn one_one_one_composition() {
        let acts = tiny(1.0, 1.0).forward(&Vector::from_vec(vec![1.0])).unwrap();
        assert!((acts.layers()[1][0] - 0.7615941559557649).abs() < 1e-15);
        assert!((acts.output()[0] - 0.6420149920119998).abs() < 1e-15);
    }

    #[test]
    fn zero_network_outputs_zero() {
        let net = Network::<f64>::zeros(Topology::character_net(3).unwrap());
        let x = Vector::from_vec(vec![1.0; 48]);
        let acts = net.forward(&x).unwrap();
        assert_eq!(acts.layers()[0], x);
        for layer in &acts.layers()[1..] {
            assert!(layer.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn init_shapes_and_range() {
        let net = Network::<f64>::init(
            Topology::character_net(1).unwrap(),
            &mut Prng::new(1),
            InitScheme::Paper,
        );
        assert_eq!(net.weights()[0].shape().to_string(), "10x48");
        assert_eq!(net.weights()[1].shape().to_string(), "26x10");
        assert_eq!(net.biases()[0].len(), 10);
        assert_eq!(net.biases()[1].len(), 26);
        assert!(net.parameters().all(|v| (0.0..1.0).contains(&v)));

        let sym = Network::<f64>::init(
            Topology::character_net(1).unwrap(),
            &mut Prng::new(1),
            InitScheme::Symmetric,
        );
        assert!(sym.parameters().all(|v| (-0.5..0.5).contains(&v)));
    }

    #[test]
    fn init_draw_order_is_layer_weights_then_biases() {
        let topo = Topology::new(2, vec![3], 2).unwrap();
        let net = Network::<f64>::init(topo.clone(), &mut Prng::new(4), InitScheme::Paper);
        let stream = uniform_01::<f64>(&mut Prng::new(4), topo.num_parameters());
        let params: Vec<f64> = net.parameters().collect();
        assert_eq!(params, stream.into_vec());
    }

    #[test]
    fn init_is_deterministic() {
        let topo = Topology::character_net(2).unwrap();
        let a = Network::<f64>::init(topo.clone(), &mut Prng::new(8), InitScheme::Paper);
        let b = Network::<f64>::init(topo, &mut Prng::new(8), InitScheme::Paper);
        assert_eq!(a, b);
    }

    #[test]
    fn output_length_and_shape_error() {
        let net = Network::<f64>::init(
            Topology::character_net(1).unwrap(),
            &mut Prng::new(2),
            InitScheme::Paper,
        );
        let acts = net.forward(&Vector::zeros(48)).unwrap();
        assert_eq!(output_of(&acts).len(), 26);
        let rewrapped = LayerActivations(vec![output_of(&acts)]);
        assert_eq!(output_of(&rewrapped), output_of(&acts));
        assert!(net.forward(&Vector::zeros(47)).is_err());
    }

    #[test]
    fn forward_is_pure_and_bounded() {
        let net = Network::<f64>::init(
            Topology::character_net(3).unwrap(),
            &mut Prng::new(6),
            InitScheme::Paper,
        );
        let x = uniform_01::<f64>(&mut Prng::new(60), 48);
        let a = net.forward(&x).unwrap();
        assert_eq!(a, net.forward(&x).unwrap());
        for layer in &a.layers()[1..] {
            assert!(layer.iter().all(|v| v.abs() <= 1.0));
        }
    }

    #[test]
    fn hidden_permutation_leaves_output_unchanged() {
        let topo = Topology::character_net(2).unwrap();
        let net = Network::<f64>::init(topo.clone(), &mut Prng::new(12), InitScheme::Symmetric);
        let perm = [3usize, 7, 0, 9, 1, 5, 2, 8, 6, 4];
        let mut weights = net.weights().to_vec();
        let mut biases = net.biases().to_vec();
        // permute units of the first hidden layer
        let l = 0;
        let src_w = &net.weights()[l];
        for (new_r, &old_r) in perm.iter().enumerate() {
            weights[l].row_mut(new_r).copy_from_slice(src_w.row(old_r));
            biases[l][new_r] = net.biases()[l][old_r];
        }
        let next = &net.weights()[l + 1];
        for r in 0..next.rows() {
            for (new_c, &old_c) in perm.iter().enumerate() {
                weights[l + 1][(r, new_c)] = next[(r, old_c)];
            }
        }
        let permuted = Network::from_parts(topo, weights, biases).unwrap();
        let x = uniform_01::<f64>(&mut Prng::new(13), 48);
        let y0 = net.predict(&x).unwrap();
        let y1 = permuted.predict(&x).unwrap();
        for (a, b) in y0.iter().zip(y1.iter()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn generic_over_f32() {
        let net = Network::<f32>::init(
            Topology::character_net(1).unwrap(),
            &mut Prng::new(1),
            InitScheme::Symmetric,
        );
        assert_eq!(net.predict(&Vector::zeros(48)).unwrap().len(), 26);
    }
}
