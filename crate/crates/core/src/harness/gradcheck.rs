use serde::{Deserialize, Serialize};

use crate::classify::{one_hot, Letter};
use crate::learn::{backprop, compare_gradients, numerical_gradient, ParamCoord};
use crate::netcore::{InitScheme, Network, Topology};
use crate::numcore::{Prng, Vector};
use crate::Result;

pub const GRADCHECK_STEP: f64 = 1e-5;
pub const GRADCHECK_FLOOR: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradcheckReport {
    pub topology: Topology,
    pub seed: u64,
    pub tolerance: f64,
    pub max_rel_error: f64,
    pub at: ParamCoord,
    pub analytic: f64,
    pub numeric: f64,
    pub passed: bool,
}

/// Compares back-propagated gradients with central differences on a random
/// network (symmetric init) and a random binary pattern with a one-hot (or,
/// for non-26 outputs, uniform) target.
///
/// `flip_layer` negates the analytic gradient of one layer before comparing.
pub fn gradcheck(topology: &Topology, seed: u64, tolerance: f64, flip_layer: Option<usize>) -> Result<GradcheckReport> {
    let mut prng = Prng::new(seed);
    let net = Network::<f64>::init(topology.clone(), &mut prng, InitScheme::Symmetric);
    let x = Vector::from_vec(
        (0..topology.input_size())
            .map(|_| if prng.next_bool(0.5) { 1.0 } else { 0.0 })
            .collect(),
    );
    let t = if topology.output_size() == 26 {
        let idx = (prng.next_u64() % 26) as usize;
        one_hot(Letter::from_index(idx).expect("index below 26"))
    } else {
        Vector::from_vec(
            (0..topology.output_size())
                .map(|_| prng.next_range(-1.0, 1.0))
                .collect(),
        )
    };

    let acts = net.forward(&x)?;
    let mut analytic = backprop(&net, &acts, &t)?.params;
    if let Some(l) = flip_layer {
        if let (Some(w), Some(b)) = (analytic.weights.get_mut(l), analytic.biases.get_mut(l)) {
            *w = w.map(|v| -v);
            *b = b.map(|v| -v);
        }
    }
    let numeric = numerical_gradient(&net, &x, &t, GRADCHECK_STEP)?;
    let cmp = compare_gradients(&analytic, &numeric, GRADCHECK_FLOOR);
    Ok(GradcheckReport {
        topology: topology.clone(),
        seed,
        tolerance,
        max_rel_error: cmp.max_rel_error,
        at: cmp.at,
        analytic: cmp.analytic,
        numeric: cmp.numeric,
        passed: cmp.max_rel_error <= tolerance,
    })
}
