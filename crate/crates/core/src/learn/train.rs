use super::{apply_update, batch_gradient, BatchGradient, DeltaHistory, EpochRecord, HyperParams, TrainingReport};
use crate::netcore::Network;
use crate::numcore::{Scalar, Vector};
use crate::{Error, Result};

/// Batch training state: one update per epoch from the gradient summed over
/// every pattern.
#[derive(Clone, Debug)]
pub struct Trainer<T> {
    net: Network<T>,
    hist: DeltaHistory<T>,
    report: TrainingReport,
}

impl<T: Scalar> Trainer<T> {
    pub fn new(net: Network<T>, hp: HyperParams) -> Result<Self> {
        hp.validate()?;
        Ok(Self {
            hist: DeltaHistory::zeros_like(&net),
            report: TrainingReport::new(net.topology().clone(), hp),
            net,
        })
    }

    pub fn network(&self) -> &Network<T> {
        &self.net
    }

    pub fn history(&self) -> &DeltaHistory<T> {
        &self.hist
    }

    pub fn report(&self) -> &TrainingReport {
        &self.report
    }

    pub fn report_mut(&mut self) -> &mut TrainingReport {
        &mut self.report
    }

    pub fn done(&self) -> bool {
        self.report.converged || self.report.epochs_run >= self.report.hyperparams.max_epochs
    }

    /// Checks that the batch fits the network without touching any state.
    pub fn validate_batch(&self, inputs: &[Vector<T>], targets: &[Vector<T>]) -> Result<()> {
        let topo = self.net.topology();
        if inputs.is_empty() {
            return Err(Error::Validation("training batch is empty".into()));
        }
        if inputs.len() != targets.len() {
            return Err(Error::shape("train", inputs.len(), targets.len()));
        }
        for (i, (x, t)) in inputs.iter().zip(targets).enumerate() {
            if x.len() != topo.input_size() {
                return Err(Error::shape(
                    "train input",
                    topo.input_size(),
                    format!("pattern {i}: {}", x.len()),
                ));
            }
            if t.len() != topo.output_size() {
                return Err(Error::shape(
                    "train target",
                    topo.output_size(),
                    format!("pattern {i}: {}", t.len()),
                ));
            }
            if !x.is_finite() || !t.is_finite() {
                return Err(Error::Domain(format!("pattern {i} has non-finite entries")));
            }
        }
        Ok(())
    }

    /// Runs one epoch with the analytic batch gradient.
    pub fn epoch(&mut self, inputs: &[Vector<T>], targets: &[Vector<T>]) -> Result<EpochRecord> {
        let batch = batch_gradient(&self.net, inputs, targets)?;
        Ok(self.apply(batch, inputs.len()))
    }

    /// Applies an externally computed batch gradient and records the epoch.
    pub fn apply(&mut self, batch: BatchGradient<T>, patterns: usize) -> EpochRecord {
        let outputs = self.net.topology().output_size();
        let mse = batch.sum_sq.to_f64_lossy() / (patterns * outputs) as f64;
        let record = EpochRecord {
            epoch: self.report.epochs_run + 1,
            mse,
            e_sum: batch.e_sum.to_f64_lossy(),
            grad_norm: batch.grad.l2_norm().to_f64_lossy(),
        };
        let hp = self.report.hyperparams;
        apply_update(&mut self.net, &batch.grad, &mut self.hist, &hp);
        self.report.push(record);
        record
    }

    pub fn run(&mut self, inputs: &[Vector<T>], targets: &[Vector<T>]) -> Result<()> {
        self.validate_batch(inputs, targets)?;
        while !self.done() {
            self.epoch(inputs, targets)?;
        }
        Ok(())
    }

    pub fn into_parts(self) -> (Network<T>, TrainingReport) {
        (self.net, self.report)
    }
}

/// Trains `net` on one sample until the MSE goal or the epoch cap is hit.
pub fn train_sample<T: Scalar>(
    net: &mut Network<T>,
    inputs: &[Vector<T>],
    targets: &[Vector<T>],
    hp: &HyperParams,
) -> Result<TrainingReport> {
    let mut trainer = Trainer::new(net.clone(), *hp)?;
    trainer.run(inputs, targets)?;
    let (trained, report) = trainer.into_parts();
    *net = trained;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::UpdateRule;
    use crate::netcore::{InitScheme, Topology};
    use crate::numcore::{Matrix, Prng};

    fn xor_like() -> (Vec<Vector<f64>>, Vec<Vector<f64>>) {
        let xs = vec![
            Vector::from_vec(vec![0.0, 0.0]),
            Vector::from_vec(vec![0.0, 1.0]),
            Vector::from_vec(vec![1.0, 0.0]),
            Vector::from_vec(vec![1.0, 1.0]),
        ];
        let ts = vec![
            Vector::from_vec(vec![1.0, 0.0]),
            Vector::from_vec(vec![0.0, 1.0]),
            Vector::from_vec(vec![0.0, 1.0]),
            Vector::from_vec(vec![1.0, 0.0]),
        ];
        (xs, ts)
    }

    fn small_net(seed: u64) -> Network<f64> {
        Network::init(
            Topology::new(2, vec![4], 2).unwrap(),
            &mut Prng::new(seed),
            InitScheme::Symmetric,
        )
    }

    #[test]
    fn rejects_zero_max_epochs() {
        let hp = HyperParams {
            max_epochs: 0,
            ..HyperParams::default()
        };
        let (xs, ts) = xor_like();
        assert!(train_sample(&mut small_net(1), &xs, &ts, &hp).is_err());
    }

    #[test]
    fn shape_error_before_mutation() {
        let mut net = small_net(1);
        let before = net.clone();
        let (mut xs, ts) = xor_like();
        xs[2] = Vector::from_vec(vec![1.0]);
        assert!(train_sample(&mut net, &xs, &ts, &HyperParams::default()).is_err());
        assert_eq!(net, before);
    }

    #[test]
    fn already_converged_stops_after_one_epoch() {
        // targets equal to the outputs of the initial net
        let mut net = small_net(3);
        let (xs, _) = xor_like();
        let ts: Vec<_> = xs.iter().map(|x| net.predict(x).unwrap()).collect();
        let before = net.clone();
        let r = train_sample(&mut net, &xs, &ts, &HyperParams::default()).unwrap();
        assert_eq!(r.epochs_run, 1);
        assert!(r.converged);
        assert_eq!(r.final_error, 0.0);
        assert_eq!(net, before);
    }

    #[test]
    fn report_invariants_hold() {
        let (xs, ts) = xor_like();
        let hp = HyperParams {
            eta: 0.2,
            max_epochs: 300,
            ..HyperParams::default()
        };
        let r = train_sample(&mut small_net(5), &xs, &ts, &hp).unwrap();
        assert_eq!(r.mse_trace().len(), r.epochs_run);
        assert!(r.mse_trace().iter().all(|m| m.is_finite() && *m >= 0.0));
        assert_eq!(r.converged, *r.mse_trace().last().unwrap() <= hp.mse_goal);
        assert!(r.converged || r.epochs_run == hp.max_epochs);
        assert!(r.cumulative_gradient >= 0.0);
    }

    #[test]
    fn beta_zero_matches_classical_bitwise() {
        let (xs, ts) = xor_like();
        let base = HyperParams {
            beta: 0.0,
            max_epochs: 150,
            eta: 0.1,
            ..HyperParams::default()
        };
        let mut a = Trainer::new(small_net(9), base.with_rule(UpdateRule::Classical)).unwrap();
        let mut b = Trainer::new(small_net(9), base.with_rule(UpdateRule::Modified)).unwrap();
        for _ in 0..150 {
            a.epoch(&xs, &ts).unwrap();
            b.epoch(&xs, &ts).unwrap();
            let pa: Vec<u64> = a.network().parameters().map(f64::to_bits).collect();
            let pb: Vec<u64> = b.network().parameters().map(f64::to_bits).collect();
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn zero_residual_epoch_is_fixed_point() {
        let topo = Topology::new(2, vec![3], 2).unwrap();
        let net = Network::<f64>::from_parts(
            topo,
            vec![Matrix::zeros(3, 2), Matrix::zeros(2, 3)],
            vec![Vector::zeros(3), Vector::zeros(2)],
        )
        .unwrap();
        let (xs, _) = xor_like();
        let ts = vec![Vector::zeros(2); 4];
        let mut tr = Trainer::new(net.clone(), HyperParams::default()).unwrap();
        tr.epoch(&xs, &ts).unwrap();
        assert_eq!(tr.network(), &net);
    }
}
