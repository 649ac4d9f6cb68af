use serde::{Deserialize, Serialize};

use super::HyperParams;
use crate::netcore::{InitScheme, Topology};

/// Metrics of one training epoch, measured before that epoch's update.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    /// 1-based.
    pub epoch: usize,
    /// Squared residual averaged over patterns and output units.
    pub mse: f64,
    /// Sum over patterns of `0.5 * sum_k (t_k - y_k)^2`.
    pub e_sum: f64,
    /// Euclidean norm of the batch gradient over every parameter.
    pub grad_norm: f64,
}

/// Outcome of one training run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainingReport {
    pub topology: Topology,
    pub hyperparams: HyperParams,
    pub init: Option<InitScheme>,
    pub seed: Option<u64>,
    pub epochs_run: usize,
    pub converged: bool,
    /// MSE of the last epoch.
    pub final_error: f64,
    /// Sum of `grad_norm` over all epochs.
    pub cumulative_gradient: f64,
    pub epochs: Vec<EpochRecord>,
}

impl TrainingReport {
    pub fn new(topology: Topology, hyperparams: HyperParams) -> Self {
        Self {
            topology,
            hyperparams,
            init: None,
            seed: None,
            epochs_run: 0,
            converged: false,
            final_error: 0.0,
            cumulative_gradient: 0.0,
            epochs: Vec::new(),
        }
    }

    pub fn with_provenance(mut self, seed: u64, init: InitScheme) -> Self {
        self.seed = Some(seed);
        self.init = Some(init);
        self
    }

    pub fn push(&mut self, record: EpochRecord) {
        self.epochs_run += 1;
        self.final_error = record.mse;
        self.cumulative_gradient += record.grad_norm;
        self.converged = record.mse <= self.hyperparams.mse_goal;
        self.epochs.push(record);
    }

    pub fn mse_trace(&self) -> Vec<f64> {
        self.epochs.iter().map(|r| r.mse).collect()
    }
}

/// Cumulative gradient norm of a run. Only meaningful relative to other runs.
pub fn gradient_metric(report: &TrainingReport) -> f64 {
    report.cumulative_gradient
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> TrainingReport {
        TrainingReport::new(Topology::character_net(1).unwrap(), HyperParams::default())
    }

    #[test]
    fn empty_report_has_zero_metric() {
        assert_eq!(gradient_metric(&report()), 0.0);
    }

    #[test]
    fn metric_is_monotone_in_epochs() {
        let mut r = report();
        let mut last = 0.0;
        for (i, g) in [0.5, 0.0, 1.25, 3.0].into_iter().enumerate() {
            r.push(EpochRecord {
                epoch: i + 1,
                mse: 0.1,
                e_sum: 1.0,
                grad_norm: g,
            });
            assert!(gradient_metric(&r) >= last);
            last = gradient_metric(&r);
        }
        assert_eq!(r.epochs_run, r.mse_trace().len());
    }
}
