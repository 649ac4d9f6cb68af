use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{accuracy, predict_letters, RecognitionResult};
use crate::dataio::Dataset;
use crate::learn::{train_sample, HyperParams, TrainingReport, UpdateRule};
use crate::netcore::{InitScheme, Network, Topology};
use crate::numcore::{mix64, Prng};
use crate::preprocess::TrainingSample;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Numbers of hidden layers to try.
    pub depths: Vec<usize>,
    pub hidden_size: usize,
    pub update_rules: Vec<UpdateRule>,
    /// `update_rule` is overridden per run.
    pub hyperparams: HyperParams,
    pub seeds: Vec<u64>,
    pub init: InitScheme,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            depths: vec![1, 2, 3],
            hidden_size: Topology::HIDDEN_SIZE,
            update_rules: UpdateRule::ALL.to_vec(),
            hyperparams: HyperParams::default(),
            seeds: vec![1],
            init: InitScheme::Paper,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depths.is_empty() || self.update_rules.is_empty() || self.seeds.is_empty() {
            return Err(Error::Config("depths, update rules and seeds must be non-empty".into()));
        }
        if self.depths.contains(&0) || self.hidden_size == 0 {
            return Err(Error::Config("depths and hidden size must be positive".into()));
        }
        self.hyperparams.validate()
    }

    pub fn topology(&self, depth: usize) -> Result<Topology> {
        Topology::new(
            Topology::INPUT_SIZE,
            vec![self.hidden_size; depth],
            Topology::OUTPUT_SIZE,
        )
    }
}

/// Initialisation seed for one run: `mix64(seed ^ mix64(sample << 32 | depth))`
/// with SplitMix64's finaliser as `mix64`. The update rule is deliberately
/// not mixed in, so both rules start from the same weights.
pub fn run_seed(seed: u64, sample: usize, depth: usize) -> u64 {
    mix64(seed ^ mix64(((sample as u64) << 32) | depth as u64))
}

/// One row of the results table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    /// 1-based training sample index.
    pub sample: usize,
    pub depth: usize,
    pub rule: UpdateRule,
    pub seed: u64,
    pub epochs: usize,
    pub converged: bool,
    pub final_mse: f64,
    pub cum_grad: f64,
    /// Accuracy ratio on each test sample, in test-sample order.
    pub test_accuracy: Vec<f64>,
}

impl ExperimentRow {
    pub fn mean_accuracy(&self) -> f64 {
        self.test_accuracy.iter().sum::<f64>() / self.test_accuracy.len() as f64
    }
}

/// A trained network with its report.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub network: Network<f64>,
    pub report: TrainingReport,
}

impl RunOutcome {
    pub fn evaluate(&self, sample: &TrainingSample) -> Result<RecognitionResult> {
        let predicted = predict_letters(&self.network, &sample.inputs())?;
        accuracy(&predicted, &sample.labels())
    }
}

/// Trains a fresh network on `sample` (1-based id `sample_id`).
pub fn train_run(
    cfg: &ExperimentConfig,
    sample: &TrainingSample,
    sample_id: usize,
    depth: usize,
    rule: UpdateRule,
    seed: u64,
) -> Result<RunOutcome> {
    let init_seed = run_seed(seed, sample_id, depth);
    let mut network = Network::init(cfg.topology(depth)?, &mut Prng::new(init_seed), cfg.init);
    let hp = cfg.hyperparams.with_rule(rule);
    let report =
        train_sample(&mut network, &sample.inputs(), &sample.targets(), &hp)?.with_provenance(init_seed, cfg.init);
    Ok(RunOutcome { network, report })
}

/// Runs every combination; rows come out ordered by sample, depth, rule
/// (config order) and seed (config order) regardless of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig, dataset: &Dataset) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for sample in 1..=dataset.training.len() {
        for &depth in &cfg.depths {
            for &rule in &cfg.update_rules {
                for &seed in &cfg.seeds {
                    jobs.push((sample, depth, rule, seed));
                }
            }
        }
    }
    jobs.into_par_iter()
        .map(|(sample, depth, rule, seed)| {
            run_one(cfg, dataset, sample, depth, rule, seed).map_err(|e| Error::Run {
                sample,
                depth,
                rule: rule.to_string(),
                seed,
                source: Box::new(e),
            })
        })
        .collect()
}

fn run_one(
    cfg: &ExperimentConfig,
    dataset: &Dataset,
    sample: usize,
    depth: usize,
    rule: UpdateRule,
    seed: u64,
) -> Result<ExperimentRow> {
    let outcome = train_run(cfg, &dataset.training[sample - 1], sample, depth, rule, seed)?;
    let test_accuracy = dataset
        .test
        .iter()
        .map(|t| outcome.evaluate(t).map(|r| r.ratio()))
        .collect::<Result<Vec<_>>>()?;
    let report = &outcome.report;
    Ok(ExperimentRow {
        sample,
        depth,
        rule,
        seed,
        epochs: report.epochs_run,
        converged: report.converged,
        final_mse: report.final_error,
        cum_grad: report.cumulative_gradient,
        test_accuracy,
    })
}

/// Header: `sample,depth,rule,seed,epochs,converged,final_mse,cum_grad,`
/// then `acc_test1` .. `acc_testN` (two accuracy columns for an empty table).
pub fn write_rows_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let n_test = rows.first().map_or(2, |r| r.test_accuracy.len());
    if rows.iter().any(|r| r.test_accuracy.len() != n_test) {
        return Err(Error::Validation("rows disagree on the number of test samples".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = [
        "sample",
        "depth",
        "rule",
        "seed",
        "epochs",
        "converged",
        "final_mse",
        "cum_grad",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend((1..=n_test).map(|i| format!("acc_test{i}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.sample.to_string(),
            r.depth.to_string(),
            r.rule.to_string(),
            r.seed.to_string(),
            r.epochs.to_string(),
            r.converged.to_string(),
            r.final_mse.to_string(),
            r.cum_grad.to_string(),
        ];
        rec.extend(r.test_accuracy.iter().map(|a| a.to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let fixed = [
        "sample",
        "depth",
        "rule",
        "seed",
        "epochs",
        "converged",
        "final_mse",
        "cum_grad",
    ];
    if header.len() < fixed.len() || header.iter().zip(fixed).any(|(a, b)| a != b) {
        return Err(Error::parse("line 1", format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |k: usize| -> Result<&str> {
            rec.get(k)
                .ok_or_else(|| Error::parse(format!("line {line}"), format!("missing column {}", k + 1)))
        };
        fn num<X: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<X> {
            s.parse()
                .map_err(|_| Error::parse(format!("line {line}, field {name}"), format!("bad value `{s}`")))
        }
        rows.push(ExperimentRow {
            sample: num(line, "sample", field(0)?)?,
            depth: num(line, "depth", field(1)?)?,
            rule: field(2)?.parse()?,
            seed: num(line, "seed", field(3)?)?,
            epochs: num(line, "epochs", field(4)?)?,
            converged: num(line, "converged", field(5)?)?,
            final_mse: num(line, "final_mse", field(6)?)?,
            cum_grad: num(line, "cum_grad", field(7)?)?,
            test_accuracy: (fixed.len()..header.len())
                .map(|k| num(line, &header[k], field(k)?))
                .collect::<Result<Vec<_>>>()?,
        });
    }
    Ok(rows)
}
