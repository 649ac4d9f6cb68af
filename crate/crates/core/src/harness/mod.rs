//! Experiment protocol: every (training sample, depth, update rule, seed)
//! combination trained from a fresh network and scored on held-out samples.

mod experiment;
mod gradcheck;
mod trends;

pub use experiment::{
    read_rows_csv, run_experiment, run_seed, train_run, write_rows_csv, ExperimentConfig, ExperimentRow, RunOutcome,
};
pub use gradcheck::{gradcheck, GradcheckReport};
pub use trends::{median, summarize_trends, Flag, TrendCell, TrendSummary};
