use std::path::Path;

use super::{bundled_font, load_sample_dir, write_sample_dir};
use crate::numcore::Prng;
use crate::preprocess::{PreprocessConfig, TrainingSample};
use crate::{Error, Result};

/// Training and held-out test samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub training: Vec<TrainingSample>,
    pub test: Vec<TrainingSample>,
    pub provenance: String,
}

impl Dataset {
    pub fn new(training: Vec<TrainingSample>, test: Vec<TrainingSample>, provenance: String) -> Result<Self> {
        if training.is_empty() || test.is_empty() {
            return Err(Error::Validation(
                "a dataset needs at least one training and one test sample".into(),
            ));
        }
        Ok(Self {
            training,
            test,
            provenance,
        })
    }

    /// Writes `train_<i>/` and `test_<i>/` sample directories (1-based).
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        for (i, s) in self.training.iter().enumerate() {
            write_sample_dir(s, &dir.join(format!("train_{}", i + 1)))?;
        }
        for (i, s) in self.test.iter().enumerate() {
            write_sample_dir(s, &dir.join(format!("test_{}", i + 1)))?;
        }
        std::fs::write(dir.join("PROVENANCE"), format!("{}\n", self.provenance)).map_err(|e| Error::io(dir, e))
    }

    /// Reads the layout written by [`Dataset::write_dir`]: `train_1/`,
    /// `train_2/`, .. and `test_1/`, .. up to the first missing index.
    pub fn load_dir(dir: &Path, cfg: &PreprocessConfig) -> Result<Self> {
        let load_all = |prefix: &str| -> Result<Vec<TrainingSample>> {
            (1..)
                .map(|i| dir.join(format!("{prefix}_{i}")))
                .take_while(|p| p.is_dir())
                .map(|p| load_sample_dir(&p, cfg))
                .collect()
        };
        let provenance = match std::fs::read_to_string(dir.join("PROVENANCE")) {
            Ok(text) => text.trim_end().to_owned(),
            Err(_) => format!("loaded from {}", dir.display()),
        };
        Self::new(load_all("train")?, load_all("test")?, provenance)
    }
}

/// Sample 1 is the clean font. The other training samples, then the test
/// samples, are independent noisy copies drawn from `prng` in that order.
pub fn bundled_dataset(prng: &mut Prng, n_train: usize, n_test: usize, flip_prob: f64) -> Result<Dataset> {
    if n_train == 0 || n_test == 0 {
        return Err(Error::Config("need at least one training and one test sample".into()));
    }
    let font = bundled_font();
    let mut training = vec![font.clone()];
    for _ in 1..n_train {
        training.push(font.perturbed(flip_prob, prng)?);
    }
    let test = (0..n_test)
        .map(|_| font.perturbed(flip_prob, prng))
        .collect::<Result<Vec<_>>>()?;
    let provenance = format!(
        "bundled font; seed {}; {n_train} training (first clean), {n_test} test; flip probability {flip_prob}",
        prng.seed()
    );
    Dataset::new(training, test, provenance)
}
