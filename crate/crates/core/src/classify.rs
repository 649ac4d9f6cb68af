//! Letter labels, one-hot targets, winner-take-all output mapping and
//! recognition accuracy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::netcore::Network;
use crate::numcore::{Matrix, Scalar, Vector};
use crate::{Error, Result};

/// Number of classes, A to Z.
pub const NUM_LETTERS: usize = 26;

/// An uppercase letter `A`..=`Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "char", into = "char")]
pub struct Letter(u8);

impl Letter {
    pub fn from_index(index: usize) -> Option<Self> {
        (index < NUM_LETTERS).then_some(Letter(index as u8))
    }

    pub fn from_char(c: char) -> Option<Self> {
        c.is_ascii_uppercase().then(|| Letter(c as u8 - b'A'))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn as_char(self) -> char {
        (b'A' + self.0) as char
    }

    pub fn all() -> impl Iterator<Item = Letter> {
        (0..NUM_LETTERS as u8).map(Letter)
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;
    fn try_from(c: char) -> Result<Self> {
        Letter::from_char(c).ok_or_else(|| Error::Validation(format!("`{c}` is not a letter A-Z")))
    }
}

impl From<Letter> for char {
    fn from(l: Letter) -> char {
        l.as_char()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// 26-vector with a single 1 at the letter's position.
pub fn one_hot<T: Scalar>(letter: Letter) -> Vector<T> {
    let mut v = Vector::zeros(NUM_LETTERS);
    v[letter.index()] = T::one();
    v
}

/// Position of the largest entry; ties go to the lowest index.
pub fn compet_index<T: Scalar>(v: &[T]) -> Result<usize> {
    if v.is_empty() {
        return Err(Error::Domain("compet of an empty vector".into()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("compet of a non-finite vector".into()));
    }
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = i;
        }
    }
    Ok(best)
}

/// Winner-take-all: one-hot at the maximum entry.
pub fn compet<T: Scalar>(v: &[T]) -> Result<Vector<T>> {
    let hot = compet_index(v)?;
    let mut out = Vector::zeros(v.len());
    out[hot] = T::one();
    Ok(out)
}

/// Runs every input through the network and returns the `outputs x inputs`
/// matrix whose column `c` is the one-hot decision for input `c`.
pub fn classify_sample<T: Scalar>(net: &Network<T>, inputs: &[Vector<T>]) -> Result<Matrix<T>> {
    if inputs.is_empty() {
        return Err(Error::Domain("no inputs to classify".into()));
    }
    let k = net.topology().output_size();
    let mut out = Matrix::zeros(k, inputs.len());
    for (c, x) in inputs.iter().enumerate() {
        let hot = compet_index(net.predict(x)?.as_slice())?;
        out[(hot, c)] = T::one();
    }
    Ok(out)
}

/// Predicted letter for every input.
pub fn predict_letters<T: Scalar>(net: &Network<T>, inputs: &[Vector<T>]) -> Result<Vec<Letter>> {
    inputs
        .iter()
        .map(|x| {
            let hot = compet_index(net.predict(x)?.as_slice())?;
            Letter::from_index(hot).ok_or_else(|| Error::Domain(format!("output index {hot} is not a letter")))
        })
        .collect()
}

/// Per-character recognition outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionResult {
    pub predicted: Vec<Letter>,
    pub truth: Vec<Letter>,
    pub correct: usize,
    pub total: usize,
}

impl RecognitionResult {
    pub fn is_correct(&self, i: usize) -> bool {
        self.predicted[i] == self.truth[i]
    }

    /// Exact `correct / total`.
    pub fn ratio(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }

    /// Percentage truncated (not rounded) to two decimals, e.g. `92.30%`
    /// for 24 of 26.
    pub fn percent_display(&self) -> String {
        let hundredths = self.correct * 10_000 / self.total;
        format!("{}.{:02}%", hundredths / 100, hundredths % 100)
    }
}

impl fmt::Display for RecognitionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.correct, self.percent_display())
    }
}

pub fn accuracy(predictions: &[Letter], truths: &[Letter]) -> Result<RecognitionResult> {
    if predictions.is_empty() {
        return Err(Error::Domain("accuracy of an empty prediction set".into()));
    }
    if predictions.len() != truths.len() {
        return Err(Error::shape("accuracy", predictions.len(), truths.len()));
    }
    let correct = predictions.iter().zip(truths).filter(|(p, t)| p == t).count();
    Ok(RecognitionResult {
        predicted: predictions.to_vec(),
        truth: truths.to_vec(),
        correct,
        total: predictions.len(),
    })
}
