use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Layer sizes of a fully connected network: input, one or more hidden
/// layers, output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Topology {
    input_size: usize,
    hidden: Vec<usize>,
    output_size: usize,
}

impl Topology {
    pub const INPUT_SIZE: usize = 48;
    pub const HIDDEN_SIZE: usize = 10;
    pub const OUTPUT_SIZE: usize = 26;

    pub fn new(input_size: usize, hidden: Vec<usize>, output_size: usize) -> Result<Self> {
        if hidden.is_empty() {
            return Err(Error::Config("at least one hidden layer is required".into()));
        }
        if input_size == 0 || output_size == 0 || hidden.contains(&0) {
            return Err(Error::Config(format!(
                "layer sizes must be positive: {input_size}/{hidden:?}/{output_size}"
            )));
        }
        Ok(Self {
            input_size,
            hidden,
            output_size,
        })
    }

    /// 48 inputs, `depth` hidden layers of 10 units, 26 outputs.
    pub fn character_net(depth: usize) -> Result<Self> {
        Self::new(Self::INPUT_SIZE, vec![Self::HIDDEN_SIZE; depth], Self::OUTPUT_SIZE)
    }

    pub fn input_size(&self) -> usize {
        self.input_size
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn hidden_sizes(&self) -> &[usize] {
        &self.hidden
    }

    pub fn depth(&self) -> usize {
        self.hidden.len()
    }

    /// All layer sizes, input first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.hidden.len() + 2);
        s.push(self.input_size);
        s.extend_from_slice(&self.hidden);
        s.push(self.output_size);
        s
    }

    pub fn num_layers(&self) -> usize {
        self.hidden.len() + 2
    }

    pub fn num_parameters(&self) -> usize {
        self.sizes().windows(2).map(|w| w[1] * (w[0] + 1)).sum()
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes().iter().map(ToString::to_string).collect();
        f.write_str(&sizes.join("-"))
    }
}
