//! Network topology, parameters and the forward pass.

mod network;
mod snapshot;
mod topology;

pub use network::{output_of, InitScheme, LayerActivations, Network};
pub use snapshot::{read_snapshot, restore, snapshot, write_snapshot, SNAPSHOT_HEADER};
pub use topology::Topology;
