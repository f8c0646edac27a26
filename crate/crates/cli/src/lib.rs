//! Scenario files, command implementations and the randomized property sweep
//! behind the `sconc` binary.

pub mod commands;
pub mod scenario;
pub mod sweep;

pub use commands::{Exit, Output};
pub use scenario::{load_scenario, load_script, Loaded, Scenario};
pub use sweep::{sweep, SweepReport};
