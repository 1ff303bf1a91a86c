//! Command-line layer over `penney-core`: argument parsing helpers, output
//! records in human, JSON and CSV form, `p` sweeps with minimization, and
//! parallel simulation.

pub mod commands;
pub mod decimal;
pub mod error;
pub mod record;
pub mod simulate;
pub mod sweep;

pub use error::{CliError, Result};
pub use record::{Format, Render};
