//! Command-line front end for `fermat-dc`: JSON instance documents, CSV point
//! lists, solver reports and trajectory export.

pub mod cities;
pub mod cli;
pub mod error;
pub mod instance;
pub mod points;
pub mod report;

pub use cli::{run, Cli};
pub use error::{CliError, CliResult};
