//! Command-line driver for SlimSell BFS: parameter sweeps with per-iteration
//! CSV output, storage reports, layout dumps and a built-in self test.

pub mod args;
pub mod config;
pub mod error;
pub mod run;
pub mod selftest;
pub mod storage;

pub use args::{execute, Cli};
pub use config::{GraphSource, RootSpec, SigmaSpec};
pub use error::CliError;
pub use run::{cmd_run, RunConfig, RunReport};
pub use selftest::{cmd_selftest, SelftestConfig};
pub use storage::{cmd_dump, cmd_storage, DumpFormat};
