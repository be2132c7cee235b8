//! Configuration, tabular/plot output and command dispatch for the
//! `photonic-tmm` binary.

pub mod config;
pub mod run;
pub mod svg;
pub mod table;

pub use config::{parse_config, ConfigError, RunConfig};
pub use run::{run, Command, RunError, RunOutcome};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const PROPERTY_FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
}

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "PHOTONIC_TMM_THREADS";
