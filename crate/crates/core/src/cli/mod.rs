//! Configuration and report commands behind the `felix-sim` binary.
//!
//! Each `cmd_*` function writes a complete report to the given writer and
//! returns a [`Status`]; errors mean the input was invalid and no report
//! was produced.

mod commands;
mod config;

pub use commands::{
    cmd_adder, cmd_dataset, cmd_gates_verify, cmd_image, cmd_rca, DatasetOpts, GatesOpts,
    ImageOpts, RcaOpts, Status, EXIT_INVALID,
};
pub use config::{check_v0, parse_kv, Format, RunConfig, ENV_PREFIX};
