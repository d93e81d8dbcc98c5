//! Library side of the `gravent` command-line tool: configuration parsing,
//! the commands themselves, and table output.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{cmd_evolve, cmd_figure, cmd_phases, cmd_sweep, cmd_teleport, Figure};
pub use config::{parse_config, FieldKind, Format, RunConfig};
pub use error::CliError;
pub use table::{emit, format_value, render, ResultTable};
