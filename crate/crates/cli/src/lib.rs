//! Manifest format and command runner for the `curvedg` workbench.

pub mod cli;
pub mod command;
pub mod error;
pub mod manifest;

pub use cli::{execute, Cli, Execution};
pub use command::{CommandName, Invocation, Session};
pub use error::{exit, CliError, ManifestError};
pub use manifest::{parse_manifest, serialize, Manifest, ParseOptions};
