//! Companion crate for `hidden-tree-core`: file formats, key=value configs,
//! run manifests, parallel generation and parameter sweeps. The
//! `hidden-tree` binary is a thin layer over [`commands`].

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod parallel;
pub mod sweep;

pub use error::{CliError, CliResult};

/// Tool name and version recorded in manifests.
pub fn tool_version() -> String {
    format!("hidden-tree {}", env!("CARGO_PKG_VERSION"))
}
