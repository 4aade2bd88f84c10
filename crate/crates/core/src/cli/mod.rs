//! The command layer behind the `polymetric` binary: each command takes a
//! parsed [`RunConfig`] and returns the files it would write plus an exit
//! code, without touching the filesystem itself.

mod commands;
mod config;
pub mod svg;

pub use commands::{
    cmd_compare_hilbert, cmd_dist, cmd_plot, cmd_verify, parse_points, Check, PlotKind,
};
pub use config::{CompareConfig, PlotConfig, RunConfig, SchemeConfig, Space, VerifyConfig};

use std::fmt;

use crate::error::Error;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DATA: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.to_string(),
        }
    }

    pub fn data(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::PointOutsidePolygon { .. }
            | Error::PointOutsideDomain { .. }
            | Error::OutsideDisc { .. }
            | Error::NonFinite
            | Error::CoincidentPoints
            | Error::DegenerateSupport { .. }
            | Error::PointNotOnSide { .. }
            | Error::TargetsCoincide
            | Error::RaysNotConverging => Self::data(e),
            _ => Self::config(e),
        }
    }
}

/// A file produced by a command, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: Vec<u8>,
}

impl Artifact {
    fn new(name: impl Into<String>, contents: impl Into<Vec<u8>>) -> Self {
        Self {
            name: name.into(),
            contents: contents.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: u8,
    /// One-line summary for stdout.
    pub summary: String,
    pub artifacts: Vec<Artifact>,
}

impl Outcome {
    pub fn artifact(&self, name: &str) -> Option<&[u8]> {
        self.artifacts
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.contents.as_slice())
    }

    /// Writes every artifact into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &std::path::Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for a in &self.artifacts {
            std::fs::write(dir.join(&a.name), &a.contents)?;
        }
        Ok(())
    }
}
