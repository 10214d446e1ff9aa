//! Run manifests: what was run, with which parameters and seed, and which
//! files it wrote.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::Format;
use crate::Command;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Master seed for commands that draw randomness.
    pub seed: Option<u64>,
    pub format: Format,
    /// Full parameter set, with any generated seed filled in.
    pub params: Command,
    pub out_dir: PathBuf,
    /// Files written, relative to `out_dir`. Includes the report itself.
    pub artifacts: Vec<PathBuf>,
}

impl RunManifest {
    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        fs::write(path, json + "\n")
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }
}
