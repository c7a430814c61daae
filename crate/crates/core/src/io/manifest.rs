use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything needed to regenerate a result directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    /// Command line as typed.
    pub argv: Vec<String>,
    /// Subcommand path, e.g. `neuron run`.
    pub command: String,
    pub config_path: Option<String>,
    /// Fully resolved job, defaults included.
    pub job: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub out_dir: String,
}

impl RunManifest {
    pub fn new(argv: Vec<String>, command: &str, config_path: Option<&Path>, job: serde_json::Value, seed: u64, out: &Path) -> Self {
        RunManifest {
            argv,
            command: command.to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            job,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            out_dir: out.display().to_string(),
        }
    }

    /// Creates `out_dir` and writes the manifest into it.
    pub fn write(&self, out: &Path) -> Result<PathBuf> {
        fs::create_dir_all(out).map_err(|e| Error::io(out.display().to_string(), e))?;
        let path = out.join(MANIFEST_FILE);
        super::save_config(&path, self)?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let path = if path.is_dir() { path.join(MANIFEST_FILE) } else { path.to_path_buf() };
        let name = path.display().to_string();
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&name, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json { path: name, source })
    }
}
