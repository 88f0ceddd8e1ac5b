//! Provenance block embedded in every JSON output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::formats::{FormatError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    /// Input path to hex SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub version: String,
    /// RFC 3339, UTC. The only field that differs between identical runs.
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String], seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            argv: argv.to_vec(),
            seed,
            inputs: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn add_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path).map_err(|source| FormatError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
