//! Provenance manifest embedded in every JSON result.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Version of the weighting/certificate file formats.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    /// input label → sha256 of the file contents
    pub input_hashes: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub guard: Option<u128>,
    pub version: String,
    pub format: u32,
    pub wall_ms: u128,
}

impl RunManifest {
    pub fn new(command: &str, arguments: Vec<String>) -> Self {
        RunManifest {
            command: command.to_string(),
            arguments,
            input_hashes: BTreeMap::new(),
            seed: None,
            guard: None,
            version: TOOLKIT_VERSION.to_string(),
            format: FORMAT_VERSION,
            wall_ms: 0,
        }
    }

    pub fn add_input(&mut self, label: &str, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        self.input_hashes.insert(label.to_string(), sha256_hex(&bytes));
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
