//! Run manifests written next to the data files.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub file: String,
    pub sha256: String,
}

/// Everything needed to reproduce a run. No timestamps or host details, so equal
/// invocations give equal manifests.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub params: Value,
    pub outputs: Vec<OutputFile>,
    /// Command-specific results (overlaps, pass counts).
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: &str, params: Value) -> Self {
        RunManifest {
            command: command.to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            params,
            outputs: Vec::new(),
            summary: Value::Null,
        }
    }

    /// Writes `contents` to `dir/name` and records its checksum.
    pub fn write_output(&mut self, dir: &Path, name: &str, contents: &str) -> io::Result<()> {
        fs::write(dir.join(name), contents)?;
        self.outputs.push(OutputFile {
            file: name.to_owned(),
            sha256: sha256_hex(contents.as_bytes()),
        });
        Ok(())
    }

    pub fn save(&self, dir: &Path) -> io::Result<()> {
        let mut s = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        s.push('\n');
        fs::write(dir.join("manifest.json"), s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
